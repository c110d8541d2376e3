//! The correspondence between positive integers and sets of prime powers,
//! and the converters between union-closed families and LCM-closed sets.
//!
//! `f(n)` is the set of all prime powers dividing `n`, so for every prime it
//! holds a chain `p, p^2, ..., p^q`. `g` takes such a chain set back to the
//! product of its maximal prime powers. Under `f`, lcm becomes union, gcd
//! becomes intersection and divisibility becomes inclusion.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::arith::{nth_prime, ExponentVector, PrimeIndex, PrimePower};
use crate::error::{Error, Result};
use crate::family::{SetFamily, Universe, MAX_UNIVERSE};
use crate::numset::NumberSet;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PrimePowerSet {
    powers: BTreeSet<PrimePower>,
}

impl PrimePowerSet {
    /// Wraps the powers as given; the chain property is checked by
    /// [`PrimePowerSet::check_chain`] and [`g_map`].
    pub fn new<I: IntoIterator<Item = PrimePower>>(powers: I) -> Self {
        PrimePowerSet { powers: powers.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.powers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.powers.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &PrimePower> {
        self.powers.iter()
    }

    pub fn contains(&self, pp: &PrimePower) -> bool {
        self.powers.contains(pp)
    }

    pub fn is_subset(&self, other: &PrimePowerSet) -> bool {
        self.powers.is_subset(&other.powers)
    }

    pub fn union(&self, other: &PrimePowerSet) -> PrimePowerSet {
        PrimePowerSet { powers: self.powers.union(&other.powers).copied().collect() }
    }

    pub fn intersection(&self, other: &PrimePowerSet) -> PrimePowerSet {
        PrimePowerSet { powers: self.powers.intersection(&other.powers).copied().collect() }
    }

    /// Every prime present must appear with all exponents from 1 up to its
    /// highest one.
    pub fn check_chain(&self) -> Result<()> {
        let mut by_prime: BTreeMap<PrimeIndex, Vec<u32>> = BTreeMap::new();
        for pp in &self.powers {
            by_prime.entry(pp.index).or_default().push(pp.exponent);
        }
        for (index, exponents) in by_prime {
            // BTreeSet order keeps exponents ascending within a prime.
            let present = *exponents.last().expect("nonempty");
            if let Some(missing) = (1..present).find(|k| exponents.binary_search(k).is_err()) {
                return Err(Error::ChainViolation { prime: index.prime(), missing, present });
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for PrimePowerSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.powers.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl Serialize for PrimePowerSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.powers.iter())
    }
}

/// All prime powers dividing `n`.
pub fn f_map(n: &ExponentVector) -> PrimePowerSet {
    PrimePowerSet {
        powers: n.iter().flat_map(|(index, q)| (1..=q).map(move |exponent| PrimePower { index, exponent })).collect(),
    }
}

/// Product of the maximal prime power of each prime in `s`.
pub fn g_map(s: &PrimePowerSet) -> Result<ExponentVector> {
    s.check_chain()?;
    let mut top: BTreeMap<usize, u64> = BTreeMap::new();
    for pp in &s.powers {
        let e = top.entry(pp.index.get()).or_default();
        *e = (*e).max(u64::from(pp.exponent));
    }
    ExponentVector::from_pairs(top)
}

/// Relabels universe position `i` (0-based) as the prime `p_{i+1}` and
/// maps each member to the product of its primes.
pub fn family_to_numset(family: &SetFamily) -> Result<NumberSet> {
    family.require_union_closed()?;
    for i in 1..=family.universe().len() {
        nth_prime(i)?;
    }
    family
        .members()
        .map(|m| ExponentVector::from_pairs(m.indices().map(|i| (i + 1, 1))))
        .collect::<Result<Vec<_>>>()
        .map(NumberSet::new)
}

/// Universe of `f(lcm(N))`: every prime power dividing the lcm, ordered by
/// (prime, exponent) and labelled canonically (`2`, `2^2`, `3`).
pub fn prime_power_universe(n: &NumberSet) -> Result<(Vec<PrimePower>, Universe)> {
    let top = n.lcm_all()?;
    let powers: Vec<PrimePower> = f_map(&top).iter().copied().collect();
    if powers.len() > MAX_UNIVERSE {
        return Err(Error::UniverseTooLarge(powers.len()));
    }
    let universe = Universe::new(powers.iter().map(ToString::to_string))?;
    Ok((powers, universe))
}

/// `f(N)` as a family over the prime powers of `lcm(N)`.
pub fn numset_to_family(n: &NumberSet) -> Result<SetFamily> {
    n.require_lcm_closed()?;
    let (powers, universe) = prime_power_universe(n)?;
    let position: BTreeMap<PrimePower, usize> = powers.iter().enumerate().map(|(i, &pp)| (pp, i)).collect();
    let members = n.iter().map(|x| f_map(x).iter().fold(0u64, |acc, pp| acc | 1 << position[pp]));
    SetFamily::new(universe, members)
}

/// One line of a transport table: a family element next to the prime power
/// it corresponds to, with both counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransportRow {
    pub element: String,
    pub prime_power: String,
    pub element_count: usize,
    pub divisor_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransportReport {
    pub total: usize,
    pub rows: Vec<TransportRow>,
    /// Every row has equal counts.
    pub consistent: bool,
}

impl TransportReport {
    fn new(total: usize, rows: Vec<TransportRow>) -> Self {
        let consistent = rows.iter().all(|r| r.element_count == r.divisor_count);
        TransportReport { total, rows, consistent }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyConversion {
    pub family: SetFamily,
    pub numset: NumberSet,
    pub transport: TransportReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct NumsetConversion {
    pub numset: NumberSet,
    pub family: SetFamily,
    pub transport: TransportReport,
}

/// [`family_to_numset`] plus a table aligning element counts with
/// divisibility counts of the matching primes.
pub fn convert_family(family: &SetFamily) -> Result<FamilyConversion> {
    let numset = family_to_numset(family)?;
    let counts = family.element_counts();
    let rows = (0..family.universe().len())
        .map(|i| {
            let prime = PrimePower { index: PrimeIndex::new(i + 1)?, exponent: 1 };
            Ok(TransportRow {
                element: family.universe().label(i).to_string(),
                prime_power: prime.to_string(),
                element_count: counts[i],
                divisor_count: numset.count_divisible(&prime.to_vector()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FamilyConversion { family: family.clone(), transport: TransportReport::new(family.len(), rows), numset })
}

pub fn convert_numset(n: &NumberSet) -> Result<NumsetConversion> {
    let family = numset_to_family(n)?;
    let (powers, _) = prime_power_universe(n)?;
    let counts = family.element_counts();
    let rows = powers
        .iter()
        .enumerate()
        .map(|(i, pp)| TransportRow {
            element: family.universe().label(i).to_string(),
            prime_power: pp.to_string(),
            element_count: counts[i],
            divisor_count: n.count_divisible(&pp.to_vector()),
        })
        .collect();
    Ok(NumsetConversion { numset: n.clone(), transport: TransportReport::new(n.len(), rows), family })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factorize;
    use crate::family::tests::frankl8;

    fn pps(items: &[&str]) -> PrimePowerSet {
        PrimePowerSet::new(items.iter().map(|s| s.parse::<PrimePower>().unwrap()))
    }

    #[test]
    fn f_examples() {
        assert_eq!(f_map(&factorize(18).unwrap()), pps(&["2", "3", "3^2"]));
        assert_eq!(f_map(&factorize(16).unwrap()), pps(&["2", "2^2", "2^3", "2^4"]));
        assert!(f_map(&factorize(1).unwrap()).is_empty());
        assert_eq!(f_map(&factorize(18).unwrap()).to_string(), "{2, 3, 3^2}");
    }

    #[test]
    fn g_examples() {
        assert_eq!(g_map(&pps(&["2", "3", "3^2"])).unwrap().to_u64(), Some(18));
        assert_eq!(g_map(&PrimePowerSet::default()).unwrap().to_u64(), Some(1));
        assert_eq!(g_map(&pps(&["2", "9"])), Err(Error::ChainViolation { prime: 3, missing: 1, present: 2 }));
        assert_eq!(g_map(&pps(&["2", "2^4"])), Err(Error::ChainViolation { prime: 2, missing: 2, present: 4 }));
    }

    #[test]
    fn family_to_numset_examples() {
        assert_eq!(family_to_numset(&frankl8()).unwrap().to_u64s(), vec![1, 2, 6, 7, 14, 30, 42, 210]);
        let empty_member = SetFamily::new(Universe::numbered(0).unwrap(), [0]).unwrap();
        assert_eq!(family_to_numset(&empty_member).unwrap().to_u64s(), vec![1]);
        let s = SetFamily::new(Universe::numbered(2).unwrap(), [0b01, 0b10, 0b11]).unwrap();
        assert_eq!(family_to_numset(&s).unwrap().to_u64s(), vec![2, 3, 6]);
        let open = SetFamily::new(Universe::numbered(2).unwrap(), [0b01, 0b10]).unwrap();
        assert!(matches!(family_to_numset(&open), Err(Error::NotUnionClosed { .. })));
    }

    #[test]
    fn numset_to_family_examples() {
        let n = NumberSet::from_u64s([1, 2, 3, 4, 6, 8, 12, 24]).unwrap();
        let s = numset_to_family(&n).unwrap();
        assert_eq!(s.universe().labels(), ["2", "2^2", "2^3", "3"]);
        let expected: BTreeSet<Vec<&str>> = [
            vec![],
            vec!["2"],
            vec!["3"],
            vec!["2", "2^2"],
            vec!["2", "3"],
            vec!["2", "2^2", "2^3"],
            vec!["2", "2^2", "3"],
            vec!["2", "2^2", "2^3", "3"],
        ]
        .into_iter()
        .collect();
        assert_eq!(s.members().map(|m| s.member_labels(m)).collect::<BTreeSet<_>>(), expected);

        let one = numset_to_family(&NumberSet::from_u64s([1]).unwrap()).unwrap();
        assert!(one.universe().is_empty());
        assert_eq!(one.len(), 1);

        let s = numset_to_family(&NumberSet::from_u64s([2, 3, 6]).unwrap()).unwrap();
        let got: BTreeSet<Vec<&str>> = s.members().map(|m| s.member_labels(m)).collect();
        assert_eq!(got, [vec!["2"], vec!["3"], vec!["2", "3"]].into_iter().collect());

        let open = NumberSet::from_u64s([2, 3]).unwrap();
        assert!(matches!(numset_to_family(&open), Err(Error::NotLcmClosed { .. })));
    }

    #[test]
    fn transport_tables() {
        let c = convert_family(&frankl8()).unwrap();
        assert!(c.transport.consistent);
        assert_eq!(c.transport.rows[0].prime_power, "2");
        assert_eq!(c.transport.rows[0].element_count, 6);
        assert_eq!(c.transport.rows[3].prime_power, "7");

        let n = NumberSet::from_u64s([1, 2, 3, 4, 6, 8, 12, 24]).unwrap();
        let c = convert_numset(&n).unwrap();
        assert!(c.transport.consistent);
        let two = c.transport.rows.iter().find(|r| r.prime_power == "2").unwrap();
        assert_eq!(two.divisor_count, 6);
    }

    #[test]
    fn sieve_bound_applies_to_large_universes() {
        // 64 labels is within the default sieve, so conversion works.
        let u = Universe::numbered(64).unwrap();
        let s = SetFamily::new(u, [u64::MAX]).unwrap();
        let n = family_to_numset(&s).unwrap();
        assert_eq!(n.iter().next().unwrap().support_len(), 64);
    }
}
