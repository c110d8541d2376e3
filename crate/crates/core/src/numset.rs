//! Finite sets of positive integers: LCM/GCD closedness, closures,
//! abundance reports, normalization and the LCM/GCD dual.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize, Serializer};

use crate::arith::{factorize, ExponentVector, PrimeIndex, PrimePower};
use crate::error::{Error, Result};
use crate::search::EndoFunction;
use crate::Verdict;

/// Default cap on the number of divisors `abundant_general_divisors` will
/// enumerate.
pub const DEFAULT_DIVISOR_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NumberSet {
    members: BTreeSet<ExponentVector>,
}

/// `count * 2 >= total`.
pub(crate) fn at_least_half(count: usize, total: usize) -> bool {
    count * 2 >= total
}

/// `count * 2 <= total`.
pub(crate) fn at_most_half(count: usize, total: usize) -> bool {
    count * 2 <= total
}

impl NumberSet {
    pub fn new<I: IntoIterator<Item = ExponentVector>>(members: I) -> Self {
        NumberSet { members: members.into_iter().collect() }
    }

    pub fn from_u64s<I: IntoIterator<Item = u64>>(values: I) -> Result<Self> {
        values.into_iter().map(factorize).collect::<Result<BTreeSet<_>>>().map(|members| NumberSet { members })
    }

    /// Parses a JSON array of number strings, e.g. `["1","2","2^2*3"]`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: Vec<String> = serde_json::from_str(text)
            .map_err(|e| Error::Parse { input: text.trim().into(), reason: e.to_string() })?;
        raw.iter().map(|s| s.parse()).collect::<Result<BTreeSet<_>>>().map(|members| NumberSet { members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, n: &ExponentVector) -> bool {
        self.members.contains(n)
    }

    /// Members in structural order.
    pub fn iter(&self) -> impl Iterator<Item = &ExponentVector> {
        self.members.iter()
    }

    /// Members in increasing numeric order.
    pub fn sorted(&self) -> Vec<&ExponentVector> {
        let mut v: Vec<_> = self.members.iter().collect();
        v.sort_by(|a, b| a.cmp_value(b));
        v
    }

    pub fn to_decimals(&self) -> Vec<String> {
        self.sorted().into_iter().map(ExponentVector::to_decimal).collect()
    }

    /// Members in increasing order, as `u64`. Panics if a member overflows.
    pub fn to_u64s(&self) -> Vec<u64> {
        self.sorted().into_iter().map(|n| n.to_u64().expect("member exceeds u64")).collect()
    }

    fn require_nonempty(&self, op: &'static str) -> Result<()> {
        if self.is_empty() {
            Err(Error::Empty(op))
        } else {
            Ok(())
        }
    }

    pub fn lcm_all(&self) -> Result<ExponentVector> {
        self.require_nonempty("lcm")?;
        Ok(self.members.iter().fold(ExponentVector::one(), |acc, n| acc.lcm(n)))
    }

    pub fn gcd_all(&self) -> Result<ExponentVector> {
        self.require_nonempty("gcd")?;
        let mut it = self.members.iter();
        let first = it.next().expect("nonempty").clone();
        Ok(it.fold(first, |acc, n| acc.gcd(n)))
    }

    fn first_violation(
        &self,
        op: fn(&ExponentVector, &ExponentVector) -> ExponentVector,
    ) -> Option<(&ExponentVector, &ExponentVector, ExponentVector)> {
        let members: Vec<_> = self.members.iter().collect();
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                let c = op(a, b);
                if !self.members.contains(&c) {
                    return Some((a, b, c));
                }
            }
        }
        None
    }

    pub fn is_lcm_closed(&self) -> Result<bool> {
        self.require_nonempty("is_lcm_closed")?;
        Ok(self.first_violation(ExponentVector::lcm).is_none())
    }

    pub fn is_gcd_closed(&self) -> Result<bool> {
        self.require_nonempty("is_gcd_closed")?;
        Ok(self.first_violation(ExponentVector::gcd).is_none())
    }

    /// Errors with the first missing pairwise lcm.
    pub fn require_lcm_closed(&self) -> Result<()> {
        self.require_nonempty("LCM-closed input")?;
        match self.first_violation(ExponentVector::lcm) {
            None => Ok(()),
            Some((a, b, c)) => Err(Error::NotLcmClosed { a: a.to_decimal(), b: b.to_decimal(), lcm: c.to_decimal() }),
        }
    }

    pub fn require_gcd_closed(&self) -> Result<()> {
        self.require_nonempty("GCD-closed input")?;
        match self.first_violation(ExponentVector::gcd) {
            None => Ok(()),
            Some((a, b, c)) => Err(Error::NotGcdClosed { a: a.to_decimal(), b: b.to_decimal(), gcd: c.to_decimal() }),
        }
    }

    fn closure(&self, op: fn(&ExponentVector, &ExponentVector) -> ExponentVector) -> NumberSet {
        let mut all = self.members.clone();
        let mut pending: Vec<ExponentVector> = all.iter().cloned().collect();
        while let Some(x) = pending.pop() {
            let snapshot: Vec<ExponentVector> = all.iter().cloned().collect();
            for y in &snapshot {
                let z = op(&x, y);
                if all.insert(z.clone()) {
                    pending.push(z);
                }
            }
        }
        NumberSet { members: all }
    }

    /// Smallest LCM-closed superset. Every new element divides `lcm(N)`, so
    /// the fixpoint is reached.
    pub fn lcm_closure(&self) -> Result<NumberSet> {
        self.require_nonempty("lcm_closure")?;
        Ok(self.closure(ExponentVector::lcm))
    }

    pub fn gcd_closure(&self) -> Result<NumberSet> {
        self.require_nonempty("gcd_closure")?;
        Ok(self.closure(ExponentVector::gcd))
    }

    /// Number of members divisible by `d`.
    pub fn count_divisible(&self, d: &ExponentVector) -> usize {
        self.members.iter().filter(|n| d.divides(n)).count()
    }

    /// Every prime power dividing `lcm(N)` with the number of members it
    /// divides, ordered by (prime, exponent).
    pub fn prime_power_counts(&self) -> Vec<(PrimePower, usize)> {
        let top = self.members.iter().fold(ExponentVector::one(), |acc, n| acc.lcm(n));
        let mut out = Vec::new();
        for (index, max) in top.iter() {
            let mut counts = vec![0usize; max as usize + 1];
            for n in &self.members {
                counts[n.exponent(index) as usize] += 1;
            }
            // counts[k] holds members with exponent exactly k; suffix sums give >= k.
            let mut at_least = 0;
            let mut column = vec![0usize; max as usize + 1];
            for k in (1..=max as usize).rev() {
                at_least += counts[k];
                column[k] = at_least;
            }
            for k in 1..=max {
                out.push((PrimePower { index, exponent: k }, column[k as usize]));
            }
        }
        out
    }

    pub fn abundant_divisors(&self) -> Result<DivisorAbundanceReport> {
        self.require_nonempty("abundant_divisors")?;
        let total = self.len();
        let prime_power_counts: Vec<PrimePowerCount> = self
            .prime_power_counts()
            .into_iter()
            .map(|(prime_power, count)| PrimePowerCount { prime_power, count })
            .collect();
        let abundant_prime_powers: Vec<PrimePower> =
            prime_power_counts.iter().filter(|c| at_least_half(c.count, total)).map(|c| c.prime_power).collect();
        let applicable = self.members.iter().any(|n| !n.is_one());
        // Most frequent abundant prime, smallest prime on ties.
        let witness = prime_power_counts
            .iter()
            .filter(|c| c.prime_power.exponent == 1 && at_least_half(c.count, total))
            .min_by_key(|c| (std::cmp::Reverse(c.count), c.prime_power))
            .map(|c| c.prime_power);
        let verdict = match (applicable, witness) {
            (false, _) => Verdict::NotApplicable,
            (true, Some(_)) => Verdict::Holds,
            (true, None) => Verdict::Violated,
        };
        Ok(DivisorAbundanceReport { total, prime_power_counts, abundant_prime_powers, verdict, witness })
    }

    /// Abundant divisors `d > 1` of `lcm(N)` in increasing order, prime or not.
    pub fn abundant_general_divisors(&self, limit: usize) -> Result<GeneralAbundanceReport> {
        self.require_nonempty("abundant_general_divisors")?;
        let total = self.len();
        let top = self.lcm_all()?;
        let divisor_count =
            top.iter().try_fold(1u128, |acc, (_, e)| acc.checked_mul(u128::from(e) + 1)).unwrap_or(u128::MAX);
        let applicable = self.members.iter().any(|n| !n.is_one());
        let status = if applicable { Verdict::Holds } else { Verdict::NotApplicable };
        if divisor_count > limit as u128 {
            return Ok(GeneralAbundanceReport {
                total,
                divisor_count: divisor_count.to_string(),
                truncated: true,
                abundant: Vec::new(),
                status,
            });
        }
        let mut divisors = vec![ExponentVector::one()];
        for pp in top.prime_powers() {
            let mut next = Vec::with_capacity(divisors.len() * (pp.exponent as usize + 1));
            for d in &divisors {
                next.push(d.clone());
                for k in 1..=pp.exponent {
                    next.push(d.lcm(&PrimePower { index: pp.index, exponent: k }.to_vector()));
                }
            }
            divisors = next;
        }
        divisors.sort_by(|a, b| a.cmp_value(b));
        let abundant: Vec<DivisorCount> = divisors
            .into_iter()
            .filter(|d| !d.is_one())
            .map(|d| {
                let count = self.count_divisible(&d);
                DivisorCount { divisor: d, count }
            })
            .filter(|dc| at_least_half(dc.count, total))
            .collect();
        let status = match (applicable, abundant.is_empty()) {
            (false, _) => Verdict::NotApplicable,
            (true, false) => Verdict::Holds,
            (true, true) => Verdict::Violated,
        };
        Ok(GeneralAbundanceReport {
            total,
            divisor_count: divisor_count.to_string(),
            truncated: false,
            abundant,
            status,
        })
    }

    pub fn nonabundant_prime_powers(&self) -> Result<NonAbundanceReport> {
        if self.len() < 2 {
            return Err(Error::TooFewMembers { op: "nonabundant_prime_powers", min: 2, got: self.len() });
        }
        let total = self.len();
        let nonabundant_prime_powers: Vec<PrimePowerCount> = self
            .prime_power_counts()
            .into_iter()
            .filter(|&(_, count)| count >= 1 && at_most_half(count, total))
            .map(|(prime_power, count)| PrimePowerCount { prime_power, count })
            .collect();
        let has_nonabundant = !nonabundant_prime_powers.is_empty();
        Ok(NonAbundanceReport { total, nonabundant_prime_powers, has_nonabundant })
    }

    /// Divides every member by `gcd(N)`.
    pub fn normalize(&self) -> Result<NumberSet> {
        let g = self.gcd_all()?;
        Ok(NumberSet::new(self.members.iter().map(|n| n.checked_div(&g).expect("gcd divides every member"))))
    }

    /// `{ lcm(N) / n : n ∈ N }`.
    pub fn dual(&self) -> Result<NumberSet> {
        let top = self.lcm_all()?;
        Ok(NumberSet::new(self.members.iter().map(|n| top.checked_div(n).expect("member divides the lcm"))))
    }

    /// Moves a non-abundant prime power `p^k` of a GCD-closed set (or an
    /// abundant, non-universal one of an LCM-closed set) to the dual as
    /// `p^(e - k + 1)`, where `e` is the exponent of `p` in `lcm(N)`. The
    /// shifted power divides exactly the duals of the members `p^k` does not
    /// divide, so abundance flips.
    pub fn shifted_witness(&self, direction: Direction, prime_power: PrimePower) -> Result<ShiftedWitness> {
        if self.len() < 2 {
            return Err(Error::TooFewMembers { op: "shifted_witness", min: 2, got: self.len() });
        }
        let total = self.len();
        let count = self.count_divisible(&prime_power.to_vector());
        match direction {
            Direction::GcdToLcm => {
                self.require_gcd_closed()?;
                if count == 0 || !at_most_half(count, total) {
                    return Err(Error::NotNonAbundant(prime_power.to_string()));
                }
            }
            Direction::LcmToGcd => {
                self.require_lcm_closed()?;
                if !at_least_half(count, total) {
                    return Err(Error::NotAbundant(prime_power.to_string()));
                }
                if count == total {
                    return Err(Error::Universal(prime_power.to_string()));
                }
            }
        }
        let top = self.lcm_all()?;
        let shifted = PrimePower {
            index: prime_power.index,
            exponent: top.exponent(prime_power.index) - prime_power.exponent + 1,
        };
        let dual = self.dual()?;
        let shifted_count = dual.count_divisible(&shifted.to_vector());
        let verified = match direction {
            Direction::GcdToLcm => at_least_half(shifted_count, total),
            Direction::LcmToGcd => shifted_count >= 1 && at_most_half(shifted_count, total),
        };
        Ok(ShiftedWitness { direction, total, prime_power, count, dual, shifted, shifted_count, verified })
    }

    /// All witnesses available in `direction`: the non-abundant prime powers
    /// (GCD to LCM) or the abundant, non-universal ones (LCM to GCD).
    pub fn shifted_witnesses(&self, direction: Direction) -> Result<Vec<ShiftedWitness>> {
        if self.len() < 2 {
            return Err(Error::TooFewMembers { op: "shifted_witnesses", min: 2, got: self.len() });
        }
        let total = self.len();
        self.prime_power_counts()
            .into_iter()
            .filter(|&(_, count)| match direction {
                Direction::GcdToLcm => count >= 1 && at_most_half(count, total),
                Direction::LcmToGcd => at_least_half(count, total) && count < total,
            })
            .map(|(pp, _)| self.shifted_witness(direction, pp))
            .collect()
    }
}

/// Fundamental period of one point: its cycle length, or `None` if it is
/// not on a cycle.
pub fn point_period(sigma: &EndoFunction, x: usize) -> Option<usize> {
    let mut y = x;
    for steps in 1..=sigma.size() {
        y = sigma.apply(y);
        if y == x {
            return Some(steps);
        }
    }
    None
}

/// `{ P_f(B) : ∅ ≠ B ⊆ A }` where `P_f(B)` is the least `n >= 1` with
/// `sigma^n` fixing every point of `B`.
///
/// `P_f(B)` is the lcm of the cycle lengths in `B`, so the set is the LCM
/// closure of the single-point periods.
pub fn period_set(sigma: &EndoFunction, subset: &[usize]) -> Result<NumberSet> {
    if subset.is_empty() {
        return Err(Error::Empty("period_set"));
    }
    let mut periods = Vec::with_capacity(subset.len());
    for &x in subset {
        if x == 0 || x > sigma.size() {
            return Err(Error::InvalidArgument(format!("point {x} is outside 1..={}", sigma.size())));
        }
        let p = point_period(sigma, x).ok_or(Error::NotOnCycle(x))?;
        periods.push(factorize(p as u64)?);
    }
    NumberSet::new(periods).lcm_closure()
}

impl Serialize for NumberSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.sorted())
    }
}

impl<'de> Deserialize<'de> for NumberSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Vec::<ExponentVector>::deserialize(deserializer).map(NumberSet::new)
    }
}

impl FromIterator<ExponentVector> for NumberSet {
    fn from_iter<I: IntoIterator<Item = ExponentVector>>(iter: I) -> Self {
        NumberSet::new(iter)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PrimePowerCount {
    pub prime_power: PrimePower,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorAbundanceReport {
    pub total: usize,
    pub prime_power_counts: Vec<PrimePowerCount>,
    pub abundant_prime_powers: Vec<PrimePower>,
    pub verdict: Verdict,
    pub witness: Option<PrimePower>,
}

impl DivisorAbundanceReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn count(&self, pp: PrimePower) -> usize {
        self.prime_power_counts.iter().find(|c| c.prime_power == pp).map_or(0, |c| c.count)
    }

    /// Divisibility counts of the primes (exponent 1), by prime index.
    pub fn prime_counts(&self) -> Vec<(PrimeIndex, usize)> {
        self.prime_power_counts
            .iter()
            .filter(|c| c.prime_power.exponent == 1)
            .map(|c| (c.prime_power.index, c.count))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorCount {
    pub divisor: ExponentVector,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneralAbundanceReport {
    pub total: usize,
    /// Number of divisors of `lcm(N)`, as a decimal string.
    pub divisor_count: String,
    pub truncated: bool,
    pub abundant: Vec<DivisorCount>,
    pub status: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonAbundanceReport {
    pub total: usize,
    pub nonabundant_prime_powers: Vec<PrimePowerCount>,
    pub has_nonabundant: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    GcdToLcm,
    LcmToGcd,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftedWitness {
    pub direction: Direction,
    pub total: usize,
    pub prime_power: PrimePower,
    pub count: usize,
    pub dual: NumberSet,
    pub shifted: PrimePower,
    pub shifted_count: usize,
    pub verified: bool,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(values: &[u64]) -> NumberSet {
        NumberSet::from_u64s(values.iter().copied()).unwrap()
    }

    fn pp(s: &str) -> PrimePower {
        s.parse().unwrap()
    }

    /// Every lcm (or gcd) of a nonempty subset, by enumeration.
    fn subset_fold(values: &[u64], op: fn(u64, u64) -> u64) -> Vec<u64> {
        let mut out = BTreeSet::new();
        for mask in 1u32..(1 << values.len()) {
            let mut acc = None;
            for (i, &v) in values.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc = Some(acc.map_or(v, |a| op(a, v)));
                }
            }
            out.insert(acc.unwrap());
        }
        out.into_iter().collect()
    }

    fn gcd_u64(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd_u64(b, a % b)
        }
    }

    fn lcm_u64(a: u64, b: u64) -> u64 {
        a / gcd_u64(a, b) * b
    }

    #[test]
    fn closedness_verdicts() {
        assert!(set(&[1, 2, 3, 4, 6, 12]).is_lcm_closed().unwrap());
        assert!(set(&[1, 2, 3, 4, 6, 12]).is_gcd_closed().unwrap());
        assert!(set(&[2, 3, 4, 6, 12]).is_lcm_closed().unwrap());
        assert!(!set(&[2, 3, 4, 6, 12]).is_gcd_closed().unwrap());
        assert!(!set(&[1, 2, 3, 4, 6, 8, 12]).is_lcm_closed().unwrap());
        assert!(set(&[1, 2, 3, 4, 6, 8, 12]).is_gcd_closed().unwrap());
        assert!(!set(&[6, 10, 14, 30, 42, 70, 210]).is_gcd_closed().unwrap());
        assert!(set(&[6, 10, 14, 30, 42, 70, 210]).is_lcm_closed().unwrap());
        assert_eq!(NumberSet::default().is_lcm_closed(), Err(Error::Empty("is_lcm_closed")));
        assert_eq!(NumberSet::default().is_gcd_closed(), Err(Error::Empty("is_gcd_closed")));
    }

    #[test]
    fn closures_match_subset_enumeration() {
        for (input, expected) in [(&[2u64, 3][..], &[2u64, 3, 6][..]), (&[4, 6], &[4, 6, 12]), (&[5], &[5])] {
            assert_eq!(subset_fold(input, lcm_u64), expected);
            assert_eq!(set(input).lcm_closure().unwrap().to_u64s(), expected);
        }
        for (input, expected) in [(&[4u64, 6][..], &[2u64, 4, 6][..]), (&[2, 3], &[1, 2, 3]), (&[8], &[8])] {
            assert_eq!(subset_fold(input, gcd_u64), expected);
            assert_eq!(set(input).gcd_closure().unwrap().to_u64s(), expected);
        }
        let wide = [12u64, 18, 20, 45, 7, 98, 30, 11, 64, 9];
        assert_eq!(set(&wide).lcm_closure().unwrap().to_u64s(), subset_fold(&wide, lcm_u64));
        assert_eq!(set(&wide).gcd_closure().unwrap().to_u64s(), subset_fold(&wide, gcd_u64));
        assert!(NumberSet::default().lcm_closure().is_err());
    }

    #[test]
    fn abundant_divisors_examples() {
        let r = set(&[1, 2, 3, 4, 6, 8, 12, 24]).abundant_divisors().unwrap();
        assert_eq!(r.total, 8);
        assert_eq!(r.count(pp("2")), 6);
        assert_eq!(r.witness, Some(pp("2")));
        assert!(r.holds());

        let r = set(&[6, 10, 14, 30, 42, 70, 210]).abundant_divisors().unwrap();
        for p in ["2", "3", "5", "7"] {
            assert!(r.abundant_prime_powers.contains(&pp(p)), "{p}");
        }
        assert!(r.holds());

        let r = set(&[2, 6, 30]).abundant_divisors().unwrap();
        assert_eq!(r.count(pp("5")), 1);
        assert!(!r.abundant_prime_powers.contains(&pp("5")));
        assert_eq!(r.count(pp("2")), 3);
    }

    #[test]
    fn abundance_not_applicable_for_ones() {
        let r = set(&[1]).abundant_divisors().unwrap();
        assert_eq!(r.verdict, Verdict::NotApplicable);
        assert!(r.prime_power_counts.is_empty());
        assert_eq!(NumberSet::default().abundant_divisors(), Err(Error::Empty("abundant_divisors")));
    }

    #[test]
    fn general_divisors() {
        let r = set(&[6, 10, 14, 30, 42, 70, 210]).abundant_general_divisors(100).unwrap();
        let found: Vec<u64> = r.abundant.iter().map(|d| d.divisor.to_u64().unwrap()).collect();
        for d in [2, 3, 5, 6, 7, 10, 14] {
            assert!(found.contains(&d), "{d}");
        }
        assert!(found.windows(2).all(|w| w[0] < w[1]));

        let r = set(&[2, 4, 8]).abundant_general_divisors(100).unwrap();
        let pairs: Vec<(u64, usize)> = r.abundant.iter().map(|d| (d.divisor.to_u64().unwrap(), d.count)).collect();
        assert_eq!(pairs, vec![(2, 3), (4, 2)]);

        let r = set(&[1]).abundant_general_divisors(100).unwrap();
        assert!(r.abundant.is_empty());
        assert_eq!(r.status, Verdict::NotApplicable);

        let r = set(&[210]).abundant_general_divisors(15).unwrap();
        assert!(r.truncated);
        assert_eq!(r.divisor_count, "16");
    }

    #[test]
    fn nonabundant_examples() {
        let r = set(&[1, 2, 3, 4, 6, 8, 12]).nonabundant_prime_powers().unwrap();
        let got: Vec<PrimePower> = r.nonabundant_prime_powers.iter().map(|c| c.prime_power).collect();
        assert_eq!(got, vec![pp("2^2"), pp("2^3"), pp("3")]);
        assert!(r.has_nonabundant);

        let r = set(&[1, 2]).nonabundant_prime_powers().unwrap();
        assert_eq!(r.nonabundant_prime_powers, vec![PrimePowerCount { prime_power: pp("2"), count: 1 }]);

        let r = set(&[2, 4]).nonabundant_prime_powers().unwrap();
        assert_eq!(r.nonabundant_prime_powers, vec![PrimePowerCount { prime_power: pp("2^2"), count: 1 }]);

        assert!(matches!(set(&[5]).nonabundant_prime_powers(), Err(Error::TooFewMembers { .. })));
    }

    #[test]
    fn normalize_and_dual_examples() {
        let n = set(&[6, 10, 14, 30, 42, 70, 210]);
        assert_eq!(n.normalize().unwrap().to_u64s(), vec![3, 5, 7, 15, 21, 35, 105]);
        assert_eq!(set(&[1, 2, 3]).normalize().unwrap().to_u64s(), vec![1, 2, 3]);
        assert_eq!(set(&[4, 8]).normalize().unwrap().to_u64s(), vec![1, 2]);

        let d = n.dual().unwrap();
        assert_eq!(d.to_u64s(), vec![1, 3, 5, 7, 15, 21, 35]);
        assert_eq!(d.dual().unwrap(), n.normalize().unwrap());

        let m = set(&[1, 2, 3, 4, 6, 8, 12]);
        assert_eq!(m.dual().unwrap().to_u64s(), vec![2, 3, 4, 6, 8, 12, 24]);
        let top = m.lcm_all().unwrap();
        assert_eq!(top.checked_div(&factorize(1).unwrap()).unwrap().to_u64(), Some(24));
        assert_eq!(top.checked_div(&factorize(12).unwrap()).unwrap().to_u64(), Some(2));
    }

    #[test]
    fn shifted_witness_examples() {
        let n = set(&[1, 2, 3, 4, 6, 8, 12]);
        for (witness, shifted) in [("2^2", "2^2"), ("3", "3"), ("2^3", "2")] {
            let w = n.shifted_witness(Direction::GcdToLcm, pp(witness)).unwrap();
            assert_eq!(w.shifted, pp(shifted));
            assert!(w.verified);
            assert_eq!(w.dual.to_u64s(), vec![2, 3, 4, 6, 8, 12, 24]);
        }
        assert_eq!(n.shifted_witnesses(Direction::GcdToLcm).unwrap().len(), 3);
    }

    #[test]
    fn shifted_witness_precondition_errors() {
        let n = set(&[1, 2, 3, 4, 6, 8, 12]);
        assert!(matches!(n.shifted_witness(Direction::GcdToLcm, pp("2")), Err(Error::NotNonAbundant(_))));
        assert!(matches!(n.shifted_witness(Direction::GcdToLcm, pp("5")), Err(Error::NotNonAbundant(_))));
        assert!(matches!(n.shifted_witness(Direction::LcmToGcd, pp("2")), Err(Error::NotLcmClosed { .. })));
        let lc = set(&[2, 3, 4, 6, 12]);
        assert!(matches!(lc.shifted_witness(Direction::GcdToLcm, pp("3")), Err(Error::NotGcdClosed { .. })));
        assert!(matches!(lc.shifted_witness(Direction::LcmToGcd, pp("2^2")), Err(Error::NotAbundant(_))));
        let w = lc.shifted_witness(Direction::LcmToGcd, pp("2")).unwrap();
        assert!(w.verified);
        let uni = set(&[2, 6]);
        assert!(matches!(uni.shifted_witness(Direction::LcmToGcd, pp("2")), Err(Error::Universal(_))));
        assert!(matches!(set(&[2]).shifted_witness(Direction::LcmToGcd, pp("2")), Err(Error::TooFewMembers { .. })));
    }

    /// P_f(B) by iterating sigma until every point of B returns at once.
    fn brute_period(sigma: &EndoFunction, b: &[usize]) -> u64 {
        (1..=1000u64)
            .find(|&n| {
                b.iter().all(|&x| {
                    let mut y = x;
                    for _ in 0..n {
                        y = sigma.apply(y);
                    }
                    y == x
                })
            })
            .unwrap()
    }

    fn brute_period_set(sigma: &EndoFunction, a: &[usize]) -> Vec<u64> {
        let mut out = BTreeSet::new();
        for mask in 1u32..(1 << a.len()) {
            let b: Vec<usize> = (0..a.len()).filter(|i| mask >> i & 1 == 1).map(|i| a[i]).collect();
            out.insert(brute_period(sigma, &b));
        }
        out.into_iter().collect()
    }

    #[test]
    fn period_set_examples() {
        let sigma = EndoFunction::new(vec![2, 1, 4, 5, 3]).unwrap();
        assert_eq!(brute_period_set(&sigma, &[1, 3]), vec![2, 3, 6]);
        assert_eq!(period_set(&sigma, &[1, 3]).unwrap().to_u64s(), vec![2, 3, 6]);

        let id = EndoFunction::new(vec![1, 2]).unwrap();
        assert_eq!(period_set(&id, &[1, 2]).unwrap().to_u64s(), vec![1]);

        let three = EndoFunction::new(vec![2, 3, 1]).unwrap();
        assert_eq!(brute_period_set(&three, &[1]), vec![3]);
        assert_eq!(period_set(&three, &[1]).unwrap().to_u64s(), vec![3]);

        // Fixed point next to a 3-cycle: {1, 3, 3} closes to {1, 3}.
        let mixed = EndoFunction::new(vec![1, 3, 4, 2]).unwrap();
        assert_eq!(period_set(&mixed, &[1, 2]).unwrap().to_u64s(), brute_period_set(&mixed, &[1, 2]));

        let tail = EndoFunction::new(vec![2, 3, 2]).unwrap();
        assert_eq!(period_set(&tail, &[1]), Err(Error::NotOnCycle(1)));
        assert!(period_set(&tail, &[]).is_err());
        assert!(period_set(&tail, &[4]).is_err());
    }

    #[test]
    fn json_input() {
        let n = NumberSet::from_json(r#"["1","2","2^2*3","12"]"#).unwrap();
        assert_eq!(n.to_u64s(), vec![1, 2, 12]);
        assert!(matches!(NumberSet::from_json("[1,2]"), Err(Error::Parse { .. })));
        assert!(matches!(NumberSet::from_json(r#"["0"]"#), Err(Error::Zero)));
    }
}
