//! Positive integers in prime-exponent form.
//!
//! Every integer is kept as a sparse map from prime index (`p_1 = 2`) to a
//! positive exponent. LCM and GCD become per-index max and min, so no
//! intermediate value can overflow. Decimal values only appear at the I/O
//! boundary.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU32, AtomicUsize, Ordering as AtomicOrdering};
use std::sync::RwLock;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_SIEVE_CAP: usize = 100_000;
pub const DEFAULT_EXPONENT_CAP: u32 = 1 << 16;

static SIEVE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_SIEVE_CAP);
static EXPONENT_CAP: AtomicU32 = AtomicU32::new(DEFAULT_EXPONENT_CAP);
static PRIMES: RwLock<Vec<u64>> = RwLock::new(Vec::new());

/// Number of primes `nth_prime` and factorization may use.
pub fn sieve_cap() -> usize {
    SIEVE_CAP.load(AtomicOrdering::Relaxed)
}

pub fn set_sieve_cap(cap: usize) {
    SIEVE_CAP.store(cap.max(1), AtomicOrdering::Relaxed);
}

pub fn exponent_cap() -> u32 {
    EXPONENT_CAP.load(AtomicOrdering::Relaxed)
}

pub fn set_exponent_cap(cap: u32) {
    EXPONENT_CAP.store(cap.max(1), AtomicOrdering::Relaxed);
}

/// Upper bound on the value of the `count`-th prime (Rosser's bound).
fn sieve_limit(count: usize) -> usize {
    if count < 6 {
        return 15;
    }
    let n = count as f64;
    (n * (n.ln() + n.ln().ln())).ceil() as usize + 1
}

fn sieve_up_to(limit: usize) -> Vec<u64> {
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Makes sure at least `count` primes are tabulated. Ignores the cap; the
/// public entry points enforce it.
fn ensure_primes(count: usize) {
    if PRIMES.read().expect("prime table poisoned").len() >= count {
        return;
    }
    let mut table = PRIMES.write().expect("prime table poisoned");
    if table.len() < count {
        *table = sieve_up_to(sieve_limit(count));
    }
}

/// `p_index` (1-based) without the cap check.
fn prime_unchecked(index: usize) -> u64 {
    ensure_primes(index);
    PRIMES.read().expect("prime table poisoned")[index - 1]
}

/// 1-based position of `p` among the first `sieve_cap()` primes.
fn index_of_prime(p: u64) -> Option<usize> {
    let cap = sieve_cap();
    let mut count = 64.min(cap);
    loop {
        ensure_primes(count);
        let table = PRIMES.read().expect("prime table poisoned");
        let visible = &table[..count.min(table.len()).min(cap)];
        if let Some(&last) = visible.last() {
            if last >= p {
                return visible.binary_search(&p).ok().map(|i| i + 1);
            }
        }
        if count >= cap {
            return None;
        }
        count = (count * 2).min(cap);
    }
}

/// 1-based index into the sequence of primes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeIndex(u32);

impl PrimeIndex {
    pub fn new(i: usize) -> Result<Self> {
        if i == 0 {
            return Err(Error::ZeroPrimeIndex);
        }
        u32::try_from(i).map(PrimeIndex).map_err(|_| Error::SieveBound { index: i, cap: sieve_cap() })
    }

    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// The prime this index names.
    pub fn prime(self) -> u64 {
        prime_unchecked(self.get())
    }
}

/// Returns `p_i`, the `i`-th prime (`p_1 = 2`).
pub fn nth_prime(i: usize) -> Result<u64> {
    let index = PrimeIndex::new(i)?;
    let cap = sieve_cap();
    if i > cap {
        return Err(Error::SieveBound { index: i, cap });
    }
    Ok(index.prime())
}

fn check_exponent(exponent: u64) -> Result<u32> {
    let cap = exponent_cap();
    if exponent > u64::from(cap) {
        return Err(Error::ExponentCap { exponent, cap });
    }
    Ok(exponent as u32)
}

/// A prime power `p_index^exponent` with `exponent >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    pub index: PrimeIndex,
    pub exponent: u32,
}

impl PrimePower {
    pub fn new(index: PrimeIndex, exponent: u32) -> Result<Self> {
        if exponent == 0 {
            return Err(Error::InvalidArgument("prime power exponent must be at least 1".into()));
        }
        check_exponent(u64::from(exponent))?;
        Ok(PrimePower { index, exponent })
    }

    /// Builds `p^k` from the prime itself rather than its index.
    pub fn of_prime(p: u64, exponent: u32) -> Result<Self> {
        let index = index_of_prime(p).ok_or_else(|| Error::InvalidArgument(format!("{p} is not a tabulated prime")))?;
        PrimePower::new(PrimeIndex(index as u32), exponent)
    }

    pub fn prime(&self) -> u64 {
        self.index.prime()
    }

    pub fn to_vector(self) -> ExponentVector {
        ExponentVector { entries: vec![(self.index.0, self.exponent)] }
    }

    pub fn divides(&self, n: &ExponentVector) -> bool {
        n.exponent(self.index) >= self.exponent
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "{}", self.prime())
        } else {
            write!(f, "{}^{}", self.prime(), self.exponent)
        }
    }
}

impl FromStr for PrimePower {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v: ExponentVector = s.parse()?;
        let mut it = v.iter();
        match (it.next(), it.next()) {
            (Some((index, exponent)), None) => PrimePower::new(index, exponent),
            _ => Err(Error::Parse { input: s.into(), reason: "not a prime power".into() }),
        }
    }
}

impl Serialize for PrimePower {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A positive integer as its prime factorization.
///
/// Entries are `(prime index, exponent)` sorted by index with no zero
/// exponents; the empty vector is 1. The derived ordering is structural and
/// only used for set storage; use [`ExponentVector::cmp_value`] for numeric
/// order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExponentVector {
    entries: Vec<(u32, u32)>,
}

impl ExponentVector {
    pub fn one() -> Self {
        ExponentVector::default()
    }

    /// Builds a vector from `(prime index, exponent)` pairs. Zero exponents
    /// are dropped and repeated indices multiply.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, u64)>,
    {
        let mut acc: std::collections::BTreeMap<u32, u64> = Default::default();
        for (i, e) in pairs {
            let index = PrimeIndex::new(i)?;
            if index.get() > sieve_cap() {
                return Err(Error::SieveBound { index: i, cap: sieve_cap() });
            }
            *acc.entry(index.0).or_default() += e;
        }
        let mut entries = Vec::with_capacity(acc.len());
        for (i, e) in acc {
            if e > 0 {
                entries.push((i, check_exponent(e)?));
            }
        }
        Ok(ExponentVector { entries })
    }

    pub fn is_one(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn exponent(&self, index: PrimeIndex) -> u32 {
        self.entries.binary_search_by_key(&index.0, |&(i, _)| i).map(|pos| self.entries[pos].1).unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (PrimeIndex, u32)> + '_ {
        self.entries.iter().map(|&(i, e)| (PrimeIndex(i), e))
    }

    /// Maximal prime powers `p^q` exactly dividing this number.
    pub fn prime_powers(&self) -> impl Iterator<Item = PrimePower> + '_ {
        self.iter().map(|(index, exponent)| PrimePower { index, exponent })
    }

    /// Number of distinct prime factors.
    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    fn merge(&self, other: &Self, keep_missing: bool, pick: fn(u32, u32) -> u32) -> Self {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len().max(b.len()));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    if keep_missing {
                        out.push(a[i]);
                    }
                    i += 1;
                }
                Ordering::Greater => {
                    if keep_missing {
                        out.push(b[j]);
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let e = pick(a[i].1, b[j].1);
                    if e > 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        if keep_missing {
            out.extend_from_slice(&a[i..]);
            out.extend_from_slice(&b[j..]);
        }
        ExponentVector { entries: out }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        self.merge(other, true, u32::max)
    }

    pub fn gcd(&self, other: &Self) -> Self {
        self.merge(other, false, u32::min)
    }

    /// True iff `self | other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.entries.len() <= other.entries.len()
            && self.entries.iter().all(|&(i, e)| other.exponent(PrimeIndex(i)) >= e)
    }

    /// `self / divisor`, or `None` if the division is not exact.
    pub fn checked_div(&self, divisor: &Self) -> Option<Self> {
        if !divisor.divides(self) {
            return None;
        }
        let entries = self
            .entries
            .iter()
            .filter_map(|&(i, e)| {
                let rest = e - divisor.exponent(PrimeIndex(i));
                (rest > 0).then_some((i, rest))
            })
            .collect();
        Some(ExponentVector { entries })
    }

    /// Sum of all exponents.
    pub fn sigma_ppe(&self) -> u64 {
        self.entries.iter().map(|&(_, e)| u64::from(e)).sum()
    }

    pub fn to_biguint(&self) -> BigUint {
        let mut acc = BigUint::one();
        for &(i, e) in &self.entries {
            acc *= BigUint::from(prime_unchecked(i as usize)).pow(e);
        }
        acc
    }

    pub fn to_u64(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for &(i, e) in &self.entries {
            let p = prime_unchecked(i as usize);
            for _ in 0..e {
                acc = acc.checked_mul(p)?;
            }
        }
        Some(acc)
    }

    pub fn to_decimal(&self) -> String {
        match self.to_u64() {
            Some(n) => n.to_string(),
            None => self.to_biguint().to_str_radix(10),
        }
    }

    /// Numeric comparison of the represented integers.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self.to_u64(), other.to_u64()) {
            (Some(a), Some(b)) => a.cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.to_biguint().cmp(&other.to_biguint()),
        }
    }

    /// Canonical factored rendering, e.g. `2^3*3`; `1` for the empty product.
    pub fn to_factored(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("1");
        }
        for (k, pp) in self.prime_powers().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "{pp}")?;
        }
        Ok(())
    }
}

/// Factorizes `n` by trial division against the sieve.
pub fn factorize(n: u64) -> Result<ExponentVector> {
    if n == 0 {
        return Err(Error::Zero);
    }
    let mut rest = n;
    let mut entries = Vec::new();
    let cap = sieve_cap();
    let mut index = 1;
    while rest > 1 {
        if index > cap {
            return Err(Error::FactorBeyondSieve { value: n.to_string() });
        }
        let p = prime_unchecked(index);
        if p.saturating_mul(p) > rest {
            let last = index_of_prime(rest).ok_or_else(|| Error::FactorBeyondSieve { value: n.to_string() })?;
            entries.push((last as u32, 1));
            break;
        }
        let mut e = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            entries.push((index as u32, e));
        }
        index += 1;
    }
    Ok(ExponentVector { entries })
}

/// Factorizes an arbitrarily large decimal value; all prime factors must be
/// within the sieve.
pub fn factorize_big(n: &BigUint) -> Result<ExponentVector> {
    if let Some(small) = n.to_u64() {
        return factorize(small);
    }
    let mut rest = n.clone();
    let mut entries = Vec::new();
    let cap = sieve_cap();
    for index in 1..=cap {
        if let Some(small) = rest.to_u64() {
            let tail = factorize(small).map_err(|_| Error::FactorBeyondSieve { value: n.to_string() })?;
            let head = entries.into_iter().map(|(i, e)| (i as usize, u64::from(e)));
            return ExponentVector::from_pairs(head.chain(tail.iter().map(|(i, e)| (i.get(), u64::from(e)))));
        }
        let p = BigUint::from(prime_unchecked(index));
        let mut e: u64 = 0;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            entries.push((index as u32, check_exponent(e)?));
        }
    }
    Err(Error::FactorBeyondSieve { value: n.to_string() })
}

fn parse_decimal(token: &str, whole: &str) -> Result<BigUint> {
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::Parse { input: whole.into(), reason: format!("{token:?} is not a decimal integer") });
    }
    Ok(BigUint::parse_bytes(token.as_bytes(), 10).expect("digits checked"))
}

impl FromStr for ExponentVector {
    type Err = Error;

    /// Accepts a decimal (`24`) or a factored product (`2^3*3`).
    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        if text.is_empty() {
            return Err(Error::Parse { input: s.into(), reason: "empty".into() });
        }
        let mut acc = ExponentVector::one();
        for factor in text.split('*') {
            let factor = factor.trim();
            let (base, power) = match factor.split_once('^') {
                Some((b, k)) => {
                    let k = parse_decimal(k.trim(), s)?
                        .to_u64()
                        .ok_or_else(|| Error::Parse { input: s.into(), reason: "exponent too large".into() })?;
                    (b.trim(), k)
                }
                None => (factor, 1),
            };
            let base = parse_decimal(base, s)?;
            if base.is_zero() {
                return Err(Error::Zero);
            }
            let v = factorize_big(&base)?;
            let scaled = ExponentVector::from_pairs(
                acc.iter()
                    .map(|(i, e)| (i.get(), u64::from(e)))
                    .chain(v.iter().map(|(i, e)| (i.get(), u64::from(e) * power))),
            )?;
            acc = scaled;
        }
        Ok(acc)
    }
}

impl From<PrimePower> for ExponentVector {
    fn from(pp: PrimePower) -> Self {
        pp.to_vector()
    }
}

/// Serialized as `{"decimal": "...", "factored": "..."}`.
impl Serialize for ExponentVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Number", 2)?;
        st.serialize_field("decimal", &self.to_decimal())?;
        st.serialize_field("factored", &self.to_factored())?;
        st.end()
    }
}

/// Deserialized from a number string in either text form.
impl<'de> Deserialize<'de> for ExponentVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(de::Error::custom)
    }
}
