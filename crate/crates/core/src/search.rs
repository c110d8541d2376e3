//! Instance generation and exhaustive verification.
//!
//! A family over `{1..n}` is encoded as a `2^n`-bit integer whose bit `m`
//! is set when the member with bitmask `m` belongs to the family. The scan
//! walks these codes in increasing order, split into fixed contiguous
//! chunks; chunk results are merged in chunk order so the report does not
//! depend on the worker count.

use std::collections::BTreeSet;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::ExponentVector;
use crate::bridge::family_to_numset;
use crate::error::{Error, Result};
use crate::family::{SetFamily, Universe};
use crate::numset::{period_set, point_period, NumberSet};

/// Maximal number of extremal witness families kept in a report.
pub const WITNESS_CAP: usize = 16;

/// A map `{1..k} -> {1..k}` given by its image sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EndoFunction {
    image: Vec<usize>,
}

impl EndoFunction {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let size = image.len();
        for (position, &y) in image.iter().enumerate() {
            if y == 0 || y > size {
                return Err(Error::ImageOutOfRange { position: position + 1, image: y, size });
            }
        }
        Ok(EndoFunction { image })
    }

    /// Permutation from cycle notation such as `(1 2)(3 4 5)`; unlisted
    /// points are fixed.
    pub fn from_cycles(size: usize, notation: &str) -> Result<Self> {
        let mut image: Vec<usize> = (1..=size).collect();
        let mut seen = BTreeSet::new();
        let bad = |reason: &str| Error::Parse { input: notation.into(), reason: reason.into() };
        for group in notation.split(')') {
            let group = group.trim();
            if group.is_empty() {
                continue;
            }
            let body = group.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let points: Vec<usize> = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| bad("cycle entries must be positive integers")))
                .collect::<Result<_>>()?;
            for (k, &x) in points.iter().enumerate() {
                if x == 0 || x > size {
                    return Err(bad("cycle entry outside the domain"));
                }
                if !seen.insert(x) {
                    return Err(bad("point appears twice"));
                }
                image[x - 1] = points[(k + 1) % points.len()];
            }
        }
        EndoFunction::new(image)
    }

    pub fn size(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// `sigma(x)` for a point `x` in `1..=size`.
    pub fn apply(&self, x: usize) -> usize {
        self.image[x - 1]
    }

    pub fn cycle_points(&self) -> Vec<usize> {
        (1..=self.size()).filter(|&x| point_period(self, x).is_some()).collect()
    }
}

/// Least `n >= 1` with `sigma^n` fixing every point of `subset`, found by
/// iterating the map on the whole subset.
fn joint_period(sigma: &EndoFunction, subset: &[usize], limit: u64) -> Option<u64> {
    let mut current: Vec<usize> = subset.to_vec();
    for n in 1..=limit {
        for y in current.iter_mut() {
            *y = sigma.apply(*y);
        }
        if current == subset {
            return Some(n);
        }
    }
    None
}

/// [`period_set`] with its LCM-closedness and its maximum `P_f(A)` checked
/// before returning.
pub fn periods_from_endofunction(sigma: &EndoFunction, subset: &[usize]) -> Result<NumberSet> {
    let set = period_set(sigma, subset)?;
    assert!(set.is_lcm_closed()?, "period set is not LCM-closed");
    let max = set.sorted().last().and_then(|m| m.to_u64()).expect("nonempty");
    let limit = subset.iter().map(|&x| point_period(sigma, x).unwrap_or(1) as u64).product::<u64>();
    assert_eq!(joint_period(sigma, subset, limit), Some(max), "maximum of the period set is not P_f(A)");
    Ok(set)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureKind {
    Lcm,
    Gcd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NumsetBounds {
    /// Number of random generators drawn before closing.
    pub seeds: usize,
    pub max_prime_index: usize,
    pub max_exponent: u32,
}

/// Closure of `bounds.seeds` random numbers whose exponents are drawn
/// uniformly from `0..=max_exponent` on the first `max_prime_index` primes.
pub fn random_closed_numset(seed: u64, bounds: NumsetBounds, kind: ClosureKind) -> Result<NumberSet> {
    if bounds.seeds == 0 || bounds.max_prime_index == 0 || bounds.max_exponent == 0 {
        return Err(Error::InvalidArgument("generator bounds must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let members = (0..bounds.seeds)
        .map(|_| {
            ExponentVector::from_pairs(
                (1..=bounds.max_prime_index).map(|i| (i, u64::from(rng.gen_range(0..=bounds.max_exponent)))),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let seeds = NumberSet::new(members);
    match kind {
        ClosureKind::Lcm => seeds.lcm_closure(),
        ClosureKind::Gcd => seeds.gcd_closure(),
    }
}

/// Union closure of `seeds` random members over `{1..universe_size}`.
pub fn random_union_closed_family(seed: u64, universe_size: usize, seeds: usize) -> Result<SetFamily> {
    if seeds == 0 {
        return Err(Error::InvalidArgument("at least one seed member is required".into()));
    }
    let universe = Universe::numbered(universe_size)?;
    let full = universe.full_mask();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let members: Vec<u64> = (0..seeds).map(|_| rng.gen::<u64>() & full).collect();
    SetFamily::new(universe, members)?.union_closure()
}

pub fn random_permutation(seed: u64, size: usize) -> EndoFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut image: Vec<usize> = (1..=size).collect();
    image.shuffle(&mut rng);
    EndoFunction { image }
}

pub fn random_endofunction(seed: u64, size: usize) -> EndoFunction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    EndoFunction { image: (0..size).map(|_| rng.gen_range(1..=size)).collect() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub n: u32,
    pub workers: usize,
    /// Required for `n = 5`.
    pub allow_n5: bool,
    pub checkpoint: Option<PathBuf>,
    pub progress: bool,
}

impl EnumerationConfig {
    pub fn new(n: u32) -> Self {
        EnumerationConfig { n, workers: 1, allow_n5: false, checkpoint: None, progress: false }
    }

    pub fn workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }
}

/// `best / size`: the largest element count of a family over its size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abundance {
    pub count: u64,
    pub size: u64,
}

impl Abundance {
    fn less_than(self, other: Abundance) -> bool {
        u128::from(self.count) * u128::from(other.size) < u128::from(other.count) * u128::from(self.size)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
struct ChunkSummary {
    candidates: u64,
    union_closed: u64,
    applicable: u64,
    violations: Vec<u64>,
    min_abundance: Option<Abundance>,
    witnesses: Vec<u64>,
    witness_count: u64,
    failures: Vec<(u64, String)>,
    #[serde(default)]
    checks: u64,
}

impl ChunkSummary {
    fn absorb(&mut self, other: ChunkSummary) {
        self.candidates += other.candidates;
        self.union_closed += other.union_closed;
        self.applicable += other.applicable;
        self.violations.extend(other.violations);
        self.failures.extend(other.failures);
        self.checks += other.checks;
        match (self.min_abundance, other.min_abundance) {
            (_, None) => {}
            (None, Some(_)) => {
                self.min_abundance = other.min_abundance;
                self.witnesses = other.witnesses;
                self.witness_count = other.witness_count;
            }
            (Some(mine), Some(theirs)) => {
                if theirs.less_than(mine) {
                    self.min_abundance = Some(theirs);
                    self.witnesses = other.witnesses;
                    self.witness_count = other.witness_count;
                } else if !mine.less_than(theirs) {
                    self.witnesses.extend(other.witnesses);
                    self.witnesses.truncate(WITNESS_CAP);
                    self.witness_count += other.witness_count;
                }
            }
        }
    }
}

/// A family found by the scan, with its code.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyRecord {
    pub code: u64,
    pub family: SetFamily,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExhaustiveReport {
    pub universe_size: u32,
    pub candidates: u64,
    /// Nonempty union-closed families (the empty candidate is not counted).
    pub union_closed_count: u64,
    /// Union-closed families with a nonempty member.
    pub applicable_count: u64,
    pub violations: Vec<FamilyRecord>,
    pub min_abundance: Option<Abundance>,
    pub extremal_witnesses: Vec<FamilyRecord>,
    pub extremal_count: u64,
    /// Visitor calls that ran a check (passed or failed).
    pub visitor_checks: u64,
    pub visitor_failures: Vec<(u64, String)>,
}

impl ExhaustiveReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Member `m` of the family belongs iff bit `m` of the code is set.
pub fn code_to_family(n: u32, code: u64) -> Result<SetFamily> {
    let members: Vec<u64> = (0..1u64 << n).filter(|&m| code >> m & 1 == 1).collect();
    SetFamily::new(Universe::numbered(n as usize)?, members)
}

/// Pairwise-union test that stops at the first violating pair `(i, j)`,
/// `i < j`, in lexicographic order.
pub fn code_is_union_closed(code: u64) -> bool {
    let mut rest_i = code;
    while rest_i != 0 {
        let i = rest_i.trailing_zeros();
        rest_i &= rest_i - 1;
        let mut rest_j = rest_i;
        while rest_j != 0 {
            let j = rest_j.trailing_zeros();
            rest_j &= rest_j - 1;
            if code >> (i | j) & 1 == 0 {
                return false;
            }
        }
    }
    true
}

/// For each element `e`, the set of member bitmasks containing `e`, as a
/// mask over member positions.
fn element_columns(n: u32) -> Vec<u64> {
    (0..n).map(|e| (0..1u64 << n).filter(|m| m >> e & 1 == 1).fold(0u64, |acc, m| acc | 1 << m)).collect()
}

fn candidate_count(n: u32) -> u64 {
    1u64 << (1u32 << n)
}

fn chunk_size(n: u32) -> u64 {
    candidate_count(n).min(if n <= 4 { 1 << 12 } else { 1 << 22 })
}

fn scan_chunk<V>(range: std::ops::Range<u64>, columns: &[u64], visitor: &V) -> ChunkSummary
where
    V: Fn(u64) -> Visit + Sync,
{
    let mut s = ChunkSummary { candidates: range.end - range.start, ..Default::default() };
    for code in range {
        if code == 0 || !code_is_union_closed(code) {
            continue;
        }
        s.union_closed += 1;
        match visitor(code) {
            Visit::Skip => {}
            Visit::Pass => s.checks += 1,
            Visit::Fail(msg) => {
                s.checks += 1;
                s.failures.push((code, msg));
            }
        }
        if code & !1 == 0 {
            continue;
        }
        s.applicable += 1;
        let size = u64::from(code.count_ones());
        let best = columns.iter().map(|&c| u64::from((code & c).count_ones())).max().unwrap_or(0);
        if best * 2 < size {
            s.violations.push(code);
        }
        let here = Abundance { count: best, size };
        match s.min_abundance {
            Some(m) if m.less_than(here) => {}
            Some(m) if !here.less_than(m) => {
                s.witness_count += 1;
                if s.witnesses.len() < WITNESS_CAP {
                    s.witnesses.push(code);
                }
            }
            _ => {
                s.min_abundance = Some(here);
                s.witnesses = vec![code];
                s.witness_count = 1;
            }
        }
    }
    s
}

struct Checkpoint {
    done: std::collections::BTreeMap<u64, ChunkSummary>,
    log: Mutex<(File, File)>,
}

fn results_path(path: &Path) -> PathBuf {
    let mut p = path.as_os_str().to_owned();
    p.push(".results");
    PathBuf::from(p)
}

impl Checkpoint {
    /// Reads `chunk <index> done` lines and the per-chunk summaries stored
    /// next to the checkpoint.
    fn open(path: &Path) -> Result<Self> {
        let io = |e: std::io::Error| Error::Checkpoint(format!("{}: {e}", path.display()));
        let mut done_ids = BTreeSet::new();
        if path.exists() {
            for line in BufReader::new(File::open(path).map_err(io)?).lines() {
                let line = line.map_err(io)?;
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let index = line
                    .strip_prefix("chunk ")
                    .and_then(|rest| rest.strip_suffix(" done"))
                    .and_then(|idx| idx.parse::<u64>().ok())
                    .ok_or_else(|| Error::Checkpoint(format!("malformed line {line:?}")))?;
                done_ids.insert(index);
            }
        }
        let sidecar = results_path(path);
        let mut done = std::collections::BTreeMap::new();
        if sidecar.exists() {
            for line in BufReader::new(File::open(&sidecar).map_err(io)?).lines() {
                let line = line.map_err(io)?;
                if line.trim().is_empty() {
                    continue;
                }
                let (index, summary): (u64, ChunkSummary) =
                    serde_json::from_str(&line).map_err(|e| Error::Checkpoint(e.to_string()))?;
                if done_ids.contains(&index) {
                    done.insert(index, summary);
                }
            }
        }
        if let Some(missing) = done_ids.iter().find(|i| !done.contains_key(i)) {
            return Err(Error::Checkpoint(format!("chunk {missing} is marked done but has no stored result")));
        }
        let append = |p: &Path| OpenOptions::new().create(true).append(true).open(p).map_err(io);
        Ok(Checkpoint { done, log: Mutex::new((append(path)?, append(&sidecar)?)) })
    }

    fn record(&self, index: u64, summary: &ChunkSummary) -> Result<()> {
        let mut files = self.log.lock().expect("checkpoint lock poisoned");
        let line = serde_json::to_string(&(index, summary)).expect("summary serializes");
        let io = |e: std::io::Error| Error::Checkpoint(e.to_string());
        writeln!(files.1, "{line}").map_err(io)?;
        files.1.flush().map_err(io)?;
        writeln!(files.0, "chunk {index} done").map_err(io)?;
        files.0.flush().map_err(io)
    }
}

/// What a scan visitor did with one family code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Visit {
    Skip,
    Pass,
    Fail(String),
}

/// Scans every family over `{1..n}`, calling `visitor` on each nonempty
/// union-closed one. Checks and failures are kept per chunk, so they survive
/// a checkpoint resume.
pub fn enumerate_union_closed<V>(config: &EnumerationConfig, visitor: V) -> Result<ExhaustiveReport>
where
    V: Fn(u64) -> Visit + Sync,
{
    let n = config.n;
    if n == 0 || n > 5 || (n == 5 && !config.allow_n5) {
        return Err(Error::UnsupportedUniverse(n));
    }
    if config.workers == 0 {
        return Err(Error::InvalidArgument("worker count must be at least 1".into()));
    }
    let total = candidate_count(n);
    let size = chunk_size(n);
    let chunks = total / size;
    let columns = element_columns(n);
    let checkpoint = config.checkpoint.as_deref().map(Checkpoint::open).transpose()?;
    let finished = AtomicU64::new(checkpoint.as_ref().map_or(0, |c| c.done.len() as u64));

    let run = |index: u64| -> Result<ChunkSummary> {
        if let Some(done) = checkpoint.as_ref().and_then(|c| c.done.get(&index)) {
            return Ok(done.clone());
        }
        let summary = scan_chunk(index * size..(index + 1) * size, &columns, &visitor);
        if let Some(c) = &checkpoint {
            c.record(index, &summary)?;
        }
        let k = finished.fetch_add(1, Ordering::Relaxed) + 1;
        if config.progress && (k % 64 == 0 || k == chunks) {
            eprintln!("enumerate n={n}: {k}/{chunks} chunks");
        }
        Ok(summary)
    };

    let summaries: Vec<ChunkSummary> = if config.workers == 1 {
        (0..chunks).map(run).collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        pool.install(|| (0..chunks).into_par_iter().map(run).collect::<Result<_>>())?
    };

    let mut acc = ChunkSummary::default();
    for s in summaries {
        acc.absorb(s);
    }
    let record = |code: u64| code_to_family(n, code).map(|family| FamilyRecord { code, family });
    Ok(ExhaustiveReport {
        universe_size: n,
        candidates: acc.candidates,
        union_closed_count: acc.union_closed,
        applicable_count: acc.applicable,
        violations: acc.violations.iter().map(|&c| record(c)).collect::<Result<_>>()?,
        min_abundance: acc.min_abundance,
        extremal_witnesses: acc.witnesses.iter().map(|&c| record(c)).collect::<Result<_>>()?,
        extremal_count: acc.witness_count,
        visitor_checks: acc.checks,
        visitor_failures: acc.failures,
    })
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Deterministic 1-in-64 sample of family codes.
pub fn in_transport_sample(code: u64) -> bool {
    splitmix64(code).is_multiple_of(64)
}

/// Checks that abundance survives the relabeling into numbers: same
/// verdict, and each element count equals the count of the matching prime.
pub fn check_transport(family: &SetFamily) -> Result<Option<String>> {
    let elements = family.abundant_elements()?;
    let numbers = family_to_numset(family)?;
    let divisors = numbers.abundant_divisors()?;
    if elements.verdict != divisors.verdict {
        return Ok(Some(format!("verdict {:?} became {:?}", elements.verdict, divisors.verdict)));
    }
    let counts = family.element_counts();
    for (i, &count) in counts.iter().enumerate() {
        let prime = crate::arith::PrimePower { index: crate::arith::PrimeIndex::new(i + 1)?, exponent: 1 };
        let moved = numbers.count_divisible(&prime.to_vector());
        if moved != count {
            return Ok(Some(format!("element {} in {count} members but {prime} divides {moved}", i + 1)));
        }
    }
    Ok(None)
}

/// Full scan with the conjecture check, plus transport checks through
/// `family_to_numset` on a deterministic sample of families.
pub fn verify_exhaustive(config: &EnumerationConfig) -> Result<ExhaustiveReport> {
    let n = config.n;
    enumerate_union_closed(config, |code| {
        if !in_transport_sample(code) {
            return Visit::Skip;
        }
        match code_to_family(n, code).and_then(|f| check_transport(&f)) {
            Ok(None) => Visit::Pass,
            Ok(Some(msg)) => Visit::Fail(msg),
            Err(e) => Visit::Fail(e.to_string()),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endofunction_validation() {
        assert!(EndoFunction::new(vec![1, 3]).is_err());
        assert!(EndoFunction::new(vec![0]).is_err());
        let s = EndoFunction::from_cycles(5, "(1 2)(3 4 5)").unwrap();
        assert_eq!(s.image(), [2, 1, 4, 5, 3]);
        assert_eq!(EndoFunction::from_cycles(3, "").unwrap().image(), [1, 2, 3]);
        assert!(EndoFunction::from_cycles(3, "(1 2)(2 3)").is_err());
        assert!(EndoFunction::from_cycles(3, "(1 4)").is_err());
        assert!(EndoFunction::from_cycles(3, "1 2").is_err());
    }

    #[test]
    fn periods_examples() {
        let s = EndoFunction::from_cycles(5, "(1 2)(3 4 5)").unwrap();
        let p = periods_from_endofunction(&s, &[1, 3]).unwrap();
        assert_eq!(p.to_u64s(), vec![2, 3, 6]);
        let id = EndoFunction::new(vec![1, 2, 3]).unwrap();
        assert_eq!(periods_from_endofunction(&id, &[1, 2, 3]).unwrap().to_u64s(), vec![1]);
        let tail = EndoFunction::new(vec![2, 2]).unwrap();
        assert_eq!(periods_from_endofunction(&tail, &[1]), Err(Error::NotOnCycle(1)));
    }

    #[test]
    fn union_closed_code_matches_family_check() {
        for n in 1..=3 {
            for code in 1..candidate_count(n) {
                let f = code_to_family(n, code).unwrap();
                assert_eq!(code_is_union_closed(code), f.is_union_closed().unwrap(), "n={n} code={code}");
            }
        }
    }

    /// Counts nonempty union-closed families by building each one.
    fn brute_union_closed_count(n: u32) -> (u64, u64) {
        let mut closed = 0;
        let mut applicable = 0;
        for code in 1..candidate_count(n) {
            let f = code_to_family(n, code).unwrap();
            if f.is_union_closed().unwrap() {
                closed += 1;
                if f.union_mask() != 0 {
                    applicable += 1;
                    assert!(f.abundant_elements().unwrap().holds());
                }
            }
        }
        (closed, applicable)
    }

    #[test]
    fn small_scans() {
        let r = enumerate_union_closed(&EnumerationConfig::new(1), |_| Visit::Skip).unwrap();
        assert_eq!(r.candidates, 4);
        assert_eq!((r.union_closed_count, r.applicable_count), (3, 2));
        assert!(r.holds());

        for n in 2..=3 {
            let r = verify_exhaustive(&EnumerationConfig::new(n)).unwrap();
            assert_eq!(r.candidates, candidate_count(n));
            assert_eq!((r.union_closed_count, r.applicable_count), brute_union_closed_count(n));
            assert!(r.holds());
            assert!(r.visitor_failures.is_empty());
            assert!(r.min_abundance.is_some());
            assert!(!r.extremal_witnesses.is_empty());
        }
    }

    #[test]
    fn unsupported_sizes() {
        assert!(matches!(
            enumerate_union_closed(&EnumerationConfig::new(0), |_| Visit::Skip),
            Err(Error::UnsupportedUniverse(0))
        ));
        assert!(matches!(verify_exhaustive(&EnumerationConfig::new(5)), Err(Error::UnsupportedUniverse(5))));
        assert!(matches!(verify_exhaustive(&EnumerationConfig::new(6)), Err(Error::UnsupportedUniverse(6))));
        assert!(verify_exhaustive(&EnumerationConfig::new(3).workers(0)).is_err());
    }

    #[test]
    fn checkpoint_resume_gives_same_report() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ckpt");
        let plain = serde_json::to_string(&verify_exhaustive(&EnumerationConfig::new(4)).unwrap()).unwrap();

        let mut cfg = EnumerationConfig::new(4).workers(2);
        cfg.checkpoint = Some(path.clone());
        let first = serde_json::to_string(&verify_exhaustive(&cfg).unwrap()).unwrap();
        assert_eq!(first, plain);
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 16);
        assert!(text.lines().all(|l| l.starts_with("chunk ") && l.ends_with(" done")));

        // Drop the last half of both logs and resume.
        let keep = |p: &Path| {
            let body = std::fs::read_to_string(p).unwrap();
            let kept: Vec<&str> = body.lines().take(8).collect();
            std::fs::write(p, kept.join("\n") + "\n").unwrap();
        };
        keep(&path);
        keep(&results_path(&path));
        let resumed = verify_exhaustive(&cfg).unwrap();
        assert!(resumed.visitor_checks > 0);
        assert_eq!(serde_json::to_string(&resumed).unwrap(), plain);
    }

    #[test]
    fn checkpoint_without_results_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ckpt");
        std::fs::write(&path, "chunk 3 done\n").unwrap();
        let mut cfg = EnumerationConfig::new(4);
        cfg.checkpoint = Some(path.clone());
        assert!(matches!(enumerate_union_closed(&cfg, |_| Visit::Skip), Err(Error::Checkpoint(_))));
        std::fs::write(&path, "chunk three\n").unwrap();
        assert!(matches!(enumerate_union_closed(&cfg, |_| Visit::Skip), Err(Error::Checkpoint(_))));
    }

    #[test]
    fn generators_are_deterministic() {
        let b = NumsetBounds { seeds: 5, max_prime_index: 3, max_exponent: 2 };
        let a = random_closed_numset(7, b, ClosureKind::Lcm).unwrap();
        assert_eq!(a, random_closed_numset(7, b, ClosureKind::Lcm).unwrap());
        assert!(a.is_lcm_closed().unwrap());
        let bound = crate::arith::factorize(900).unwrap();
        assert!(a.iter().all(|x| x.divides(&bound)));
        let g = random_closed_numset(7, b, ClosureKind::Gcd).unwrap();
        assert!(g.is_gcd_closed().unwrap());

        let f = random_union_closed_family(3, 6, 4).unwrap();
        assert_eq!(f, random_union_closed_family(3, 6, 4).unwrap());
        assert!(f.is_union_closed().unwrap());

        let p = random_permutation(11, 12);
        let mut sorted = p.image().to_vec();
        sorted.sort_unstable();
        assert_eq!(sorted, (1..=12).collect::<Vec<_>>());
        assert_eq!(random_endofunction(5, 9), random_endofunction(5, 9));
    }
}
