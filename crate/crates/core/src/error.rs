use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero is not a positive integer")]
    Zero,
    #[error("prime index {index} exceeds the sieve bound of {cap} primes")]
    SieveBound { index: usize, cap: usize },
    #[error("{value} has a prime factor beyond the sieve bound")]
    FactorBeyondSieve { value: String },
    #[error("exponent {exponent} exceeds the cap {cap}")]
    ExponentCap { exponent: u64, cap: u32 },
    #[error("prime index must be at least 1")]
    ZeroPrimeIndex,
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("{0} requires a nonempty input")]
    Empty(&'static str),
    #[error("{op} requires at least {min} members, got {got}")]
    TooFewMembers { op: &'static str, min: usize, got: usize },
    #[error("set is not LCM-closed: lcm({a}, {b}) = {lcm} is missing")]
    NotLcmClosed { a: String, b: String, lcm: String },
    #[error("set is not GCD-closed: gcd({a}, {b}) = {gcd} is missing")]
    NotGcdClosed { a: String, b: String, gcd: String },
    #[error("set has no member different from 1")]
    AllOnes,
    #[error("prime power {0} is not non-abundant in the set")]
    NotNonAbundant(String),
    #[error("prime power {0} is not abundant in the set")]
    NotAbundant(String),
    #[error("prime power {0} divides every member")]
    Universal(String),

    #[error("universe has {0} labels; at most 64 are supported")]
    UniverseTooLarge(usize),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("duplicate member {0}")]
    DuplicateMember(String),
    #[error("family is not union-closed: {a} ∪ {b} is missing")]
    NotUnionClosed { a: String, b: String },
    #[error("family has no nonempty member")]
    NoNonemptyMember,

    #[error("not a prime-power chain: {prime}^{missing} is missing below {prime}^{present}")]
    ChainViolation { prime: u64, missing: u32, present: u32 },

    #[error("element {0} does not lie on a cycle")]
    NotOnCycle(usize),
    #[error("endofunction image {image} at position {position} is outside 1..={size}")]
    ImageOutOfRange { position: usize, image: usize, size: usize },
    #[error("universe size {0} is not supported (1..=4, or 5 with the opt-in flag)")]
    UnsupportedUniverse(u32),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
