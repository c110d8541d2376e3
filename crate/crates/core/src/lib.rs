//! Verification toolkit for LCM-closed sets of positive integers and
//! union-closed set families.
//!
//! An LCM-closed set `N` has an abundant prime (one dividing at least half of
//! the members) exactly when the union-closed family `f(N)` of its prime-power
//! sets has an abundant element, so every check here comes in a number form
//! and a family form, with converters between the two.

pub mod arith;
pub mod bridge;
pub mod cases;
pub mod error;
pub mod family;
pub mod numset;
pub mod search;

use serde::Serialize;

pub use arith::{factorize, nth_prime, ExponentVector, PrimeIndex, PrimePower};
pub use bridge::{f_map, family_to_numset, g_map, numset_to_family, PrimePowerSet};
pub use cases::{known_cases_family, known_cases_numset, CaseReport};
pub use error::{Error, Result};
pub use family::{MemberSet, SetFamily, Universe};
pub use numset::{Direction, NumberSet};
pub use search::{verify_exhaustive, EndoFunction, EnumerationConfig, ExhaustiveReport};

/// Outcome of a conjecture check on one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    /// No member other than 1 (or the empty set).
    NotApplicable,
}
