//! Checkers for five known sufficient conditions of the union-closed sets
//! conjecture, and their translations to LCM-closed sets.
//!
//! Both forms work on the reduced instance: elements shared by every member
//! (resp. the common divisor `gcd(N)`) are removed first, so the family
//! checker on `S` and the number checker on `g(S)` see the same universe.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{separating_within, SetFamily};
use crate::numset::NumberSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CaseCondition {
    pub id: u8,
    pub satisfied: bool,
}

/// Measured quantities and the five verdicts.
///
/// `universe_size` is `#(⋃S ∖ ⋂S)` for families and `σ_PPE(lcm(N)/gcd(N))`
/// for number sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub universe_size: usize,
    pub family_size: usize,
    /// Smallest reduced member with one or two elements (prime powers).
    pub small_member: Option<String>,
    pub three_times_size: u128,
    /// `2 * 2^universe_size`, absent when it does not fit in 128 bits.
    pub two_thirds_bound: Option<u128>,
    pub separating: bool,
    pub conditions: Vec<CaseCondition>,
    pub any_condition_met: bool,
}

impl CaseReport {
    fn assemble(universe_size: usize, family_size: usize, small_member: Option<String>, separating: bool) -> Self {
        let three_times_size = 3 * family_size as u128;
        let two_thirds_bound = u32::try_from(universe_size + 1).ok().and_then(|shift| 1u128.checked_shl(shift));
        let verdicts = [
            small_member.is_some(),
            universe_size <= 12,
            family_size <= 50,
            two_thirds_bound.is_some_and(|b| three_times_size >= b),
            family_size <= 2 * universe_size && separating,
        ];
        let conditions: Vec<CaseCondition> =
            verdicts.iter().enumerate().map(|(i, &satisfied)| CaseCondition { id: i as u8 + 1, satisfied }).collect();
        CaseReport {
            universe_size,
            family_size,
            small_member,
            three_times_size,
            two_thirds_bound,
            separating,
            any_condition_met: verdicts.iter().any(|&v| v),
            conditions,
        }
    }

    pub fn satisfied(&self, id: u8) -> bool {
        self.conditions.iter().any(|c| c.id == id && c.satisfied)
    }

    pub fn verdicts(&self) -> [bool; 5] {
        let mut out = [false; 5];
        for c in &self.conditions {
            out[c.id as usize - 1] = c.satisfied;
        }
        out
    }
}

pub fn known_cases_family(family: &SetFamily) -> Result<CaseReport> {
    family.require_union_closed()?;
    if family.union_mask() == 0 {
        return Err(Error::NoNonemptyMember);
    }
    let reduced = family.restrict(family.union_mask() & !family.intersection_mask())?;
    let small_member = reduced
        .members()
        .filter(|m| (1..=2).contains(&m.len()))
        .min_by_key(|m| (m.len(), m.0))
        .map(|m| reduced.render_member(m));
    let members = reduced.members().collect();
    let separating = separating_within(&members, reduced.union_mask());
    Ok(CaseReport::assemble(reduced.universe().len(), family.len(), small_member, separating))
}

pub fn known_cases_numset(n: &NumberSet) -> Result<CaseReport> {
    n.require_lcm_closed()?;
    if n.iter().all(|x| x.is_one()) {
        return Err(Error::AllOnes);
    }
    let reduced = n.normalize()?;
    let top = reduced.lcm_all()?;
    let universe_size = top.sigma_ppe() as usize;
    let small_member = reduced.sorted().into_iter().find(|x| (1..=2).contains(&x.sigma_ppe())).map(|x| x.to_decimal());
    let powers: Vec<_> = crate::bridge::f_map(&top).iter().map(|pp| pp.to_vector()).collect();
    let separating = powers.iter().enumerate().all(|(i, a)| {
        powers[i + 1..].iter().all(|b| {
            let a_without_b = reduced.iter().any(|x| a.divides(x) && !b.divides(x));
            let b_without_a = reduced.iter().any(|x| b.divides(x) && !a.divides(x));
            a_without_b && b_without_a
        })
    });
    Ok(CaseReport::assemble(universe_size, n.len(), small_member, separating))
}
