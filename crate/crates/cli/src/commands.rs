//! One function per subcommand. Each returns the JSON report and whether it
//! records a conjecture violation.

use lcmclosed::bridge::{convert_family, convert_numset};
use lcmclosed::numset::{period_set, ShiftedWitness};
use lcmclosed::search::{random_closed_numset, random_permutation, ClosureKind, NumsetBounds};
use lcmclosed::{
    known_cases_family, known_cases_numset, verify_exhaustive, Direction, EndoFunction, EnumerationConfig, NumberSet,
    Result, SetFamily, Verdict,
};
use serde_json::{json, Value};

use crate::{ClosureOp, Gen, Kind, NumsetKind};

pub struct Outcome {
    pub report: Value,
    pub violated: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, violated: false }
    }
}

fn decimals(n: &NumberSet) -> Value {
    json!(n.to_decimals())
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn witness_value(w: &ShiftedWitness) -> Value {
    json!({
        "direction": w.direction,
        "prime_power": w.prime_power,
        "count": w.count,
        "shifted": w.shifted,
        "shifted_count": w.shifted_count,
        "verified": w.verified,
    })
}

pub fn check(kind: Kind, text: &str) -> Result<Outcome> {
    match kind {
        Kind::Numset => check_numset(&NumberSet::from_json(text)?),
        Kind::Family => check_family(&SetFamily::from_json(text)?),
    }
}

fn check_numset(n: &NumberSet) -> Result<Outcome> {
    let lcm_closed = n.is_lcm_closed()?;
    let gcd_closed = n.is_gcd_closed()?;
    let mut violations = Vec::new();

    let abundance = if lcm_closed { Some(n.abundant_divisors()?) } else { None };
    if abundance.as_ref().is_some_and(|r| r.verdict == Verdict::Violated) {
        violations.push(json!({ "claim": "lcm-closed set has an abundant prime", "members": decimals(n) }));
    }
    let abundant_prime = abundance
        .as_ref()
        .and_then(|r| r.witness.map(|p| json!({ "prime": p, "count": r.count(p), "total": r.total })));

    let nonabundance = if gcd_closed && n.len() >= 2 { Some(n.nonabundant_prime_powers()?) } else { None };
    if nonabundance.as_ref().is_some_and(|r| !r.has_nonabundant) {
        violations.push(json!({ "claim": "gcd-closed set has a non-abundant prime power", "members": decimals(n) }));
    }

    let violated = !violations.is_empty();
    Ok(Outcome {
        report: json!({
            "kind": "numset",
            "members": decimals(n),
            "size": n.len(),
            "lcm": n.lcm_all()?.to_decimal(),
            "gcd": n.gcd_all()?.to_decimal(),
            "lcm_closed": lcm_closed,
            "gcd_closed": gcd_closed,
            "lcm_gap": n.require_lcm_closed().err().map(|e| e.to_string()),
            "gcd_gap": n.require_gcd_closed().err().map(|e| e.to_string()),
            "abundance": abundance,
            "abundant_prime": abundant_prime,
            "nonabundance": nonabundance,
            "violations": violations,
        }),
        violated,
    })
}

fn check_family(s: &SetFamily) -> Result<Outcome> {
    let union_closed = s.is_union_closed()?;
    let intersection_closed = s.is_intersection_closed()?;
    let mut violations = Vec::new();

    let abundance = if union_closed { Some(s.abundant_elements()?) } else { None };
    if abundance.as_ref().is_some_and(|r| r.verdict == Verdict::Violated) {
        violations.push(json!({ "claim": "union-closed family has an abundant element", "family": s }));
    }
    let rare = if intersection_closed && s.len() >= 2 { Some(s.rare_elements()?) } else { None };
    if rare.as_ref().is_some_and(Vec::is_empty) {
        violations.push(json!({ "claim": "intersection-closed family has a rare element", "family": s }));
    }

    let violated = !violations.is_empty();
    Ok(Outcome {
        report: json!({
            "kind": "family",
            "family": s,
            "size": s.len(),
            "universe_size": s.universe().len(),
            "union_closed": union_closed,
            "intersection_closed": intersection_closed,
            "union_gap": s.require_union_closed().err().map(|e| e.to_string()),
            "separating": s.is_separating()?,
            "abundance": abundance,
            "rare_elements": rare,
            "violations": violations,
        }),
        violated,
    })
}

pub fn closure(op: ClosureOp, text: &str) -> Result<Outcome> {
    let report = match op {
        ClosureOp::Lcm | ClosureOp::Gcd => {
            let n = NumberSet::from_json(text)?;
            let c = if op == ClosureOp::Lcm { n.lcm_closure()? } else { n.gcd_closure()? };
            let added: NumberSet = c.iter().filter(|x| !n.contains(x)).cloned().collect();
            json!({ "op": op_name(op), "input_size": n.len(), "size": c.len(), "closure": decimals(&c), "added": decimals(&added) })
        }
        ClosureOp::Union | ClosureOp::Intersection => {
            let s = SetFamily::from_json(text)?;
            let c = if op == ClosureOp::Union { s.union_closure()? } else { s.intersection_closure()? };
            let added: Vec<String> = c.members().filter(|&m| !s.contains(m)).map(|m| c.render_member(m)).collect();
            json!({ "op": op_name(op), "input_size": s.len(), "size": c.len(), "closure": c, "added": added })
        }
    };
    Ok(Outcome::ok(report))
}

fn op_name(op: ClosureOp) -> &'static str {
    match op {
        ClosureOp::Lcm => "lcm",
        ClosureOp::Gcd => "gcd",
        ClosureOp::Union => "union",
        ClosureOp::Intersection => "intersection",
    }
}

pub fn abundance(kind: Kind, text: &str, divisor_limit: Option<usize>) -> Result<Outcome> {
    match kind {
        Kind::Numset => {
            let n = NumberSet::from_json(text)?;
            n.require_lcm_closed()?;
            let r = n.abundant_divisors()?;
            let general = divisor_limit.map(|limit| n.abundant_general_divisors(limit)).transpose()?;
            let violated = r.verdict == Verdict::Violated;
            Ok(Outcome {
                report: json!({ "members": decimals(&n), "abundance": r, "all_divisors": general }),
                violated,
            })
        }
        Kind::Family => {
            let s = SetFamily::from_json(text)?;
            s.require_union_closed()?;
            let r = s.abundant_elements()?;
            let violated = r.verdict == Verdict::Violated;
            Ok(Outcome { report: json!({ "family": s, "abundance": r }), violated })
        }
    }
}

pub fn dual(kind: Kind, text: &str) -> Result<Outcome> {
    let report = match kind {
        Kind::Numset => {
            let n = NumberSet::from_json(text)?;
            let d = n.dual()?;
            let dd = d.dual()?;
            let (lcm_closed, gcd_closed) = (n.is_lcm_closed()?, n.is_gcd_closed()?);
            let witnesses = if n.len() < 2 {
                Vec::new()
            } else if gcd_closed {
                n.shifted_witnesses(Direction::GcdToLcm)?
            } else if lcm_closed {
                n.shifted_witnesses(Direction::LcmToGcd)?
            } else {
                Vec::new()
            };
            json!({
                "members": decimals(&n),
                "lcm": n.lcm_all()?.to_decimal(),
                "gcd": n.gcd_all()?.to_decimal(),
                "normalized": decimals(&n.normalize()?),
                "dual": decimals(&d),
                "double_dual": decimals(&dd),
                "involution": dd == n,
                "lcm_closed": lcm_closed,
                "gcd_closed": gcd_closed,
                "dual_lcm_closed": d.is_lcm_closed()?,
                "dual_gcd_closed": d.is_gcd_closed()?,
                "shifted_witnesses": witnesses.iter().map(witness_value).collect::<Vec<_>>(),
            })
        }
        Kind::Family => {
            let s = SetFamily::from_json(text)?;
            let d = s.complement_dual()?;
            json!({
                "family": s,
                "dual": d,
                "union_closed": s.is_union_closed()?,
                "intersection_closed": s.is_intersection_closed()?,
                "dual_union_closed": d.is_union_closed()?,
                "dual_intersection_closed": d.is_intersection_closed()?,
                "dual_rare_elements": d.rare_elements()?,
            })
        }
    };
    Ok(Outcome::ok(report))
}

pub fn convert(kind: Kind, text: &str) -> Result<Outcome> {
    let report = match kind {
        Kind::Family => {
            let c = convert_family(&SetFamily::from_json(text)?)?;
            json!({ "family": c.family, "numset": decimals(&c.numset), "transport": c.transport })
        }
        Kind::Numset => {
            let c = convert_numset(&NumberSet::from_json(text)?)?;
            json!({ "numset": decimals(&c.numset), "family": c.family, "transport": c.transport })
        }
    };
    Ok(Outcome::ok(report))
}

pub fn known_cases(kind: Kind, text: &str) -> Result<Outcome> {
    let report = match kind {
        Kind::Family => known_cases_family(&SetFamily::from_json(text)?)?,
        Kind::Numset => known_cases_numset(&NumberSet::from_json(text)?)?,
    };
    Ok(Outcome::ok(to_value(&report)))
}

pub fn enumerate(config: &EnumerationConfig) -> Result<Outcome> {
    let report = verify_exhaustive(config)?;
    let violated = !report.holds();
    Ok(Outcome { report: to_value(&report), violated })
}

pub fn generate(gen: &Gen) -> Result<Outcome> {
    let report = match gen {
        Gen::ClosedNumset { seed, kind, seeds, max_prime_index, max_exponent } => {
            let bounds = NumsetBounds { seeds: *seeds, max_prime_index: *max_prime_index, max_exponent: *max_exponent };
            let closure = match kind {
                NumsetKind::Lcm => ClosureKind::Lcm,
                NumsetKind::Gcd => ClosureKind::Gcd,
            };
            let n = random_closed_numset(*seed, bounds, closure)?;
            json!({ "seed": seed, "kind": closure, "bounds": bounds, "size": n.len(), "members": decimals(&n) })
        }
        Gen::Periods { seed, size, cycles, subset } => {
            let sigma = match cycles {
                Some(notation) => EndoFunction::from_cycles(*size, notation)?,
                None => random_permutation(*seed, *size),
            };
            let subset = subset.clone().unwrap_or_else(|| sigma.cycle_points());
            let periods = period_set(&sigma, &subset)?;
            json!({
                "image": sigma.image(),
                "subset": subset,
                "periods": decimals(&periods),
                "maximum": periods.lcm_all()?.to_decimal(),
                "lcm_closed": periods.is_lcm_closed()?,
            })
        }
    };
    Ok(Outcome::ok(report))
}
