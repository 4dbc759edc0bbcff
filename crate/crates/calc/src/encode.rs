//! JSON encodings of the library types. Half-integers become bare integers
//! or `"p/2"` strings, never floats.

use arthur_core::exms::{AtobeSymbol, ExtMultiSegment, LanglandsProgram, ValidationReport};
use arthur_core::gl::{GLTerm, Ladder};
use arthur_core::induction::{IrrCheck, IrrReport, IrrVerdict};
use arthur_core::{ArthurParam, EssSpeh, FormalSum, HalfInt, Segment, UEssMatrix};
use serde_json::{json, Value};

pub fn half(h: HalfInt) -> Value {
    match h.to_int() {
        Some(n) => json!(n),
        None => json!(format!("{}/2", h.twice())),
    }
}

/// Inverse of [`half`].
pub fn parse_half(v: &Value) -> Option<HalfInt> {
    match v {
        Value::Number(n) => n.as_i64().map(HalfInt::from_int),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// An array of `{rho, A, B, mu}` records, parts in label order.
pub fn exms(s: &ExtMultiSegment) -> Value {
    let mut out = Vec::new();
    for (rho, part) in &s.parts {
        for seg in part {
            out.push(json!({"rho": rho.name(), "A": half(seg.big_a), "B": half(seg.big_b), "mu": seg.mu}));
        }
    }
    Value::Array(out)
}

pub fn validation(r: &ValidationReport) -> Value {
    json!({
        "admissibleOrder": r.admissible_order,
        "nonNegative": r.non_negative,
        "sumNonNegative": r.sum_non_negative,
        "goodParity": r.good_parity,
        "signCondition": r.sign_condition,
        "strictMu": r.strict_mu,
        "veryAdmissibleWhereNeeded": r.very_admissible_where_needed,
        "isExtMultiSegment": r.is_ext_multi_segment(),
        "isAdmissible": r.is_admissible(),
    })
}

pub fn atobe(e: &AtobeSymbol) -> Value {
    let mut out = Vec::new();
    for (rho, part) in &e.parts {
        for x in part {
            out.push(json!({"rho": rho.name(), "A": half(x.big_a), "B": half(x.big_b), "l": x.l, "eta": x.eta}));
        }
    }
    Value::Array(out)
}

pub fn psi(p: &ArthurParam) -> Value {
    Value::Array(p.sorted_summands().iter().map(|s| json!({"rho": s.rho.name(), "a": s.a, "b": s.b})).collect())
}

pub fn speh(u: &EssSpeh) -> Value {
    json!({"rho": u.rho().name(), "a": u.a(), "b": u.b(), "s": half(u.s())})
}

pub fn matrix(m: &UEssMatrix) -> Value {
    json!([[half(m.top_left), half(m.top_right)], [half(m.bottom_left), half(m.bottom_right)]])
}

pub fn segment(d: &Segment) -> Value {
    json!({"rho": d.rho().name(), "x": half(d.x()), "y": half(d.y())})
}

pub fn ladder(l: &Ladder) -> Value {
    let segs: Vec<Value> = l.segments().iter().map(|&(x, y)| json!([half(x), half(y)])).collect();
    json!({"rho": l.rho().name(), "segments": segs})
}

/// `[{coeff, left: [ladders], right: ladder}]`.
pub fn gl_terms(sum: &FormalSum<GLTerm>) -> Value {
    Value::Array(
        sum.iter()
            .map(|(t, c)| json!({"coeff": c, "left": t.left.iter().map(ladder).collect::<Vec<_>>(), "right": ladder(&t.right)}))
            .collect(),
    )
}

/// `[{coeff, ladder}]`.
pub fn ladder_sum(sum: &FormalSum<Ladder>) -> Value {
    Value::Array(sum.iter().map(|(l, c)| json!({"coeff": c, "ladder": ladder(l)})).collect())
}

fn verdict_fields(v: &IrrVerdict) -> (&'static str, Option<&'static str>) {
    match v {
        IrrVerdict::Irreducible => ("irreducible", None),
        IrrVerdict::Reducible => ("reducible", None),
        IrrVerdict::Unknown(why) => ("unknown", Some(why)),
    }
}

fn verdict(v: &IrrVerdict) -> Value {
    let (name, reason) = verdict_fields(v);
    match reason {
        Some(r) => json!({"verdict": name, "reason": r}),
        None => json!({"verdict": name}),
    }
}

/// `{verdict, conditions: [...]}`.
pub fn irr_report(r: &IrrReport) -> Value {
    let conditions: Vec<Value> = r
        .conditions
        .iter()
        .map(|c| {
            let mut v = verdict(&c.verdict);
            let (check, factors) = match c.check {
                IrrCheck::Product(i, j) => ("product", vec![i, j]),
                IrrCheck::ProductDual(i, j) => ("productDual", vec![i, j]),
                IrrCheck::Induced(i) => ("induced", vec![i]),
            };
            v["check"] = json!(check);
            v["factors"] = json!(factors);
            v["asserted"] = json!(c.asserted);
            v
        })
        .collect();
    let mut out = verdict(&r.verdict);
    out["conditions"] = Value::Array(conditions);
    out
}

pub fn langlands(p: &LanglandsProgram) -> Value {
    let factors: Vec<Value> = p.factors.iter().map(|(rho, m)| json!({"rho": rho.name(), "matrix": matrix(m)})).collect();
    let tempered: Vec<Value> =
        p.tempered.iter().map(|t| json!({"rho": t.rho.name(), "dim": t.dim, "eps": t.eps})).collect();
    let shifts: serde_json::Map<String, Value> =
        p.shifts.iter().map(|(rho, ts)| (rho.name().to_string(), json!(ts))).collect();
    let steps: Vec<Value> = p
        .deriv_steps
        .iter()
        .map(|d| json!({"rho": d.rho.name(), "from": half(d.from), "to": half(d.to)}))
        .collect();
    json!({
        "factors": factors,
        "tempered": tempered,
        "shifts": shifts,
        "shifted": p.shifted.as_ref().map(exms),
        "derivSteps": steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_integers() {
        assert_eq!(half(HalfInt::from_int(-2)), json!(-2));
        assert_eq!(half(HalfInt::from_twice(-3)), json!("-3/2"));
        for t in -7..=7 {
            assert_eq!(parse_half(&half(HalfInt::from_twice(t))), Some(HalfInt::from_twice(t)));
        }
    }
}
