//! Langlands-type data of `pi(S)`: explicit when the segments of every part
//! are separated and non-negative, otherwise after shifting, together with the
//! (unevaluated) derivatives undoing the shift.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::half_int::HalfInt;
use crate::model::{CuspidalLabel, UEssMatrix};

use super::rep::in_srep;
use super::{deltas, ExtMultiSegment, ExtSegment};

/// `rho ⊠ S_dim` in the tempered parameter, with its character value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TemperedPiece {
    pub rho: CuspidalLabel,
    pub dim: i64,
    pub eps: i64,
}

/// The derivative `D_{rho|.|^from, ..., rho|.|^to}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivStep {
    pub rho: CuspidalLabel,
    pub from: HalfInt,
    pub to: HalfInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LanglandsProgram {
    /// Non-trivial `u_ess` factors of the standard module, in part order.
    pub factors: Vec<(CuspidalLabel, UEssMatrix)>,
    pub tempered: Vec<TemperedPiece>,
    /// Shifts `t_i` per part; all zero in the separated case.
    pub shifts: BTreeMap<CuspidalLabel, Vec<i64>>,
    /// The shifted parameter the factors describe, when a shift was needed.
    pub shifted: Option<ExtMultiSegment>,
    /// Derivatives to apply, in order of application. Empty in the separated case.
    pub deriv_steps: Vec<DerivStep>,
}

fn separated(part: &[ExtSegment]) -> bool {
    part.iter().all(|s| s.big_b >= 0) && part.windows(2).all(|w| w[1].big_b > w[0].big_a)
}

/// `t_1 = max(0, ceil(-B_1))`, `t_i = max(0, ceil(-B_i), A_{i-1} + t_{i-1} - B_i + 1)`.
fn shifts(part: &[ExtSegment]) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(part.len());
    for (i, s) in part.iter().enumerate() {
        let mut t = 0.max((-s.big_b).ceil());
        if i > 0 {
            let prev = &part[i - 1];
            t = t.max((prev.big_a + out[i - 1] - s.big_b + 1).ceil());
        }
        out.push(t);
    }
    out
}

fn sgn(x: i64) -> i64 {
    if x < 0 {
        -1
    } else {
        1
    }
}

fn separated_data(s: &ExtMultiSegment) -> (Vec<(CuspidalLabel, UEssMatrix)>, Vec<TemperedPiece>) {
    let mut factors = Vec::new();
    let mut tempered = Vec::new();
    for (rho, part) in &s.parts {
        for (seg, d) in part.iter().zip(deltas(part)) {
            let (a, b, m) = (seg.a(), seg.b(), seg.mu.abs());
            if b - m > 0 {
                factors.push((
                    rho.clone(),
                    UEssMatrix::new(
                        HalfInt::half(-(a + b)) + 1,
                        HalfInt::half(a - b),
                        HalfInt::half(-(a + m)),
                        HalfInt::half(a - m) - 1,
                    ),
                ));
            }
            let sign = sgn(seg.mu * d);
            for t in 0..m {
                let eps = if t % 2 == 0 { sign } else { -sign };
                tempered.push(TemperedPiece { rho: rho.clone(), dim: a - m + 2 * t + 1, eps });
            }
        }
    }
    (factors, tempered)
}

/// The explicit description of `pi(S)` for `S` in `Rep`.
pub fn langlands_first_case(s: &ExtMultiSegment) -> Result<LanglandsProgram> {
    if !in_srep(s)? {
        return Err(Error::NotInRep);
    }
    let mut all_shifts = BTreeMap::new();
    if s.parts.values().all(|p| separated(p)) {
        for (rho, part) in &s.parts {
            all_shifts.insert(rho.clone(), alloc::vec![0; part.len()]);
        }
        let (factors, tempered) = separated_data(s);
        return Ok(LanglandsProgram { factors, tempered, shifts: all_shifts, shifted: None, deriv_steps: Vec::new() });
    }
    let mut shifted = ExtMultiSegment::new(s.group);
    let mut deriv_steps = Vec::new();
    for (rho, part) in &s.parts {
        let ts = shifts(part);
        shifted.set_part(rho.clone(), part.iter().zip(&ts).map(|(seg, &t)| seg.shifted(t)).collect());
        // D_{rho,1} o ... o D_{rho,n}: the last segment is undone first, and
        // within D_{rho,i} the largest shift first.
        for (seg, &t) in part.iter().zip(&ts).rev() {
            for k in (1..=t).rev() {
                deriv_steps.push(DerivStep { rho: rho.clone(), from: seg.big_b + k, to: seg.big_a + k });
            }
        }
        all_shifts.insert(rho.clone(), ts);
    }
    let (factors, tempered) = separated_data(&shifted);
    Ok(LanglandsProgram { factors, tempered, shifts: all_shifts, shifted: Some(shifted), deriv_steps })
}

#[cfg(test)]
mod tests {
    use super::super::test_util::*;
    use super::*;
    use crate::model::GroupKind;
    use alloc::vec;

    #[test]
    fn tempered_case() {
        let g = GroupKind::Symplectic;
        let s = ms(g, vec![ei(0, 0, 1), ei(2, 2, -1)]);
        // Sign condition: 0 + (-1) + (-1)*0 is odd; flip to a valid one.
        assert!(!s.validate().sign_condition);
        let s = ms(g, vec![ei(0, 0, -1), ei(2, 2, -1)]);
        let p = langlands_first_case(&s).unwrap();
        assert!(p.factors.is_empty() && p.deriv_steps.is_empty());
        let dims: Vec<(i64, i64)> = p.tempered.iter().map(|t| (t.dim, t.eps)).collect();
        assert_eq!(dims, vec![(1, -1), (5, -1)]);
    }

    #[test]
    fn single_segment() {
        let g = GroupKind::Symplectic;
        // a = 2, b = 2, mu = 0: one factor with l = 1 row.
        let s = ms(g, vec![ei(1, 0, 0)]);
        let p = langlands_first_case(&s).unwrap();
        let h = HalfInt::from_int;
        assert_eq!(p.factors, vec![(rho(), UEssMatrix::new(h(-1), h(0), h(-1), h(0)))]);
        assert!(p.tempered.is_empty());
    }

    #[test]
    fn shifted_case() {
        let g = GroupKind::Symplectic;
        let s = ms(g, vec![ei(1, 1, 1), ei(2, 2, 1)]);
        let p = langlands_first_case(&s).unwrap();
        assert_eq!(p.shifts[&rho()], vec![0, 0]);
        let s = ms(g, vec![ei(1, 0, 2), ei(1, 1, 1)]);
        let p = langlands_first_case(&s).unwrap();
        assert_eq!(p.shifts[&rho()], vec![0, 1]);
        assert_eq!(p.shifted.unwrap().parts[&rho()][1], ei(2, 2, 1));
        let h = HalfInt::from_int;
        assert_eq!(p.deriv_steps, vec![DerivStep { rho: rho(), from: h(2), to: h(2) }]);
    }
}
