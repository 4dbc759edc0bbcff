//! Aubert duality and deformation.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::CuspidalLabel;

use super::reorder::standard_form;
use super::rep::in_srep;
use super::{very_admissible_order, ExtMultiSegment, ExtSegment};

/// `mu` of the dual of `seg` in a part of length `n`.
///
/// The magnitude is that of `mu_hat` (`mu`, or `mu - 1` off the integral
/// lattice). The sign carries the `eta`-twist of the dual symbol through the
/// reversal of the part, where the prefix products `delta_i` are recomputed.
fn dual_mu(seg: &ExtSegment, n: usize) -> i64 {
    if seg.big_b.is_integral() {
        if n % 2 == 0 {
            -seg.mu
        } else {
            seg.mu
        }
    } else {
        1 - seg.mu
    }
}

/// The dual parameter: each part of the standard form reversed, with `[A,B]`
/// replaced by `[A,-B]` and `mu` by [`dual_mu`]; returned in standard form.
///
/// The reversed sequence is checked to be very admissible before it is standardized.
pub fn aubert_dual(s: &ExtMultiSegment) -> Result<ExtMultiSegment> {
    if !in_srep(s)? {
        return Err(Error::NotInRep);
    }
    let std = standard_form(s)?;
    let mut raw = ExtMultiSegment::new(s.group);
    for (rho, part) in &std.parts {
        let n = part.len();
        let dual: Vec<ExtSegment> = part
            .iter()
            .rev()
            .map(|seg| ExtSegment::new(seg.big_a, -seg.big_b, dual_mu(seg, n)))
            .collect::<Result<_>>()?;
        if !very_admissible_order(&dual) {
            return Err(Error::Precondition("reversed dual is not very admissible"));
        }
        raw.set_part(rho.clone(), dual);
    }
    standard_form(&raw)
}

/// The reversed sequence with `mu` replaced by `mu_hat` throughout, neither
/// standardized nor validated. It agrees with [`aubert_dual`] up to the signs
/// of the `mu`, and can violate the sign condition.
pub fn aubert_dual_literal(s: &ExtMultiSegment) -> Result<ExtMultiSegment> {
    let mut raw = ExtMultiSegment::new(s.group);
    for (rho, part) in &s.parts {
        let dual: Vec<ExtSegment> = part
            .iter()
            .rev()
            .map(|seg| ExtSegment::new(seg.big_a, -seg.big_b, seg.mu_hat()))
            .collect::<Result<_>>()?;
        raw.set_part(rho.clone(), dual);
    }
    Ok(raw)
}

fn sgn(x: i64) -> i64 {
    if x < 0 {
        -1
    } else {
        1
    }
}

/// Deforms the consecutive pair `(k-1, k)` (1-based `k >= 2`) of the `rho`-part.
///
/// Needs `A_k >= A_{k-1}`, `B_k >= B_{k-1}` and
/// `|A_k - A_{k-1}| + |B_k - B_{k-1}| = |mu_k - mu_{k-1}|`. When the inner
/// segment `[A_{k-1}, B_k]` comes out empty (`B_k = A_{k-1} + 1`) it is
/// dropped, which requires its new `mu` to vanish. An empty segment has
/// `b = 0`, so dropping it flips `delta_i` of every later segment; their `mu`
/// change sign to keep the same symbol.
pub fn deform(s: &ExtMultiSegment, rho: &CuspidalLabel, k: usize) -> Result<ExtMultiSegment> {
    if !in_srep(s)? {
        return Err(Error::NotInRep);
    }
    let part = s.part(rho)?;
    if k < 2 || k > part.len() {
        return Err(Error::IndexOutOfRange { index: k, len: part.len() });
    }
    let (p, q) = (part[k - 2], part[k - 1]);
    let dist = (q.big_a - p.big_a).abs() + (q.big_b - p.big_b).abs();
    if q.big_a < p.big_a || q.big_b < p.big_b || dist != (q.mu - p.mu).abs() {
        return Err(Error::DeformPrecondition);
    }
    let t = sgn(q.mu - p.mu) * (q.big_a - p.big_a).to_int().ok_or(Error::DeformPrecondition)?;
    let outer = ExtSegment::new(q.big_a, p.big_b, p.mu - t).map_err(|_| Error::DeformInvalidOutput)?;
    let inner_mu = q.mu - t;
    let mut segs = part[..k - 2].to_vec();
    segs.push(outer);
    if q.big_b == p.big_a + 1 {
        if inner_mu != 0 {
            return Err(Error::DeformInvalidOutput);
        }
        segs.extend(part[k..].iter().map(|x| x.with_mu(-x.mu)));
    } else {
        segs.push(ExtSegment::new(p.big_a, q.big_b, inner_mu).map_err(|_| Error::DeformInvalidOutput)?);
        segs.extend_from_slice(&part[k..]);
    }
    let mut out = s.clone();
    out.set_part(rho.clone(), segs);
    if !out.validate().is_admissible() {
        return Err(Error::DeformInvalidOutput);
    }
    Ok(out)
}
