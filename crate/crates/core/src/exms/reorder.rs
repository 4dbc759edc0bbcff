//! The reorder moves `R_i`, standard form and the necessary condition.

use crate::error::{Error, Result};
use crate::half_int::HalfInt;
use crate::model::CuspidalLabel;

use super::{ExtMultiSegment, ExtSegment};

/// Applies `R_i` (0-based `i`) in place. Returns whether the sequence changed
/// shape, i.e. whether one of the two swapping cases applied.
pub(crate) fn reorder_part(part: &mut [ExtSegment], i: usize) -> Result<bool> {
    let (p, q) = (part[i], part[i + 1]);
    if q.contains(&p) {
        part[i] = q.with_mu(2 * p.mu - q.mu);
        part[i + 1] = p;
        Ok(true)
    } else if p.contains(&q) {
        part[i] = q;
        part[i + 1] = p.with_mu(2 * q.mu - p.mu);
        Ok(true)
    } else if q.big_a >= p.big_a && q.big_b >= p.big_b {
        Ok(false)
    } else {
        Err(Error::ReorderUnavailable { index: i + 1 })
    }
}

/// `R_i^rho` with 1-based `i`, `1 <= i < n_rho`. The result may be formal.
pub fn reorder(s: &ExtMultiSegment, rho: &CuspidalLabel, i: usize) -> Result<ExtMultiSegment> {
    let mut out = s.clone();
    let part = out.parts.get_mut(rho).ok_or(Error::UnknownLabel)?;
    if i == 0 || i >= part.len() {
        return Err(Error::IndexOutOfRange { index: i, len: part.len().saturating_sub(1) });
    }
    reorder_part(part, i - 1)?;
    Ok(out)
}

/// Sort key of the standard order: `B` ascending, then `A` descending.
pub(crate) fn standard_key(s: &ExtSegment) -> (HalfInt, HalfInt) {
    (s.big_b, -s.big_a)
}

pub(crate) fn standardize_part(part: &mut [ExtSegment]) -> Result<()> {
    // Bubble sort by adjacent reorders; equal keys are never swapped.
    let n = part.len();
    for pass in 0..n {
        let mut swapped = false;
        for i in 0..n.saturating_sub(1 + pass) {
            if standard_key(&part[i]) > standard_key(&part[i + 1]) {
                reorder_part(part, i)?;
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    Ok(())
}

/// Moves each part into the order `(B ascending, A descending)` by reorders.
pub fn standard_form(s: &ExtMultiSegment) -> Result<ExtMultiSegment> {
    let mut out = s.clone();
    for part in out.parts.values_mut() {
        standardize_part(part)?;
    }
    Ok(out)
}

pub fn is_standard(s: &ExtMultiSegment) -> bool {
    s.parts.values().all(|p| p.windows(2).all(|w| standard_key(&w[0]) <= standard_key(&w[1])))
}

pub(crate) fn part_necessary(part: &[ExtSegment]) -> bool {
    part.windows(2).all(|w| {
        let lhs = (w[1].big_a - w[0].big_a).abs() + (w[1].big_b - w[0].big_b).abs();
        lhs >= HalfInt::from_int((w[1].mu - w[0].mu).abs())
    })
}

/// `|A_i - A_{i-1}| + |B_i - B_{i-1}| >= |mu_i - mu_{i-1}|` for all consecutive pairs.
pub fn necessary_condition(s: &ExtMultiSegment) -> bool {
    s.parts.values().all(|p| part_necessary(p))
}

#[cfg(test)]
mod tests {
    use super::super::test_util::*;
    use super::*;
    use crate::model::GroupKind;
    use alloc::vec;

    const G: GroupKind = GroupKind::Symplectic;

    #[test]
    fn reorder_examples() {
        let s = ms(G, vec![ei(2, 1, 0), ei(3, 0, 2)]);
        let r = reorder(&s, &rho(), 1).unwrap();
        assert_eq!(r, ms(G, vec![ei(3, 0, -2), ei(2, 1, 0)]));
        assert_eq!(reorder(&r, &rho(), 1).unwrap(), s);
        let third = ms(G, vec![ei(1, 0, 2), ei(2, 1, 2)]);
        assert_eq!(reorder(&third, &rho(), 1).unwrap(), third);
        let down = ms(G, vec![ei(2, 1, 2), ei(1, 0, 2)]);
        assert_eq!(reorder(&down, &rho(), 1), Err(Error::ReorderUnavailable { index: 1 }));
        assert!(matches!(reorder(&s, &rho(), 2), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn standard_form_examples() {
        let s = ms(G, vec![ei(3, 0, 2), ei(2, 1, 0)]);
        assert!(is_standard(&s));
        assert_eq!(standard_form(&s).unwrap(), s);
        let unsorted = ms(G, vec![ei(2, 1, 0), ei(3, 0, 2)]);
        assert_eq!(standard_form(&unsorted).unwrap(), ms(G, vec![ei(3, 0, -2), ei(2, 1, 0)]));
        let dup = ms(G, vec![ei(1, 1, 1), ei(1, 1, 1)]);
        assert_eq!(standard_form(&dup).unwrap(), dup);
    }

    #[test]
    fn necessary_examples() {
        assert!(necessary_condition(&ms(G, vec![ei(1, 0, 2), ei(2, 1, 2)])));
        assert!(!necessary_condition(&ms(G, vec![ei(1, 0, 2), ei(2, 1, -2)])));
        assert!(necessary_condition(&ms(G, vec![ei(1, 1, 1)])));
    }
}
