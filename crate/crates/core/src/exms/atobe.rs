//! Translation to and from Atobe's `(A, B, l, eta)` symbols.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::half_int::HalfInt;
use crate::model::{CuspidalLabel, GroupKind};

use super::{deltas, ExtMultiSegment, ExtSegment};

/// One entry `([A,B], l, eta)` of a symbol, with `0 <= 2l <= b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtobeEntry {
    pub big_a: HalfInt,
    pub big_b: HalfInt,
    pub l: i64,
    /// `+1` or `-1`; normalized to `+1` when `2l = b`.
    pub eta: i64,
}

impl AtobeEntry {
    pub fn b(&self) -> i64 {
        (self.big_a - self.big_b).twice() / 2 + 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtobeSymbol {
    pub group: GroupKind,
    pub parts: BTreeMap<CuspidalLabel, Vec<AtobeEntry>>,
}

fn sgn(x: i64) -> i64 {
    if x < 0 {
        -1
    } else {
        1
    }
}

/// `l = (b - |mu|)/2`, `eta = delta_i sgn(mu)` with `sgn(0) = 1`.
///
/// Formal segments (`|mu| > b`) have no symbol.
pub fn to_atobe(s: &ExtMultiSegment) -> Result<AtobeSymbol> {
    let mut parts = BTreeMap::new();
    for (rho, part) in &s.parts {
        let ds = deltas(part);
        let mut out = Vec::with_capacity(part.len());
        for (seg, d) in part.iter().zip(ds) {
            if !seg.is_strict() {
                return Err(Error::InvalidExtSegment);
            }
            let l = (seg.b() - seg.mu.abs()) / 2;
            let eta = if 2 * l == seg.b() { 1 } else { d * sgn(seg.mu) };
            out.push(AtobeEntry { big_a: seg.big_a, big_b: seg.big_b, l, eta });
        }
        parts.insert(rho.clone(), out);
    }
    Ok(AtobeSymbol { group: s.group, parts })
}

/// `mu = delta_i eta (b - 2l)`.
pub fn from_atobe(e: &AtobeSymbol) -> Result<ExtMultiSegment> {
    let mut out = ExtMultiSegment::new(e.group);
    for (rho, part) in &e.parts {
        let mut segs = Vec::with_capacity(part.len());
        let mut d = 1i64;
        for entry in part {
            let b = entry.b();
            if entry.l < 0 || 2 * entry.l > b || entry.eta.abs() != 1 {
                return Err(Error::InvalidExtSegment);
            }
            segs.push(ExtSegment::new(entry.big_a, entry.big_b, d * entry.eta * (b - 2 * entry.l))?);
            if (b - 1) % 2 != 0 {
                d = -d;
            }
        }
        out.set_part(rho.clone(), segs);
    }
    Ok(out)
}

/// Atobe's sign condition `prod (-1)^{floor(b/2) + l} eta^b = 1`.
pub fn atobe_sign_condition(e: &AtobeSymbol) -> bool {
    let mut sign = 1i64;
    for entry in e.parts.values().flatten() {
        let b = entry.b();
        if (b / 2 + entry.l) % 2 != 0 {
            sign = -sign;
        }
        if b % 2 != 0 {
            sign *= entry.eta;
        }
    }
    sign == 1
}

/// Atobe's necessary condition for non-vanishing, checked pairwise on the
/// symbol in the three configurations of consecutive entries.
///
/// Only defined for non-negative input; a consecutive pair with both end
/// points strictly decreasing lies in none of the configurations.
pub fn nec_atobe_cases(s: &ExtMultiSegment) -> Result<bool> {
    if s.parts.values().flatten().any(|seg| seg.big_b < 0) {
        return Err(Error::NegativeLowerEnd);
    }
    let sym = to_atobe(s)?;
    for part in sym.parts.values() {
        for (k, w) in part.windows(2).enumerate() {
            let (p, q) = (&w[0], &w[1]);
            let same_sign = q.eta * p.eta * if (p.b() - 1) % 2 == 0 { 1 } else { -1 } == 1;
            let ok = if q.big_a >= p.big_a && q.big_b >= p.big_b {
                if same_sign {
                    q.big_a - q.l >= p.big_a - p.l && q.big_b + q.l >= p.big_b + p.l
                } else {
                    HalfInt::from_int(q.l + p.l) > p.big_a - q.big_b
                }
            } else if q.big_a >= p.big_a && q.big_b <= p.big_b {
                if same_sign {
                    q.l >= p.l && q.b() - p.b() >= q.l - p.l
                } else {
                    p.l + q.l >= p.b()
                }
            } else if q.big_a <= p.big_a && q.big_b >= p.big_b {
                if same_sign {
                    p.l >= q.l && p.b() - q.b() >= p.l - q.l
                } else {
                    p.l + q.l >= q.b()
                }
            } else {
                return Err(Error::UncoveredConfiguration { index: k + 1 });
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::super::test_util::*;
    use super::*;
    use crate::exms::necessary_condition;
    use alloc::vec;

    fn entry(a: i64, b: i64, l: i64, eta: i64) -> AtobeEntry {
        AtobeEntry { big_a: HalfInt::from_int(a), big_b: HalfInt::from_int(b), l, eta }
    }

    #[test]
    fn examples() {
        let g = GroupKind::Symplectic;
        let s = ms(g, vec![ei(2, 0, 1), ei(3, 1, -3)]);
        let e = to_atobe(&s).unwrap();
        assert_eq!(e.parts[&rho()], vec![entry(2, 0, 1, 1), entry(3, 1, 0, -1)]);
        assert_eq!(from_atobe(&e).unwrap(), s);
        let t = to_atobe(&ms(g, vec![ei(1, 1, 1)])).unwrap();
        assert_eq!(t.parts[&rho()], vec![entry(1, 1, 0, 1)]);
    }

    #[test]
    fn zero_mu_normalizes_eta() {
        let s = ms(GroupKind::Symplectic, vec![ei(1, 1, -1), ei(2, 1, 0)]);
        let e = to_atobe(&s).unwrap();
        assert_eq!(e.parts[&rho()][1], entry(2, 1, 1, 1));
        let mut flipped = e.clone();
        flipped.parts.get_mut(&rho()).unwrap()[1].eta = -1;
        assert_eq!(from_atobe(&flipped).unwrap(), s);
    }

    #[test]
    fn formal_segments_have_no_symbol() {
        assert!(to_atobe(&ms(GroupKind::Symplectic, vec![ei(1, 1, 3)])).is_err());
    }

    #[test]
    fn case_branches() {
        let g = GroupKind::Symplectic;
        // Configuration (1) with opposite signs: l_1 + l_2 > A_1 - B_2.
        let s = ms(g, vec![ei(1, 0, 0), ei(2, 1, 0)]);
        assert_eq!(nec_atobe_cases(&s), Ok(true));
        assert!(necessary_condition(&s));
        // Configuration (2) with l_1 + l_2 >= b_1.
        let s = ms(g, vec![ei(1, 1, 1), ei(2, 0, 1)]);
        assert_eq!(nec_atobe_cases(&s), Ok(necessary_condition(&s)));
        let neg = ms(g, vec![ei(1, -1, 1)]);
        assert_eq!(nec_atobe_cases(&neg), Err(Error::NegativeLowerEnd));
        let uncovered = ms(g, vec![ei(2, 2, 1), ei(1, 1, 1)]);
        assert_eq!(nec_atobe_cases(&uncovered), Err(Error::UncoveredConfiguration { index: 1 }));
    }
}
