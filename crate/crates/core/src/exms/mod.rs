//! Extended multi-segments: validation, Atobe's symbols, reorders, the
//! non-vanishing criterion, Aubert duals, deformations and packets.

mod atobe;
mod dual;
mod langlands;
mod packet;
mod rep;
mod reorder;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::half_int::HalfInt;
use crate::model::{summand_good_parity, ArthurParam, CuspidalLabel, GroupKind, Summand};

pub use atobe::{atobe_sign_condition, from_atobe, nec_atobe_cases, to_atobe, AtobeEntry, AtobeSymbol};
pub use dual::{aubert_dual, aubert_dual_literal, deform};
pub use langlands::{langlands_first_case, DerivStep, LanglandsProgram, TemperedPiece};
pub use packet::enumerate_packet;
pub use rep::{connected, delta, in_rep_bruteforce, in_srep, reorder_orbit, DEFAULT_MAX_STATES};
pub use reorder::{is_standard, necessary_condition, reorder, standard_form};

pub(crate) use rep::{part_connected, part_delta};
pub(crate) use reorder::standard_key;

/// `([A,B]_rho, mu)`. Formal segments (with `|mu| > b`) are representable;
/// [`ExtSegment::is_strict`] tells them apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtSegment {
    pub big_a: HalfInt,
    pub big_b: HalfInt,
    pub mu: i64,
}

impl ExtSegment {
    /// Checks `A >= B`, `A - B` integral and `mu = b (mod 2)`.
    pub fn new(big_a: HalfInt, big_b: HalfInt, mu: i64) -> Result<Self> {
        if big_a < big_b || !big_a.same_lattice(big_b) {
            return Err(Error::InvalidExtSegment);
        }
        let s = ExtSegment { big_a, big_b, mu };
        if (mu - s.b()).rem_euclid(2) != 0 {
            return Err(Error::InvalidExtSegment);
        }
        Ok(s)
    }

    /// As [`ExtSegment::new`], additionally requiring `|mu| <= b`.
    pub fn new_strict(big_a: HalfInt, big_b: HalfInt, mu: i64) -> Result<Self> {
        let s = Self::new(big_a, big_b, mu)?;
        if !s.is_strict() {
            return Err(Error::InvalidExtSegment);
        }
        Ok(s)
    }

    /// `b = A - B + 1`.
    pub fn b(&self) -> i64 {
        (self.big_a - self.big_b).twice() / 2 + 1
    }

    /// `a = A + B + 1`; positive exactly when `A + B >= 0`.
    pub fn a(&self) -> i64 {
        (self.big_a + self.big_b).twice() / 2 + 1
    }

    pub fn is_strict(&self) -> bool {
        self.mu.abs() <= self.b()
    }

    /// `mu`, or `mu - 1` when `B` is not an integer.
    pub fn mu_hat(&self) -> i64 {
        if self.big_b.is_integral() {
            self.mu
        } else {
            self.mu - 1
        }
    }

    /// Whether `[A,B]` contains `[other.A, other.B]`.
    pub fn contains(&self, other: &ExtSegment) -> bool {
        self.big_b <= other.big_b && other.big_a <= self.big_a
    }

    pub fn same_segment(&self, other: &ExtSegment) -> bool {
        self.big_a == other.big_a && self.big_b == other.big_b
    }

    pub fn with_mu(&self, mu: i64) -> ExtSegment {
        ExtSegment { mu, ..*self }
    }

    pub fn shifted(&self, t: i64) -> ExtSegment {
        ExtSegment { big_a: self.big_a + t, big_b: self.big_b + t, mu: self.mu }
    }
}

impl fmt::Display for ExtSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "([{},{}]; mu={})", self.big_a, self.big_b, self.mu)
    }
}

/// A finite union of `rho`-parts, each an ordered sequence of extended segments.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExtMultiSegment {
    pub group: GroupKind,
    pub parts: BTreeMap<CuspidalLabel, Vec<ExtSegment>>,
}

/// The conditions of an (admissible) extended multi-segment, each evaluated on its own.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub admissible_order: bool,
    pub non_negative: bool,
    /// `A_i + B_i >= 0` throughout.
    pub sum_non_negative: bool,
    pub good_parity: bool,
    pub sign_condition: bool,
    pub strict_mu: bool,
    /// Every part with some `B_i < 0` is in very admissible order.
    pub very_admissible_where_needed: bool,
}

impl ValidationReport {
    pub fn is_ext_multi_segment(&self) -> bool {
        self.admissible_order && self.sum_non_negative && self.good_parity && self.sign_condition && self.strict_mu
    }

    pub fn is_admissible(&self) -> bool {
        self.is_ext_multi_segment() && self.very_admissible_where_needed
    }
}

impl ExtMultiSegment {
    pub fn new(group: GroupKind) -> Self {
        ExtMultiSegment { group, parts: BTreeMap::new() }
    }

    /// Builder: replaces the `rho`-part. Empty parts are not stored.
    pub fn with_part(mut self, rho: CuspidalLabel, segs: Vec<ExtSegment>) -> Self {
        self.set_part(rho, segs);
        self
    }

    pub fn set_part(&mut self, rho: CuspidalLabel, segs: Vec<ExtSegment>) {
        if segs.is_empty() {
            self.parts.remove(&rho);
        } else {
            self.parts.insert(rho, segs);
        }
    }

    pub fn part(&self, rho: &CuspidalLabel) -> Result<&[ExtSegment]> {
        self.parts.get(rho).map(Vec::as_slice).ok_or(Error::UnknownLabel)
    }

    pub fn is_empty(&self) -> bool {
        self.parts.values().all(Vec::is_empty)
    }

    /// Total number of extended segments.
    pub fn len(&self) -> usize {
        self.parts.values().map(Vec::len).sum()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = ValidationReport {
            admissible_order: true,
            non_negative: true,
            sum_non_negative: true,
            good_parity: true,
            sign_condition: sign_condition_holds(self),
            strict_mu: true,
            very_admissible_where_needed: true,
        };
        for (rho, part) in &self.parts {
            let any_negative = part.iter().any(|s| s.big_b < 0);
            r.non_negative &= !any_negative;
            r.admissible_order &= admissible_order(part);
            if any_negative {
                r.very_admissible_where_needed &= very_admissible_order(part);
            }
            for s in part {
                r.sum_non_negative &= s.a() >= 1;
                r.strict_mu &= s.is_strict();
                r.good_parity &= s.a() >= 1 && summand_good_parity(self.group, rho, s.a() as u32, s.b() as u32);
            }
        }
        r
    }

    /// `psi_S = sum rho ⊠ S_a ⊠ S_b`; needs `A + B >= 0` throughout.
    pub fn psi(&self) -> Result<ArthurParam> {
        let mut summands = Vec::with_capacity(self.len());
        for (rho, part) in &self.parts {
            for s in part {
                if s.a() < 1 {
                    return Err(Error::NotExtMultiSegment);
                }
                summands.push(Summand::new(rho.clone(), s.a() as u32, s.b() as u32)?);
            }
        }
        Ok(ArthurParam::new(self.group, summands))
    }

    /// `sum d * a * b`.
    pub fn dimension(&self) -> Result<u64> {
        Ok(self.psi()?.dimension())
    }

    pub(crate) fn require_admissible(&self) -> Result<()> {
        if self.validate().is_admissible() {
            Ok(())
        } else {
            Err(Error::NotExtMultiSegment)
        }
    }
}

impl fmt::Display for ExtMultiSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {{", self.group)?;
        for (k, (rho, part)) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, " {rho}:")?;
            for (i, s) in part.iter().enumerate() {
                f.write_str(if i == 0 { " " } else { ", " })?;
                write!(f, "{s}")?;
            }
        }
        f.write_str(" }")
    }
}

/// `A_i > A_j` and `B_i > B_j` imply `i > j`.
pub(crate) fn admissible_order(part: &[ExtSegment]) -> bool {
    part.iter()
        .enumerate()
        .all(|(i, si)| part[i + 1..].iter().all(|sj| !(si.big_a > sj.big_a && si.big_b > sj.big_b)))
}

/// `B_i > B_j` implies `i > j`.
pub(crate) fn very_admissible_order(part: &[ExtSegment]) -> bool {
    part.windows(2).all(|w| w[0].big_b <= w[1].big_b)
}

/// The parity of `sum_i floor(mu_i/2) + mu_i sum_{j<i} (b_j - 1)` for one part.
pub(crate) fn part_sign_parity(part: &[ExtSegment]) -> i64 {
    let mut acc = 0i64;
    let mut prefix = 0i64;
    for s in part {
        acc += s.mu.div_euclid(2) + s.mu * prefix;
        prefix += s.b() - 1;
    }
    acc.rem_euclid(2)
}

pub fn sign_condition_holds(s: &ExtMultiSegment) -> bool {
    s.parts.values().map(|p| part_sign_parity(p)).sum::<i64>() % 2 == 0
}

/// `delta_i = prod_{j<i} (-1)^{b_j - 1}` for every position of a part.
pub(crate) fn deltas(part: &[ExtSegment]) -> Vec<i64> {
    let mut out = Vec::with_capacity(part.len());
    let mut d = 1i64;
    for s in part {
        out.push(d);
        if (s.b() - 1) % 2 != 0 {
            d = -d;
        }
    }
    out
}

#[cfg(test)]
pub(crate) mod test_util {
    use super::*;
    use crate::model::DualityType;

    pub fn rho() -> CuspidalLabel {
        CuspidalLabel::new("r", 1, DualityType::Orthogonal).unwrap()
    }

    /// An extended segment from doubled end points.
    pub fn es(a2: i64, b2: i64, mu: i64) -> ExtSegment {
        ExtSegment::new(HalfInt::from_twice(a2), HalfInt::from_twice(b2), mu).unwrap()
    }

    /// Integral end points.
    pub fn ei(a: i64, b: i64, mu: i64) -> ExtSegment {
        es(2 * a, 2 * b, mu)
    }

    pub fn ms(group: GroupKind, segs: Vec<ExtSegment>) -> ExtMultiSegment {
        ExtMultiSegment::new(group).with_part(rho(), segs)
    }
}
