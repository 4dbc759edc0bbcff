#![allow(dead_code)]

use arthur_core::exms::{ExtMultiSegment, ExtSegment};
use arthur_core::{CuspidalLabel, DualityType, GroupKind, HalfInt};
use proptest::prelude::*;

pub fn rho() -> CuspidalLabel {
    CuspidalLabel::new("r", 1, DualityType::Orthogonal).unwrap()
}

pub fn h(twice: i64) -> HalfInt {
    HalfInt::from_twice(twice)
}

/// `(B index, length, mu index)`; decoded by [`segment`].
pub type RawSeg = (i64, i64, i64);

pub fn group() -> impl Strategy<Value = GroupKind> {
    prop_oneof![Just(GroupKind::Symplectic), Just(GroupKind::OddOrthogonal)]
}

pub fn raw_segs(min: usize, max: usize) -> impl Strategy<Value = Vec<RawSeg>> {
    prop::collection::vec((-3i64..=3, 0i64..=3, 0i64..=4), min..=max)
}

/// An extended segment of good parity for an orthogonal `rho`: integral
/// `A, B` for `Sp`, half-integral for `SO-odd`.
pub fn segment(group: GroupKind, (bi, len, mi): RawSeg) -> ExtSegment {
    let b2 = match group {
        GroupKind::Symplectic => 2 * bi,
        GroupKind::OddOrthogonal => 2 * bi + 1,
    };
    let b = len + 1;
    let mu = -b + 2 * (mi % (b + 1));
    ExtSegment::new(h(b2 + 2 * len), h(b2), mu).unwrap()
}

/// Decodes a part in standard order; `None` unless the result is an
/// admissible extended multi-segment (sign condition included iff `signed`).
pub fn build(group: GroupKind, raw: &[RawSeg], signed: bool) -> Option<ExtMultiSegment> {
    let mut segs: Vec<ExtSegment> = raw.iter().map(|&r| segment(group, r)).collect();
    segs.sort_by_key(|s| (s.big_b, -s.big_a));
    let s = ExtMultiSegment::new(group).with_part(rho(), segs);
    let mut v = s.validate();
    if !signed {
        v.sign_condition = true;
    }
    v.is_admissible().then_some(s)
}

pub fn exms(min: usize, max: usize) -> impl Strategy<Value = ExtMultiSegment> {
    (group(), raw_segs(min, max)).prop_filter_map("not admissible", |(g, raw)| build(g, &raw, true))
}
