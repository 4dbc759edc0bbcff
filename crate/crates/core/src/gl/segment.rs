//! Linkage and precedence of segments.

use crate::model::Segment;

/// True when `d1 ∪ d2` is a segment and neither contains the other.
pub fn linked(d1: &Segment, d2: &Segment) -> bool {
    if !d1.same_line(d2) {
        return false;
    }
    let union_is_segment = d1.y().max(d2.y()) <= d1.x().min(d2.x()) + 1;
    let first_contains = d1.y() <= d2.y() && d2.x() <= d1.x();
    let second_contains = d2.y() <= d1.y() && d1.x() <= d2.x();
    union_is_segment && !first_contains && !second_contains
}

/// `d1 ≺ d2`: linked, with the lower end of `d2` strictly above that of `d1`.
pub fn precedes(d1: &Segment, d2: &Segment) -> bool {
    linked(d1, d2) && d2.y() > d1.y()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::half_int::HalfInt;
    use crate::model::{CuspidalLabel, DualityType};

    fn seg(x: i64, y: i64) -> Segment {
        let rho = CuspidalLabel::new("r", 1, DualityType::Orthogonal).unwrap();
        Segment::new(rho, HalfInt::from_twice(x), HalfInt::from_twice(y)).unwrap()
    }

    #[test]
    fn examples() {
        assert!(linked(&seg(2, 2), &seg(0, 0)));
        assert!(precedes(&seg(0, 0), &seg(2, 2)));
        assert!(!precedes(&seg(2, 2), &seg(0, 0)));
        assert!(!linked(&seg(4, 0), &seg(2, 2)));
        assert!(!linked(&seg(2, 2), &seg(-1, -1)));
        // Juxtaposed but with a gap of two.
        assert!(!linked(&seg(4, 4), &seg(0, 0)));
        // Overlapping.
        assert!(precedes(&seg(2, -2), &seg(4, 0)));
    }

    #[test]
    fn other_line_never_linked() {
        let r = seg(2, 2);
        let t = CuspidalLabel::new("t", 1, DualityType::Orthogonal).unwrap();
        let s = Segment::new(t, HalfInt::ZERO, HalfInt::ZERO).unwrap();
        assert!(!linked(&r, &s));
        assert!(!linked(&s, &r));
    }

    proptest::proptest! {
        #[test]
        fn linkage_is_symmetric_and_precedence_antisymmetric(
            x1 in -6i64..6, l1 in 0i64..5, x2 in -6i64..6, l2 in 0i64..5
        ) {
            let d1 = seg(2 * x1, 2 * (x1 - l1));
            let d2 = seg(2 * x2, 2 * (x2 - l2));
            proptest::prop_assert_eq!(linked(&d1, &d2), linked(&d2, &d1));
            proptest::prop_assert!(!(precedes(&d1, &d2) && precedes(&d2, &d1)));
            proptest::prop_assert_eq!(linked(&d1, &d2), precedes(&d1, &d2) || precedes(&d2, &d1));
        }
    }
}
