//! Reducibility of a product of two essentially Speh representations.

use crate::model::{EssSpeh, UEssMatrix};

fn strictly_below(m: &UEssMatrix, n: &UEssMatrix) -> bool {
    m.top_left < n.top_left
        && m.top_right < n.top_right
        && m.bottom_left < n.bottom_left
        && m.bottom_right < n.bottom_right
}

/// Tadic's criterion: `u1 × u2` reduces iff the corner intervals
/// `[top_left, bottom_right]` of the two matrices lie on one line with a
/// segment as union, and the matrices compare strictly entrywise.
pub fn tadic_reducible(u1: &EssSpeh, u2: &EssSpeh) -> bool {
    if u1.rho() != u2.rho() {
        return false;
    }
    let (m1, m2) = (u1.to_matrix(), u2.to_matrix());
    if !m1.top_left.same_lattice(m2.top_left) {
        return false;
    }
    let lo = m1.top_left.max(m2.top_left);
    let hi = m1.bottom_right.min(m2.bottom_right);
    if lo > hi + 1 {
        return false;
    }
    strictly_below(&m1, &m2) || strictly_below(&m2, &m1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::half_int::HalfInt;
    use crate::model::{CuspidalLabel, DualityType};

    fn rho(name: &str) -> CuspidalLabel {
        CuspidalLabel::new(name, 1, DualityType::Orthogonal).unwrap()
    }

    fn from_m(tl: i64, tr: i64, bl: i64, br: i64) -> EssSpeh {
        let h = |v: i64| HalfInt::from_int(v);
        EssSpeh::from_matrix(rho("r"), &UEssMatrix::new(h(tl), h(tr), h(bl), h(br))).unwrap()
    }

    #[test]
    fn examples() {
        assert!(tadic_reducible(&from_m(0, 1, 1, 2), &from_m(1, 2, 2, 3)));
        let r = rho("r");
        let u = EssSpeh::speh(r.clone(), 2, 2).unwrap();
        let v = EssSpeh::speh(r, 2, 1).unwrap();
        assert!(!tadic_reducible(&u, &v));
        let w = EssSpeh::speh(rho("t"), 2, 2).unwrap();
        assert!(!tadic_reducible(&u, &w));
        // Two characters at distance one reduce; at distance two they do not.
        assert!(tadic_reducible(&from_m(0, 0, 0, 0), &from_m(1, 1, 1, 1)));
        assert!(!tadic_reducible(&from_m(0, 0, 0, 0), &from_m(2, 2, 2, 2)));
    }

    proptest::proptest! {
        #[test]
        fn symmetric(a1 in 1u32..4, b1 in 1u32..4, s1 in -4i64..4, a2 in 1u32..4, b2 in 1u32..4, s2 in -4i64..4) {
            let u1 = EssSpeh::new(rho("r"), a1, b1, HalfInt::from_twice(s1)).unwrap();
            let u2 = EssSpeh::new(rho("r"), a2, b2, HalfInt::from_twice(s2)).unwrap();
            proptest::prop_assert_eq!(tadic_reducible(&u1, &u2), tadic_reducible(&u2, &u1));
        }
    }
}
