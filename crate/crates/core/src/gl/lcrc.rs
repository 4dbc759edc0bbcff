//! The LC and RC matching conditions deciding irreducibility of `L(Δ) × L(m)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::half_int::HalfInt;
use crate::model::{EssSpeh, Segment, SpehType};

use super::segment::precedes;

/// Whether every vertex of `left` can be matched to a distinct vertex of
/// `right` along `edge`. Kuhn's augmenting-path algorithm.
fn saturating_matching(left: &[usize], right: &[usize], edge: &dyn Fn(usize, usize) -> bool) -> bool {
    if left.len() > right.len() {
        return false;
    }
    let mut owner: Vec<Option<usize>> = vec![None; right.len()];
    for l in 0..left.len() {
        let mut seen = vec![false; right.len()];
        if !augment(l, left, right, edge, &mut owner, &mut seen) {
            return false;
        }
    }
    true
}

fn augment(
    l: usize,
    left: &[usize],
    right: &[usize],
    edge: &dyn Fn(usize, usize) -> bool,
    owner: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for r in 0..right.len() {
        if seen[r] || !edge(left[l], right[r]) {
            continue;
        }
        seen[r] = true;
        let free = match owner[r] {
            None => true,
            Some(other) => augment(other, left, right, edge, owner, seen),
        };
        if free {
            owner[r] = Some(l);
            return true;
        }
    }
    false
}

/// `LC(Δ, m)`: an injection `f` from `{j : Δ ≺ Δ_j}` to `{j : Δ⁻ ≺ Δ_j}` with `Δ_{f(x)} ≺ Δ_x`.
pub fn lc(delta: &Segment, m: &[Segment]) -> bool {
    let shifted = delta.shifted_down();
    let x: Vec<usize> = (0..m.len()).filter(|&j| precedes(delta, &m[j])).collect();
    let y: Vec<usize> = (0..m.len()).filter(|&j| precedes(&shifted, &m[j])).collect();
    saturating_matching(&x, &y, &|xi, yj| precedes(&m[yj], &m[xi]))
}

/// `RC(Δ, m)`: an injection `f` from `{j : Δ_j ≺ Δ}` to `{j : Δ_j⁻ ≺ Δ}` with `Δ_x ≺ Δ_{f(x)}`.
pub fn rc(delta: &Segment, m: &[Segment]) -> bool {
    let x: Vec<usize> = (0..m.len()).filter(|&j| precedes(&m[j], delta)).collect();
    let y: Vec<usize> = (0..m.len()).filter(|&j| precedes(&m[j].shifted_down(), delta)).collect();
    saturating_matching(&x, &y, &|xi, yj| precedes(&m[xi], &m[yj]))
}

pub fn lc_rc_irreducible(delta: &Segment, m: &[Segment]) -> bool {
    lc(delta, m) && rc(delta, m)
}

/// The multi-segment `m^t = [A+s, 0] + Σ_{i=2..a} [A+s+1-i, B+s+1-i]` paired
/// with `Z_rho[0,1]` in the first block of `u_rho(a,b)|.|^s`.
///
/// Only the instance where the first block passes through `0` and `1` is
/// supported: `u` of small type with `B+s <= 0 < 1 <= A+s`.
pub fn z01_first_block_dual(u: &EssSpeh) -> Result<Vec<Segment>> {
    if u.classify()? != SpehType::Small {
        return Err(Error::Unsupported("Z[0,1] instance needs small type"));
    }
    let (top, bottom) = (u.big_a() + u.s(), u.big_b() + u.s());
    if !bottom.is_integral() || bottom > 0 || top < 1 {
        return Err(Error::Unsupported("Z[0,1] instance needs B+s <= 0 < 1 <= A+s"));
    }
    let rho = u.rho().clone();
    let mut out = vec![Segment::new(rho.clone(), top, HalfInt::ZERO)?];
    for i in 2..=i64::from(u.a()) {
        out.push(Segment::new(rho.clone(), top + 1 - i, bottom + 1 - i)?);
    }
    Ok(out)
}

/// Irreducibility of `Z_rho[0,1] × M^max_{<1,j}(u)` at the `Z_rho[0,1]` step of the first block.
pub fn z01_first_block_irreducible(u: &EssSpeh) -> Result<bool> {
    let mt = z01_first_block_dual(u)?;
    let z = Segment::new(u.rho().clone(), HalfInt::ONE, HalfInt::ZERO)?;
    Ok(lc_rc_irreducible(&z, &mt))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{CuspidalLabel, DualityType};

    fn rho() -> CuspidalLabel {
        CuspidalLabel::new("r", 1, DualityType::Orthogonal).unwrap()
    }

    fn seg(x: i64, y: i64) -> Segment {
        Segment::new(rho(), HalfInt::from_int(x), HalfInt::from_int(y)).unwrap()
    }

    #[test]
    fn examples() {
        assert!(!lc_rc_irreducible(&seg(1, 1), &[seg(0, 0)]));
        assert!(lc(&seg(1, 1), &[seg(0, 0)]));
        assert!(!rc(&seg(1, 1), &[seg(0, 0)]));
        assert!(lc_rc_irreducible(&seg(1, 1), &[seg(1, 1)]));
        assert!(lc_rc_irreducible(&seg(1, 1), &[]));
        // rho|.|^1 × L([2,2]): LC fails, nothing to match [2,2] with.
        assert!(!lc(&seg(1, 1), &[seg(2, 2)]));
        // rho|.|^1 × L([2,2],[1,1]) is irreducible.
        assert!(lc_rc_irreducible(&seg(1, 1), &[seg(1, 1), seg(2, 2)]));
    }

    #[test]
    fn matching_needs_augmenting_paths() {
        // Greedy assignment of 0 to 10 would block 1.
        let edge = |l: usize, r: usize| matches!((l, r), (0, 10) | (0, 11) | (1, 10));
        assert!(saturating_matching(&[0, 1], &[10, 11], &edge));
        assert!(!saturating_matching(&[0, 1], &[10], &edge));
    }

    #[test]
    fn z01_instance() {
        let u = EssSpeh::new(rho(), 2, 3, HalfInt::HALF).unwrap();
        assert_eq!(z01_first_block_dual(&u).unwrap(), vec![seg(2, 0), seg(1, -1)]);
        assert_eq!(z01_first_block_irreducible(&u), Ok(true));
        let big = EssSpeh::new(rho(), 1, 3, HalfInt::ONE).unwrap();
        assert!(matches!(z01_first_block_irreducible(&big), Err(Error::Unsupported(_))));
    }
}
