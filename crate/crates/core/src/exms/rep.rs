//! Connectedness, `Delta_S`, and the two non-vanishing tests: the closed
//! criterion on the standard form and the reorder search.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::half_int::HalfInt;
use crate::model::CuspidalLabel;

use super::reorder::{is_standard, part_necessary, reorder_part, standard_form};
use super::{ExtMultiSegment, ExtSegment};

/// Default bound on the number of states visited by [`in_rep_bruteforce`].
pub const DEFAULT_MAX_STATES: usize = 1_000_000;

/// 0-based, `i < j`: no `k` strictly between with `A_i >= A_k >= A_j` or `A_i < A_k < A_j`.
pub(crate) fn part_connected(part: &[ExtSegment], i: usize, j: usize) -> bool {
    let (ai, aj) = (part[i].big_a, part[j].big_a);
    part[i + 1..j].iter().all(|k| {
        let ak = k.big_a;
        !((ai >= ak && ak >= aj) || (ai < ak && ak < aj))
    })
}

/// 0-based `Delta_S(mu_i, mu_j)`, extended antisymmetrically.
pub(crate) fn part_delta(part: &[ExtSegment], i: usize, j: usize) -> i64 {
    if i == j {
        return 0;
    }
    if i > j {
        return -part_delta(part, j, i);
    }
    let ai = part[i].big_a;
    let mut total = 0;
    for m in i..j {
        let flips = part[m + 1..j].iter().filter(|k| ai >= k.big_a).count();
        let term = part[m + 1].mu - part[m].mu;
        total += if flips % 2 == 0 { term } else { -term };
    }
    total
}

fn distance(p: &ExtSegment, q: &ExtSegment) -> HalfInt {
    (q.big_a - p.big_a).abs() + (q.big_b - p.big_b).abs()
}

fn mu_hat_bounded(part: &[ExtSegment]) -> bool {
    part.iter().all(|s| s.mu_hat().abs() <= s.a())
}

/// The inequalities on connected pairs together with `|mu_hat_i| <= a_i`, for a standard part.
pub(crate) fn part_in_srep(part: &[ExtSegment]) -> bool {
    if !mu_hat_bounded(part) {
        return false;
    }
    for i in 0..part.len() {
        for j in i + 1..part.len() {
            if part_connected(part, i, j)
                && distance(&part[i], &part[j]) < HalfInt::from_int(part_delta(part, i, j).abs())
            {
                return false;
            }
        }
    }
    true
}

fn standard_part<'a>(s: &'a ExtMultiSegment, rho: &CuspidalLabel, i: usize, j: usize) -> Result<&'a [ExtSegment]> {
    if !is_standard(s) {
        return Err(Error::NotStandard);
    }
    let part = s.part(rho)?;
    for k in [i, j] {
        if k == 0 || k > part.len() {
            return Err(Error::IndexOutOfRange { index: k, len: part.len() });
        }
    }
    Ok(part)
}

/// Whether `S_i` and `S_j` (1-based) are connected in the standard `s`. Symmetric; false for `i = j`.
pub fn connected(s: &ExtMultiSegment, rho: &CuspidalLabel, i: usize, j: usize) -> Result<bool> {
    let part = standard_part(s, rho, i, j)?;
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    Ok(lo != hi && part_connected(part, lo - 1, hi - 1))
}

/// `Delta_S(mu_i, mu_j)` with 1-based indices on the standard `s`.
pub fn delta(s: &ExtMultiSegment, rho: &CuspidalLabel, i: usize, j: usize) -> Result<i64> {
    let part = standard_part(s, rho, i, j)?;
    Ok(part_delta(part, i - 1, j - 1))
}

/// Non-vanishing of `pi(S)`, decided on the standard form.
pub fn in_srep(s: &ExtMultiSegment) -> Result<bool> {
    s.require_admissible()?;
    let std = standard_form(s)?;
    Ok(std.parts.values().all(|p| part_in_srep(p)))
}

/// Breadth-first search over the reorders of one part. `visit` returns false
/// to stop early; the result is then `Ok(false)`.
fn explore(
    start: &[ExtSegment],
    max_states: usize,
    seen: &mut BTreeSet<Vec<ExtSegment>>,
    mut visit: impl FnMut(&[ExtSegment]) -> bool,
) -> Result<bool> {
    let mut queue = VecDeque::new();
    seen.insert(start.to_vec());
    queue.push_back(start.to_vec());
    while let Some(state) = queue.pop_front() {
        if !visit(&state) {
            return Ok(false);
        }
        for i in 0..state.len().saturating_sub(1) {
            let mut next = state.clone();
            if let Ok(true) = reorder_part(&mut next, i) {
                if !seen.contains(&next) {
                    if seen.len() >= max_states {
                        return Err(Error::StateBoundExceeded { bound: max_states });
                    }
                    seen.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(true)
}

/// Non-vanishing by definition: every reordering satisfies the necessary
/// condition, and `|mu_hat_i| <= a_i` holds for `s` itself.
pub fn in_rep_bruteforce(s: &ExtMultiSegment, max_states: usize) -> Result<bool> {
    s.require_admissible()?;
    if !s.parts.values().all(|p| mu_hat_bounded(p)) {
        return Ok(false);
    }
    for part in s.parts.values() {
        let mut seen = BTreeSet::new();
        if !explore(part, max_states, &mut seen, part_necessary)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every sequence reachable from the `rho`-part by reorders, sorted.
pub fn reorder_orbit(s: &ExtMultiSegment, rho: &CuspidalLabel, max_states: usize) -> Result<Vec<Vec<ExtSegment>>> {
    let mut seen = BTreeSet::new();
    explore(s.part(rho)?, max_states, &mut seen, |_| true)?;
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::super::test_util::*;
    use super::*;
    use crate::model::GroupKind;
    use alloc::vec;

    const G: GroupKind = GroupKind::Symplectic;

    #[test]
    fn delta_examples() {
        let s = ms(G, vec![ei(1, 0, 2), ei(2, 1, 0)]);
        assert_eq!(delta(&s, &rho(), 1, 2), Ok(-2));
        assert_eq!(delta(&s, &rho(), 2, 1), Ok(2));
        assert_eq!(delta(&s, &rho(), 2, 2), Ok(0));
        assert_eq!(connected(&s, &rho(), 1, 2), Ok(true));
        // mu = (2, 0, 2): Delta(1,3) = m1 - 2 m2 + m3.
        let part = [ei(3, 0, 2), ei(2, 1, 0), ei(3, 2, 2)];
        assert!(part_connected(&part, 0, 2));
        assert_eq!(part_delta(&part, 0, 2), 2 + 2);
        assert!(matches!(delta(&s, &rho(), 1, 3), Err(Error::IndexOutOfRange { .. })));
        let unsorted = ms(G, vec![ei(2, 1, 0), ei(1, 0, 2)]);
        assert_eq!(delta(&unsorted, &rho(), 1, 2), Err(Error::NotStandard));
    }

    #[test]
    fn blocking() {
        // A_2 = 2 lies between A_1 = 3 and A_3 = 1.
        let part = [ei(3, 0, 0), ei(2, 1, 0), ei(1, 1, 1)];
        assert!(!part_connected(&part, 0, 2));
    }

    #[test]
    fn rep_examples() {
        let s = ms(G, vec![ei(1, 0, 2), ei(2, 1, 2)]);
        assert_eq!(in_srep(&s), Ok(true));
        assert_eq!(in_rep_bruteforce(&s, 100), Ok(true));
        let bad = ms(G, vec![ei(1, 0, 2), ei(2, 1, -2)]);
        assert_eq!(in_srep(&bad), Ok(false));
        assert_eq!(in_rep_bruteforce(&bad, 100), Ok(false));
        let single = ms(G, vec![ei(1, 1, -1), ei(2, 2, -1)]);
        assert_eq!(in_srep(&single), in_rep_bruteforce(&single, 100));
    }

    #[test]
    fn nested_orbit_has_two_states() {
        let s = ms(G, vec![ei(2, 0, 1), ei(1, 1, 1)]);
        assert_eq!(reorder_orbit(&s, &rho(), 100).unwrap().len(), 2);
        assert_eq!(reorder_orbit(&s, &rho(), 1), Err(Error::StateBoundExceeded { bound: 1 }));
    }

    #[test]
    fn negative_mu_hat() {
        // [1/2,-1/2] has a = 1, b = 2 and B not integral: mu_hat = mu - 1.
        let so = GroupKind::OddOrthogonal;
        let ok = ms(so, vec![es(1, -1, 2), es(1, 1, 1)]);
        assert_eq!(in_srep(&ok), Ok(true));
        let s = ms(so, vec![es(1, -1, -2), es(1, 1, 1)]);
        assert!(s.validate().is_admissible());
        assert_eq!(in_srep(&s), Ok(false));
        assert_eq!(in_rep_bruteforce(&s, 10), Ok(false));
    }
}
