mod common;

use arthur_core::gl::{
    derivative_chain, mstar_full, mstar_ladder, z01_first_block_dual, DerivGrid, Ladder,
};
use arthur_core::{EssSpeh, FormalSum, HalfInt, Segment, SpehType};
use common::*;
use proptest::prelude::*;

/// The Mœglin–Waldspurger algorithm on a multisegment given as `(x, y)` pairs
/// with `x` the largest exponent.
fn mw_dual(mut m: Vec<(HalfInt, HalfInt)>) -> Vec<(HalfInt, HalfInt)> {
    let mut out = Vec::new();
    while !m.is_empty() {
        let e = m.iter().map(|s| s.0).max().unwrap();
        let pick = |m: &[(HalfInt, HalfInt)], end: HalfInt, below: Option<HalfInt>| {
            m.iter()
                .enumerate()
                .filter(|(_, s)| s.0 == end && below.map_or(true, |b| s.1 < b))
                .max_by_key(|(_, s)| s.1)
                .map(|(i, _)| i)
        };
        let mut chosen = vec![pick(&m, e, None).unwrap()];
        loop {
            let last = m[*chosen.last().unwrap()];
            match pick(&m, last.0 - 1, Some(last.1)) {
                Some(i) => chosen.push(i),
                None => break,
            }
        }
        out.push((e, e - (chosen.len() as i64 - 1)));
        for &i in &chosen {
            m[i].0 -= HalfInt::ONE;
        }
        m.retain(|s| s.0 >= s.1);
    }
    out.sort();
    out
}

#[test]
fn mw_algorithm_on_a_known_pair() {
    let h = HalfInt::from_int;
    let m = vec![(h(0), h(-1)), (h(1), h(0)), (h(2), h(1))];
    assert_eq!(mw_dual(m), vec![(h(1), h(-1)), (h(2), h(0))]);
}

#[test]
fn z01_dual_agrees_with_mw() {
    let mut checked = 0;
    for a in 1..=6u32 {
        for b in 1..=10u32 {
            for s2 in 1..=(a as i64 - 1) {
                let u = EssSpeh::new(rho(), a, b, h(s2)).unwrap();
                assert_eq!(u.classify().unwrap(), SpehType::Small);
                let Ok(mt) = z01_first_block_dual(&u) else { continue };
                // L(m) just before the Z[0,1] step: segments of u whose upper end is
                // negative lose it, the others are untouched.
                let m: Vec<(HalfInt, HalfInt)> =
                    u.segments().into_iter().map(|(x, y)| if x < 0 { (x - 1, y) } else { (x, y) }).collect();
                let mut got: Vec<(HalfInt, HalfInt)> = mt.iter().map(|s: &Segment| (s.x(), s.y())).collect();
                got.sort();
                assert_eq!(got, mw_dual(m), "{u}");
                checked += 1;
            }
        }
    }
    assert!(checked > 10, "only {checked} instances");
}

fn ladder_strategy() -> impl Strategy<Value = Ladder> {
    (prop::bool::ANY, prop::collection::vec((0i64..3, 0i64..3), 0..4), -3i64..3).prop_filter_map(
        "not a ladder",
        |(half, steps, start)| {
            let off = i64::from(half);
            let mut segs = Vec::new();
            let (mut x, mut y) = (2 * start + off, 2 * start + off);
            for (dx, len) in steps {
                x += 2 * (dx + 1);
                y = y.max(x - 2 * len) + if segs.is_empty() { 0 } else { 2 };
                if y > x + 2 {
                    return None;
                }
                segs.push((h(x), h(y.min(x))));
            }
            Ladder::new(rho(), segs).ok()
        },
    )
}

fn brute_lad_count(l: &Ladder) -> usize {
    let ranges: Vec<Vec<HalfInt>> = l
        .segments()
        .iter()
        .map(|&(x, y)| {
            let mut v = Vec::new();
            let mut c = y - 1;
            while c <= x {
                v.push(c);
                c += 1;
            }
            v
        })
        .collect();
    let mut count = 0;
    let mut idx = vec![0usize; ranges.len()];
    'outer: loop {
        if ranges.iter().all(|r| !r.is_empty()) {
            let c: Vec<HalfInt> = idx.iter().zip(&ranges).map(|(&i, r)| r[i]).collect();
            if c.windows(2).all(|w| w[0] < w[1]) {
                count += 1;
            }
        }
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < ranges[k].len() {
                continue 'outer;
            }
            idx[k] = 0;
        }
        break;
    }
    count
}

proptest! {
    #[test]
    fn mstar_conserves_degree(l in ladder_strategy()) {
        for term in mstar_ladder(&l).terms() {
            prop_assert_eq!(term.left_rank() + term.right.rank(), l.rank());
        }
        for term in mstar_full(&l).terms() {
            prop_assert_eq!(term.left_rank() + term.right.rank(), l.rank());
        }
        prop_assert_eq!(l.lad_tuples().len(), brute_lad_count(&l));
        prop_assert_eq!(mstar_ladder(&l).total() as usize, brute_lad_count(&l));
    }
}

fn small_types(max_a: u32, max_b: u32) -> Vec<EssSpeh> {
    let mut out = Vec::new();
    for a in 2..=max_a {
        for b in 1..=max_b {
            for s2 in 1..=(a as i64 - 1) {
                out.push(EssSpeh::new(rho(), a, b, h(s2)).unwrap());
            }
        }
    }
    out
}

#[test]
fn grid_of_small_type_takes_indicator_multiplicities() {
    for u in small_types(6, 4).into_iter().filter(|u| u.s().twice() <= 4) {
        let grid = DerivGrid::for_speh(&u).unwrap();
        let got = derivative_chain(&FormalSum::single(Ladder::from_speh(&u)), &grid).unwrap();
        assert_eq!(got.mults, grid.indicators(), "{u}");
        let rest = EssSpeh::speh(rho(), u.a() - u.s().twice() as u32, u.b()).unwrap();
        assert_eq!(got.result.as_single(), Some(&Ladder::from_speh(&rest)), "{u}");
    }
}

#[test]
fn split_identity_for_pairs_of_small_type() {
    let us = small_types(5, 3);
    let mut checked = 0;
    for u1 in &us {
        let (shifted, unitary) = u1.split().unwrap();
        for u2 in &us {
            if u1.big_b() + u1.s() > u2.big_b() + u2.s() {
                continue;
            }
            let grid = DerivGrid::for_speh(u2).unwrap();
            let run = |u: &EssSpeh| derivative_chain(&FormalSum::single(Ladder::from_speh(u)), &grid).unwrap().mults;
            let (m1, ms, mu) = (run(u1), run(&shifted), run(&unitary));
            for i in 0..m1.len() {
                for j in 0..m1[i].len() {
                    assert_eq!(m1[i][j], ms[i][j] + mu[i][j], "{u1} along {u2} at ({}, {})", i + 1, j + 1);
                }
            }
            checked += 1;
        }
    }
    assert!(checked > 100);
}
