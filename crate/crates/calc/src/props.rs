//! Generators and property checks shared by `arthur-calc props` and the
//! acceptance suite. Each criterion returns a [`Report`] counting the
//! instances checked and the failures found.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::time::Instant;

use arthur_core::exms::{self, ExtMultiSegment, ExtSegment};
use arthur_core::gl::{self, DerivGrid, GLTerm, Ladder};
use arthur_core::induction::{self, IrrVerdict, SpehFactor};
use arthur_core::{
    component_group_order, summand_good_parity, ArthurParam, CuspidalLabel, DualityType, EssSpeh, FormalSum,
    GroupKind, HalfInt, SpehType, Summand,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Identifiers of the criteria implemented here; fixture replay is separate.
pub const CRITERIA: [u8; 13] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    /// Small sizes for interactive use.
    Quick,
    /// The acceptance sizes.
    Full,
}

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub seed: u64,
    pub scale: Scale,
    pub max_states: usize,
}

impl Config {
    pub fn full(seed: u64) -> Self {
        Config { seed, scale: Scale::Full, max_states: exms::DEFAULT_MAX_STATES }
    }

    fn pick<T>(&self, full: T, quick: T) -> T {
        match self.scale {
            Scale::Full => full,
            Scale::Quick => quick,
        }
    }

    fn rng(&self, id: u8) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ u64::from(id))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub id: u8,
    pub title: &'static str,
    pub instances: u64,
    /// Minimum number of instances for the criterion to count as checked.
    pub required: u64,
    pub failures: u64,
    pub detail: String,
    /// The first failing instance, if any.
    pub example: Option<String>,
    pub elapsed_ms: u64,
    /// Wall-clock bound, where the criterion has one.
    pub limit_ms: Option<u64>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.instances >= self.required && self.within_limit()
    }

    pub fn within_limit(&self) -> bool {
        self.limit_ms.map_or(true, |l| self.elapsed_ms <= l)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "criterion {:>2} {verdict}  {}: {} instances, {} failures, {:.1}s",
            self.id,
            self.title,
            self.instances,
            self.failures,
            self.elapsed_ms as f64 / 1000.0
        )?;
        if !self.detail.is_empty() {
            write!(f, "; {}", self.detail)?;
        }
        if self.instances < self.required {
            write!(f, "; needs at least {} instances", self.required)?;
        }
        if let (false, Some(l)) = (self.within_limit(), self.limit_ms) {
            write!(f, "; over the {}s limit", l / 1000)?;
        }
        if let Some(e) = &self.example {
            write!(f, "\n    first failure: {e}")?;
        }
        Ok(())
    }
}

#[derive(Default)]
struct Tally {
    instances: u64,
    failures: u64,
    example: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.example.is_none() {
                self.example = Some(what());
            }
        }
    }

    fn report(self, id: u8, title: &'static str, required: u64, detail: String) -> Report {
        Report {
            id,
            title,
            instances: self.instances,
            required,
            failures: self.failures,
            detail,
            example: self.example,
            elapsed_ms: 0,
            limit_ms: None,
        }
    }
}

pub fn run_criterion(id: u8, cfg: &Config) -> Report {
    let start = Instant::now();
    let mut r = dispatch(id, cfg);
    r.elapsed_ms = start.elapsed().as_millis() as u64;
    r.limit_ms = match id {
        1 => Some(120_000),
        2 => Some(10_000),
        6 => Some(300_000),
        11 => Some(60_000),
        _ => None,
    };
    r
}

fn dispatch(id: u8, cfg: &Config) -> Report {
    match id {
        1 => nonvanishing_equivalence(cfg),
        2 => necessary_condition_cases(cfg),
        3 => atobe_round_trip(cfg),
        4 => reorder_algebra(cfg),
        5 => nu_set_structure(cfg),
        6 => tuples_vs_oracle(cfg),
        7 => multiplicity_free(cfg),
        8 => unitary_irreducibility(cfg),
        9 => adjacent_points(cfg),
        10 => tempered_packets(cfg),
        11 => gl_calculus(cfg),
        12 => aubert_dual(cfg),
        13 => deformation(cfg),
        _ => panic!("no criterion {id}"),
    }
}

// ---------------------------------------------------------------------------
// Generators

/// The orthogonal label `r` of rank 1.
pub fn orth() -> CuspidalLabel {
    CuspidalLabel::new("r", 1, DualityType::Orthogonal).expect("valid label")
}

/// The symplectic label `q` of rank 2.
pub fn symp() -> CuspidalLabel {
    CuspidalLabel::new("q", 2, DualityType::Symplectic).expect("valid label")
}

pub const GROUPS: [GroupKind; 2] = [GroupKind::Symplectic, GroupKind::OddOrthogonal];

/// Whether good-parity segments for `rho` in `group` have integral end points.
pub fn integral_lattice(group: GroupKind, rho: &CuspidalLabel) -> bool {
    summand_good_parity(group, rho, 1, 1)
}

/// All `[A,B]` on one lattice with `0 <= 2A <= max_a2` and `A + B >= 0`,
/// in standard order (`B` ascending, then `A` descending).
pub fn pool(integral: bool, max_a2: i64, nonneg: bool) -> Vec<(HalfInt, HalfInt)> {
    let mut v = Vec::new();
    let start = if integral { 0 } else { 1 };
    for a2 in (start..=max_a2).step_by(2) {
        for b2 in (-a2..=a2).step_by(2) {
            if !nonneg || b2 >= 0 {
                v.push((HalfInt::from_twice(a2), HalfInt::from_twice(b2)));
            }
        }
    }
    v.sort_by_key(|&(a, b)| (b, -a));
    v
}

fn seg_len(a: HalfInt, b: HalfInt) -> i64 {
    (a - b).twice() / 2 + 1
}

fn ext(a: HalfInt, b: HalfInt, mu: i64) -> ExtSegment {
    ExtSegment::new(a, b, mu).expect("generated segments are valid")
}

/// Calls `f` on every strict `mu`-vector over the given segments.
pub fn for_each_mu(segs: &[(HalfInt, HalfInt)], f: &mut dyn FnMut(&[ExtSegment])) {
    fn rec(segs: &[(HalfInt, HalfInt)], cur: &mut Vec<ExtSegment>, f: &mut dyn FnMut(&[ExtSegment])) {
        let i = cur.len();
        if i == segs.len() {
            f(cur);
            return;
        }
        let (a, b) = segs[i];
        let len = seg_len(a, b);
        for mu in (-len..=len).step_by(2) {
            cur.push(ext(a, b, mu));
            rec(segs, cur, f);
            cur.pop();
        }
    }
    rec(segs, &mut Vec::with_capacity(segs.len()), f);
}

/// Calls `f` on every non-decreasing index sequence of length `1..=max_n` into `0..len`.
pub fn for_each_multiset(len: usize, max_n: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(len: usize, max_n: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if !cur.is_empty() {
            f(cur);
        }
        if cur.len() == max_n {
            return;
        }
        let from = cur.last().copied().unwrap_or(0);
        for i in from..len {
            cur.push(i);
            rec(len, max_n, cur, f);
            cur.pop();
        }
    }
    rec(len, max_n, &mut Vec::new(), f);
}

/// Calls `f` on every index sequence of length exactly `n` into `0..len`.
pub fn for_each_sequence(len: usize, n: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(len: usize, n: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == n {
            f(cur);
            return;
        }
        for i in 0..len {
            cur.push(i);
            rec(len, n, cur, f);
            cur.pop();
        }
    }
    rec(len, n, &mut Vec::new(), f);
}

fn single(group: GroupKind, rho: &CuspidalLabel, segs: &[ExtSegment]) -> ExtMultiSegment {
    ExtMultiSegment::new(group).with_part(rho.clone(), segs.to_vec())
}

fn random_part(rng: &mut ChaCha8Rng, pool: &[(HalfInt, HalfInt)], max_n: usize, sorted: bool) -> Vec<ExtSegment> {
    let n = rng.gen_range(0..=max_n);
    let mut shapes: Vec<(HalfInt, HalfInt)> = (0..n).map(|_| pool[rng.gen_range(0..pool.len())]).collect();
    if sorted {
        shapes.sort_by_key(|&(a, b)| (b, -a));
    }
    shapes
        .into_iter()
        .map(|(a, b)| {
            let len = seg_len(a, b);
            ext(a, b, -len + 2 * rng.gen_range(0..=len))
        })
        .collect()
}

/// Parameters of a random instance: group, labels, `2A` bound and part length bound.
#[derive(Clone, Copy)]
struct Shape {
    max_a2: i64,
    max_n: usize,
    nonneg: bool,
}

fn random_labels(rng: &mut ChaCha8Rng) -> Vec<CuspidalLabel> {
    if rng.gen_bool(0.25) {
        vec![orth(), symp()]
    } else {
        vec![orth()]
    }
}

/// A random standard `S` with `pi(S) != 0` (rejection sampling).
fn random_srep(rng: &mut ChaCha8Rng, group: GroupKind, labels: &[CuspidalLabel], shape: Shape) -> ExtMultiSegment {
    loop {
        let mut s = ExtMultiSegment::new(group);
        for rho in labels {
            let p = pool(integral_lattice(group, rho), shape.max_a2, shape.nonneg);
            s.set_part(rho.clone(), random_part(rng, &p, shape.max_n, true));
        }
        if s.validate().is_admissible() && exms::in_srep(&s) == Ok(true) {
            return s;
        }
    }
}

fn random_group(rng: &mut ChaCha8Rng) -> GroupKind {
    GROUPS[rng.gen_range(0..2)]
}

/// A random `u_rho(c, d)` of good parity for `group`, `rho` drawn from `labels`.
fn random_factor(rng: &mut ChaCha8Rng, group: GroupKind, labels: &[CuspidalLabel], max_c: u32, max_d: u32) -> SpehFactor {
    loop {
        let rho = labels.choose(rng).expect("nonempty").clone();
        let (c, d) = (rng.gen_range(1..=max_c), rng.gen_range(1..=max_d));
        if summand_good_parity(group, &rho, c, d) {
            return SpehFactor::new(rho, c, d).expect("positive");
        }
    }
}

fn psi_multiset(s: &ExtMultiSegment) -> Vec<(String, u32, u32)> {
    let mut v: Vec<(String, u32, u32)> = s
        .psi()
        .map(|p| p.summands.into_iter().map(|x| (x.rho.name().to_string(), x.a, x.b)).collect())
        .unwrap_or_default();
    v.sort();
    v
}

/// `psi_S` plus every factor twice.
fn induced_psi(s: &ExtMultiSegment, factors: &[SpehFactor]) -> Vec<(String, u32, u32)> {
    let mut v = psi_multiset(s);
    for f in factors {
        v.push((f.rho.name().to_string(), f.c, f.d));
        v.push((f.rho.name().to_string(), f.c, f.d));
    }
    v.sort();
    v
}

fn show(s: &ExtMultiSegment) -> String {
    let parts: Vec<String> = s
        .parts
        .iter()
        .map(|(rho, p)| format!("{rho}: {}", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("{} {{ {} }}", s.group, parts.join("; "))
}

fn show_factors(fs: &[SpehFactor]) -> String {
    fs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(" x ")
}

// ---------------------------------------------------------------------------
// 1-4: extended multi-segments

/// Exhaustive `in_srep` against the reorder search on homogeneous standard
/// parameters with `n <= 4` and `A <= 7/2`.
fn nonvanishing_equivalence(cfg: &Config) -> Report {
    let max_n = cfg.pick(4, 3);
    let mut t = Tally::default();
    let mut in_rep = 0u64;
    for group in GROUPS {
        let rho = orth();
        let p = pool(integral_lattice(group, &rho), 7, false);
        for_each_multiset(p.len(), max_n, &mut |idx| {
            let shapes: Vec<(HalfInt, HalfInt)> = idx.iter().map(|&i| p[i]).collect();
            for_each_mu(&shapes, &mut |segs| {
                let s = single(group, &rho, segs);
                if !s.validate().is_admissible() {
                    return;
                }
                let fast = exms::in_srep(&s);
                let slow = exms::in_rep_bruteforce(&s, cfg.max_states);
                in_rep += u64::from(fast == Ok(true));
                t.check(fast.is_ok() && fast == slow, || format!("{}: in_srep {fast:?}, bruteforce {slow:?}", show(&s)));
            });
        });
    }
    let detail = format!("n <= {max_n}, A <= 7/2, both lattices; {in_rep} in Rep");
    t.report(1, "non-vanishing criterion vs reorder search", cfg.pick(100_000, 1), detail)
}

/// `necessary_condition = nec_atobe_cases` on non-negative two-segment parts.
fn necessary_condition_cases(_cfg: &Config) -> Report {
    let mut t = Tally::default();
    for group in GROUPS {
        let rho = orth();
        let p = pool(integral_lattice(group, &rho), 9, true);
        for &x in &p {
            for &y in &p {
                if y.0 < x.0 && y.1 < x.1 {
                    continue;
                }
                for_each_mu(&[x, y], &mut |segs| {
                    let s = single(group, &rho, segs);
                    let nec = exms::necessary_condition(&s);
                    let cases = exms::nec_atobe_cases(&s);
                    t.check(cases == Ok(nec), || format!("{}: nec {nec}, cases {cases:?}", show(&s)));
                });
            }
        }
    }
    t.report(2, "necessary condition vs case analysis", 1, "A <= 9/2, B >= 0, all covered pairs".into())
}

/// `F^{-1}(F(S)) = S` and transport of the sign condition on random instances.
fn atobe_round_trip(cfg: &Config) -> Report {
    let mut rng = cfg.rng(3);
    let mut t = Tally::default();
    let mut signs = [0u64; 2];
    for _ in 0..cfg.pick(10_000, 1_000) {
        let group = random_group(&mut rng);
        let labels = random_labels(&mut rng);
        let mut s = ExtMultiSegment::new(group);
        for rho in &labels {
            let p = pool(integral_lattice(group, rho), 7, false);
            let sorted = rng.gen_bool(0.5);
            s.set_part(rho.clone(), random_part(&mut rng, &p, 5, sorted));
        }
        let sign = s.validate().sign_condition;
        signs[usize::from(sign)] += 1;
        let ok = match exms::to_atobe(&s) {
            Ok(e) => exms::from_atobe(&e).as_ref() == Ok(&s) && exms::atobe_sign_condition(&e) == sign,
            Err(_) => false,
        };
        t.check(ok, || show(&s));
    }
    let detail = format!("{} with the sign condition, {} without", signs[1], signs[0]);
    t.report(3, "Atobe symbol round trip and sign transport", cfg.pick(10_000, 1), detail)
}

/// On every reorder orbit of a nested family in `Rep`: `R_i^2 = id`, one
/// `mu`-vector per order of the segments, and every order reached.
fn reorder_algebra(cfg: &Config) -> Report {
    let max_n = cfg.pick(5, 4);
    let mut t = Tally::default();
    let mut states = 0u64;
    for group in GROUPS {
        let rho = orth();
        for n in 2..=max_n {
            let p = pool(integral_lattice(group, &rho), 7, false);
            for_each_multiset(p.len(), n, &mut |idx| {
                if idx.len() != n {
                    return;
                }
                let shapes: Vec<(HalfInt, HalfInt)> = idx.iter().map(|&i| p[i]).collect();
                // Standard order puts B ascending, so nesting forces A descending.
                if shapes.windows(2).any(|w| w[1].0 > w[0].0) {
                    return;
                }
                let arrangements = distinct_permutations(&shapes);
                for_each_mu(&shapes, &mut |segs| {
                    let s = single(group, &rho, segs);
                    if !s.validate().is_admissible() || exms::in_srep(&s) != Ok(true) {
                        return;
                    }
                    let res = check_orbit(&s, &rho, cfg.max_states, arrangements);
                    states += res.as_ref().map_or(0, |&k| k as u64);
                    t.check(res.is_ok(), || format!("{}: {}", show(&s), res.unwrap_err()));
                });
            });
        }
    }
    let detail = format!("nested families, n <= {max_n}, A <= 7/2; {states} orbit states");
    t.report(4, "reorder involution and mu well-definedness", 1, detail)
}

fn distinct_permutations(shapes: &[(HalfInt, HalfInt)]) -> usize {
    let mut counts: BTreeMap<(HalfInt, HalfInt), usize> = BTreeMap::new();
    for s in shapes {
        *counts.entry(*s).or_default() += 1;
    }
    let fact = |k: usize| (1..=k).product::<usize>();
    counts.values().fold(fact(shapes.len()), |acc, &m| acc / fact(m))
}

fn check_orbit(s: &ExtMultiSegment, rho: &CuspidalLabel, max_states: usize, arrangements: usize) -> Result<usize, String> {
    let orbit = exms::reorder_orbit(s, rho, max_states).map_err(|e| e.to_string())?;
    let mut by_shape: BTreeMap<Vec<(HalfInt, HalfInt)>, Vec<i64>> = BTreeMap::new();
    for state in &orbit {
        let shape: Vec<(HalfInt, HalfInt)> = state.iter().map(|x| (x.big_a, x.big_b)).collect();
        let mus: Vec<i64> = state.iter().map(|x| x.mu).collect();
        if let Some(prev) = by_shape.insert(shape, mus.clone()) {
            return Err(format!("two mu-vectors {prev:?} and {mus:?} on one order"));
        }
        let here = single(s.group, rho, state);
        for i in 1..state.len() {
            let back = exms::reorder(&here, rho, i).and_then(|r| exms::reorder(&r, rho, i));
            if back.as_ref() != Ok(&here) {
                return Err(format!("R_{i} twice does not return {state:?}"));
            }
        }
    }
    if by_shape.len() != arrangements {
        return Err(format!("{} orders reached, {arrangements} expected", by_shape.len()));
    }
    Ok(orbit.len())
}

// ---------------------------------------------------------------------------
// 5-9: induction

const SREP_SHAPE: Shape = Shape { max_a2: 7, max_n: 3, nonneg: false };

fn nu_set_structure(cfg: &Config) -> Report {
    let mut rng = cfg.rng(5);
    let mut t = Tally::default();
    let mut sizes: BTreeMap<usize, u64> = BTreeMap::new();
    for _ in 0..cfg.pick(10_000, 1_000) {
        let group = random_group(&mut rng);
        let labels = random_labels(&mut rng);
        let s = random_srep(&mut rng, group, &labels, SREP_SHAPE);
        let f = random_factor(&mut rng, group, &labels, 6, 4);
        let res = induction::nu_set_single(&s, &f).and_then(|n| Ok((induction::decompose_single(&s, &f)?, n)));
        let ok = match &res {
            Ok((outs, n)) => {
                *sizes.entry(n.len()).or_default() += 1;
                let progression = !n.is_empty()
                    && n.windows(2).all(|w| w[1] - w[0] == 2)
                    && n[n.len() - 1] - n[0] == 2 * (n.len() as i64 - 1)
                    && n.iter().all(|nu| (nu - i64::from(f.d)).rem_euclid(2) == 0);
                let psi = induced_psi(&s, std::slice::from_ref(&f));
                progression
                    && (n.len() == 1) == (outs.len() == 1)
                    && outs.len() == n.len()
                    && outs.iter().all(|o| psi_multiset(o) == psi)
            }
            Err(_) => false,
        };
        t.check(ok, || format!("{} with {f}: {:?}", show(&s), res.map(|r| r.1)));
    }
    let detail = format!("|N| distribution {sizes:?}");
    t.report(5, "nu-set progressions and singletons", cfg.pick(10_000, 1), detail)
}

/// Instances for the multi-insertion criteria: `k <= 3`, `d_i <= 3`, `C_i <= 7/2`.
fn multi_instances(cfg: &Config) -> Vec<(ExtMultiSegment, Vec<SpehFactor>)> {
    let mut rng = cfg.rng(6);
    let shape = Shape { max_a2: 7, max_n: 2, nonneg: false };
    (0..cfg.pick(10_000, 300))
        .map(|_| {
            let group = random_group(&mut rng);
            let labels = random_labels(&mut rng);
            let s = random_srep(&mut rng, group, &labels, shape);
            let k = rng.gen_range(1..=3);
            let fs = (0..k)
                .map(|_| loop {
                    let f = random_factor(&mut rng, group, &labels, 8, 3);
                    if f.big_c() <= HalfInt::from_twice(7) {
                        break f;
                    }
                })
                .collect();
            (s, fs)
        })
        .collect()
}

/// The tuples whose fully inserted parameter is non-vanishing, by search
/// over a grid wider than the strict range.
pub fn oracle_tuples(s: &ExtMultiSegment, factors: &[SpehFactor]) -> Vec<Vec<i64>> {
    let ranges: Vec<Vec<i64>> = factors
        .iter()
        .map(|f| {
            let d = i64::from(f.d);
            (-d - 2..=d + 2).step_by(2).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        s: &ExtMultiSegment,
        fs: &[SpehFactor],
        ranges: &[Vec<i64>],
        cur: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if cur.len() == ranges.len() {
            let full = induction::insert_all(s, fs, cur);
            if full.is_ok_and(|x| exms::in_srep(&x) == Ok(true)) {
                out.push(cur.clone());
            }
            return;
        }
        for &nu in &ranges[cur.len()] {
            cur.push(nu);
            rec(s, fs, ranges, cur, out);
            cur.pop();
        }
    }
    rec(s, factors, &ranges, &mut cur, &mut out);
    out
}

fn tuples_vs_oracle(cfg: &Config) -> Report {
    let mut t = Tally::default();
    let mut total = 0usize;
    for (s, fs) in multi_instances(cfg) {
        let got = induction::nu_tuples_multi(&s, &fs);
        let want = oracle_tuples(&s, &fs);
        total += want.len();
        t.check(got.as_ref() == Ok(&want), || format!("{} with {}: {got:?} vs {want:?}", show(&s), show_factors(&fs)));
    }
    let detail = format!("k <= 3, d <= 3, A <= 7/2; {total} tuples in total");
    t.report(6, "multi-insertion tuples vs brute force", cfg.pick(1_000, 1), detail)
}

/// Random all-unitary instances of good parity.
fn unitary_instances(cfg: &Config) -> Vec<(ExtMultiSegment, Vec<EssSpeh>)> {
    let mut rng = cfg.rng(8);
    (0..cfg.pick(1_000, 200))
        .map(|_| {
            let group = random_group(&mut rng);
            let labels = random_labels(&mut rng);
            let s = random_srep(&mut rng, group, &labels, SREP_SHAPE);
            let k = rng.gen_range(1..=3);
            let us = (0..k)
                .map(|_| {
                    let f = random_factor(&mut rng, group, &labels, 6, 3);
                    EssSpeh::speh(f.rho, f.c, f.d).expect("positive")
                })
                .collect();
            (s, us)
        })
        .collect()
}

fn speh_factors(us: &[EssSpeh]) -> Vec<SpehFactor> {
    us.iter().map(|u| SpehFactor::new(u.rho().clone(), u.a(), u.b()).expect("positive")).collect()
}

fn multiplicity_free(cfg: &Config) -> Report {
    let mut t = Tally::default();
    let mut outputs = 0usize;
    let multi = multi_instances(cfg);
    let unitary = unitary_instances(cfg).into_iter().map(|(s, us)| (s, speh_factors(&us)));
    for (s, fs) in multi.into_iter().chain(unitary) {
        let res = induction::decompose_multi(&s, &fs);
        let ok = match &res {
            Ok(outs) => {
                outputs += outs.len();
                let distinct: BTreeSet<&ExtMultiSegment> = outs.iter().collect();
                let psi = induced_psi(&s, &fs);
                distinct.len() == outs.len()
                    && outs.iter().all(|o| {
                        exms::is_standard(o) && exms::in_srep(o) == Ok(true) && psi_multiset(o) == psi
                    })
            }
            Err(_) => false,
        };
        t.check(ok, || format!("{} with {}: {res:?}", show(&s), show_factors(&fs)));
    }
    let detail = format!("{outputs} constituents, all distinct standard forms in Rep with the expected psi");
    t.report(7, "multiplicity-free decompositions", cfg.pick(1_000, 1), detail)
}

fn unitary_irreducibility(cfg: &Config) -> Report {
    let mut t = Tally::default();
    let mut irreducible = 0u64;
    for (s, us) in unitary_instances(cfg) {
        let report = induction::main_irreducibility(&us, &s, &BTreeMap::new());
        let count = induction::decompose_multi(&s, &speh_factors(&us)).map(|v| v.len());
        let ok = match (&report, &count) {
            (Ok(r), Ok(n)) => {
                irreducible += u64::from(r.verdict == IrrVerdict::Irreducible);
                !matches!(r.verdict, IrrVerdict::Unknown(_)) && (r.verdict == IrrVerdict::Irreducible) == (*n == 1)
            }
            _ => false,
        };
        t.check(ok, || {
            let shown: Vec<String> = us.iter().map(|u| u.to_string()).collect();
            format!("{} with {}: {:?}, {count:?} constituents", show(&s), shown.join(" x "), report.map(|r| r.verdict))
        });
    }
    let detail = format!("{irreducible} irreducible");
    t.report(8, "unitary irreducibility vs constituent count", cfg.pick(1_000, 1), detail)
}

fn adjacent_points(cfg: &Config) -> Report {
    let mut rng = cfg.rng(9);
    let mut t = Tally::default();
    let target = cfg.pick(1_000, 100);
    let mut attempts = 0u64;
    let mut by_k = [0u64; 4];
    while t.instances < target && attempts < 1_000_000 {
        attempts += 1;
        let group = random_group(&mut rng);
        let labels = random_labels(&mut rng);
        let s = random_srep(&mut rng, group, &labels, SREP_SHAPE);
        let k = rng.gen_range(1..=3);
        let fs: Vec<SpehFactor> = (0..k).map(|_| random_factor(&mut rng, group, &labels, 6, 4)).collect();
        let distinct: BTreeSet<(u32, u32)> = fs.iter().map(|f| (f.c, f.d)).collect();
        if distinct.len() != fs.len() {
            continue;
        }
        if !fs.iter().all(|f| induction::nu_set_single(&s, f).is_ok_and(|n| n.len() >= 2)) {
            continue;
        }
        by_k[k] += 1;
        let res = induction::adjacent_pair_exists(&s, &fs);
        t.check(res == Ok(true), || format!("{} with {}: {res:?}", show(&s), show_factors(&fs)));
    }
    let detail = format!("k = 1, 2, 3: {:?}; {attempts} candidates drawn", &by_k[1..]);
    t.report(9, "adjacent lattice points", cfg.pick(1_000, 1), detail)
}

// ---------------------------------------------------------------------------
// 10: packets

fn tempered_packets(cfg: &Config) -> Report {
    let max_k = cfg.pick(5, 3);
    let mut t = Tally::default();
    for group in GROUPS {
        let mut candidates = Vec::new();
        for rho in [orth(), symp()] {
            for a in 1..=10 {
                if summand_good_parity(group, &rho, a, 1) {
                    candidates.push(Summand::new(rho.clone(), a, 1).expect("positive"));
                }
            }
        }
        let n = candidates.len();
        for mask in 1u32..(1 << n) {
            let k = mask.count_ones();
            if k as usize > max_k {
                continue;
            }
            let summands: Vec<Summand> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| candidates[i].clone()).collect();
            let psi = ArthurParam::new(group, summands);
            let count = exms::enumerate_packet(&psi).map(|v| v.len() as u64);
            let order = component_group_order(&psi);
            let expected = 1u64 << (k - 1);
            t.check(count == Ok(expected) && order == Ok(expected), || {
                format!("{group} {:?}: packet {count:?}, order {order:?}, expected {expected}", psi.summands)
            });
        }
    }
    t.report(10, "tempered packet sizes", 1, format!("k <= {max_k}, a <= 10, two labels"))
}

// ---------------------------------------------------------------------------
// 11: GL calculus

fn ladders(rho: &CuspidalLabel, integral: bool, lo2: i64, hi2: i64, max_k: usize) -> Vec<Ladder> {
    let start = if integral { lo2 + (lo2.rem_euclid(2)) } else { lo2 + 1 - lo2.rem_euclid(2) };
    let points: Vec<HalfInt> = (start..=hi2).step_by(2).map(HalfInt::from_twice).collect();
    let mut segs = Vec::new();
    for &x in &points {
        for &y in &points {
            if y <= x {
                segs.push((x, y));
            }
        }
    }
    let mut out = vec![Ladder::trivial(rho.clone())];
    fn rec(segs: &[(HalfInt, HalfInt)], cur: &mut Vec<(HalfInt, HalfInt)>, max_k: usize, rho: &CuspidalLabel, out: &mut Vec<Ladder>) {
        if cur.len() == max_k {
            return;
        }
        for &(x, y) in segs {
            if cur.last().map_or(true, |&(px, py)| x > px && y > py) {
                cur.push((x, y));
                out.push(Ladder::new(rho.clone(), cur.clone()).expect("increasing"));
                rec(segs, cur, max_k, rho, out);
                cur.pop();
            }
        }
    }
    rec(&segs, &mut Vec::new(), max_k, rho, &mut out);
    out
}

fn degree_ok(sum: &FormalSum<GLTerm>, l: &Ladder) -> bool {
    !sum.is_empty() && sum.terms().all(|t| t.left_rank() + t.right.rank() == l.rank())
}

/// Each row `x_j -> x_j - 1`, dropping rows that become empty.
fn column_shift(l: &Ladder) -> Ladder {
    let segs: Vec<(HalfInt, HalfInt)> = l.segments().iter().filter(|&&(x, y)| x > y).map(|&(x, y)| (x - 1, y)).collect();
    Ladder::new(l.rho().clone(), segs).expect("shifted ladder")
}

/// One row of the grid of `u` applied to the current ladder, through both
/// `M`- and left derivatives. Returns the multiplicities and the result if
/// both agree on a single ladder.
fn row_step(current: &Ladder, row: &[gl::DerivativeSymbol]) -> Option<(Vec<u32>, Ladder)> {
    let (ks, next) = gl::derivative_sequence(&FormalSum::single(current.clone()), row).ok()?;
    let next = next.as_single()?.clone();
    let mut l = current.clone();
    let mut lks = Vec::new();
    for sigma in row {
        let d = gl::max_left_derivative(&l, sigma).ok()?;
        lks.push(d.k);
        l = d.result.as_single()?.clone();
    }
    (lks == ks && l == next).then_some((ks, next))
}

fn gl_calculus(cfg: &Config) -> Report {
    let mut t = Tally::default();
    let mut counts = [0u64; 4];
    let mut exceptional_rows = 0u64;
    // Degree conservation.
    let rho2 = CuspidalLabel::new("r", 2, DualityType::Orthogonal).expect("valid label");
    for rho in [orth(), rho2] {
        for integral in [true, false] {
            for l in ladders(&rho, integral, -4, 6, cfg.pick(4, 2)) {
                counts[0] += 1;
                let ok = degree_ok(&gl::mstar_ladder(&l), &l)
                    && degree_ok(&gl::mu_star_gl_terms(&l), &l)
                    && degree_ok(&gl::mstar_full(&l), &l);
                t.check(ok, || format!("degree not conserved on {l}"));
            }
        }
    }
    let rho = orth();
    let halves: Vec<HalfInt> = (1..=4).map(HalfInt::from_twice).collect();
    // Single rows under the hypotheses A + C > 0, D > 0.
    for b in 1..=4u32 {
        for a in 1..=8u32 {
            for &s in &halves {
                let u = EssSpeh::new(rho.clone(), a, b, s).expect("positive");
                let grid = DerivGrid::for_speh(&u).expect("s > 0");
                let symbols = grid.symbols().expect("self-dual");
                let indicators = grid.indicators();
                let mut current = Ladder::from_speh(&u);
                for (row, ind) in symbols.iter().zip(&indicators) {
                    let segs = current.segments();
                    if segs.len() != b as usize {
                        break;
                    }
                    let (big_a, big_c, big_d) = (segs[0].1, segs[segs.len() - 1].1, segs[segs.len() - 1].0);
                    if !(big_a + big_c > 0 && big_d > 0) {
                        break;
                    }
                    counts[1] += 1;
                    // The Z[0,1] step takes 0 and then 1 derivative.
                    exceptional_rows += u64::from(ind.contains(&0));
                    let expected = column_shift(&current);
                    let step = row_step(&current, row);
                    t.check(step.as_ref() == Some(&(ind.clone(), expected.clone())), || {
                        format!("row on {current} for {u}: {step:?}, expected {ind:?} and {expected}")
                    });
                    current = expected;
                }
                // Full grids of small type end at u(a - 2s, b).
                if u.classify() == Ok(SpehType::Small) {
                    counts[2] += 1;
                    let r = gl::derivative_chain(&FormalSum::single(Ladder::from_speh(&u)), &grid);
                    let rest = EssSpeh::speh(rho.clone(), a - s.twice() as u32, b).expect("positive");
                    let ok = r.as_ref().is_ok_and(|r| {
                        r.mults == indicators && r.result.as_single() == Some(&Ladder::from_speh(&rest))
                    });
                    t.check(ok, || format!("grid of {u}: {r:?}"));
                }
            }
        }
    }
    // The split identity for pairs of small type.
    let small: Vec<EssSpeh> = (1..=8u32)
        .flat_map(|a| (1..=3u32).map(move |b| (a, b)))
        .flat_map(|(a, b)| halves.iter().map(move |&s| (a, b, s)))
        .filter_map(|(a, b, s)| EssSpeh::new(orth(), a, b, s).ok())
        .filter(|u| u.classify() == Ok(SpehType::Small))
        .collect();
    for u1 in &small {
        for u2 in &small {
            if u1.big_b() + u1.s() > u2.big_b() + u2.s() {
                continue;
            }
            counts[3] += 1;
            let grid = DerivGrid::for_speh(u2).expect("s > 0");
            let mults = |u: &EssSpeh| {
                gl::derivative_chain(&FormalSum::single(Ladder::from_speh(u)), &grid).map(|r| r.mults)
            };
            let ok = match (u1.split(), mults(u1)) {
                (Ok((x, y)), Ok(m)) => match (mults(&x), mults(&y)) {
                    (Ok(mx), Ok(my)) => m
                        .iter()
                        .zip(mx.iter().zip(&my))
                        .all(|(r, (rx, ry))| r.iter().zip(rx.iter().zip(ry)).all(|(v, (p, q))| *v == p + q)),
                    _ => false,
                },
                _ => false,
            };
            t.check(ok, || format!("split identity fails for {u1} on the grid of {u2}"));
        }
    }
    let detail = format!(
        "{} ladders, {} single rows ({exceptional_rows} through exponent 0), {} small-type grids, {} split pairs",
        counts[0], counts[1], counts[2], counts[3]
    );
    t.report(11, "GL derivatives and Jacquet modules", 1, detail)
}

// ---------------------------------------------------------------------------
// 12-13: duality and deformation

fn swapped_psi(s: &ExtMultiSegment) -> Vec<(String, u32, u32)> {
    let mut v: Vec<(String, u32, u32)> = psi_multiset(s).into_iter().map(|(r, a, b)| (r, b, a)).collect();
    v.sort();
    v
}

fn aubert_dual(cfg: &Config) -> Report {
    let mut rng = cfg.rng(12);
    let mut t = Tally::default();
    let mut literal_sign_failures = 0u64;
    for _ in 0..cfg.pick(10_000, 1_000) {
        let group = random_group(&mut rng);
        let labels = random_labels(&mut rng);
        let s = random_srep(&mut rng, group, &labels, Shape { max_a2: 7, max_n: 4, nonneg: false });
        if exms::aubert_dual_literal(&s).is_ok_and(|l| !l.validate().sign_condition) {
            literal_sign_failures += 1;
        }
        let d = exms::aubert_dual(&s);
        let ok = match &d {
            Ok(d) => {
                d.validate().is_admissible()
                    && exms::in_srep(d) == Ok(true)
                    && psi_multiset(d) == swapped_psi(&s)
                    && exms::aubert_dual(d).as_ref() == exms::standard_form(&s).as_ref()
            }
            Err(_) => false,
        };
        t.check(ok, || format!("{}: {:?}", show(&s), d.map(|d| show(&d))));
    }
    let detail = format!("the uncorrected formula breaks the sign condition on {literal_sign_failures}");
    t.report(12, "Aubert dual", cfg.pick(10_000, 1), detail)
}

fn equality_case(p: &ExtSegment, q: &ExtSegment) -> bool {
    q.big_a >= p.big_a
        && q.big_b >= p.big_b
        && (q.big_a - p.big_a).abs() + (q.big_b - p.big_b).abs() == HalfInt::from_int((q.mu - p.mu).abs())
}

fn deformation(cfg: &Config) -> Report {
    let max_n = cfg.pick(4, 2);
    let mut t = Tally::default();
    let mut dropped = 0u64;
    for group in GROUPS {
        let rho = orth();
        let p = pool(integral_lattice(group, &rho), 7, false);
        for n in 2..=max_n {
            for_each_sequence(p.len(), n, &mut |idx| {
                let shapes: Vec<(HalfInt, HalfInt)> = idx.iter().map(|&i| p[i]).collect();
                if !shapes.windows(2).any(|w| w[1].0 >= w[0].0 && w[1].1 >= w[0].1) {
                    return;
                }
                for_each_mu(&shapes, &mut |segs| {
                    if !segs.windows(2).any(|w| equality_case(&w[0], &w[1])) {
                        return;
                    }
                    let s = single(group, &rho, segs);
                    if !s.validate().is_admissible() || exms::in_srep(&s) != Ok(true) {
                        return;
                    }
                    for k in 2..=n {
                        if !equality_case(&segs[k - 2], &segs[k - 1]) {
                            continue;
                        }
                        let d = exms::deform(&s, &rho, k);
                        let ok = d.as_ref().is_ok_and(|d| {
                            d.validate().is_admissible()
                                && exms::in_srep(d) == Ok(true)
                                && d.dimension() == s.dimension()
                        });
                        if d.as_ref().is_ok_and(|d| d.len() < s.len()) {
                            dropped += 1;
                        }
                        t.check(ok, || format!("{} at k = {k}: {:?}", show(&s), d.map(|d| show(&d))));
                    }
                });
            });
        }
    }
    let detail = format!("n <= {max_n}, A <= 7/2, every admissible order; {dropped} drop a segment");
    t.report(13, "deformation", 1, detail)
}
