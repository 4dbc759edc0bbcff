//! Ladder representations and the Jacquet-module enumerations built on them.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::formal_sum::FormalSum;
use crate::half_int::HalfInt;
use crate::model::{CuspidalLabel, EssSpeh, Segment};

/// `L([x_1,y_1]_rho, ..., [x_k,y_k]_rho)` with `x_1 < ... < x_k` and `y_1 < ... < y_k`.
///
/// The empty ladder is the trivial representation of `GL_0`; all empty
/// ladders are equal whatever their label.
#[derive(Clone)]
pub struct Ladder {
    rho: CuspidalLabel,
    segs: Vec<(HalfInt, HalfInt)>,
}

impl Ladder {
    pub fn new(rho: CuspidalLabel, segs: Vec<(HalfInt, HalfInt)>) -> Result<Self> {
        for &(x, y) in &segs {
            if x < y || !x.same_lattice(y) {
                return Err(Error::InvalidSegment { x, y });
            }
        }
        if let Some(&(x0, _)) = segs.first() {
            if segs.iter().any(|&(x, _)| !x.same_lattice(x0)) {
                return Err(Error::NotLadder);
            }
        }
        if segs.windows(2).any(|w| w[0].0 >= w[1].0 || w[0].1 >= w[1].1) {
            return Err(Error::NotLadder);
        }
        Ok(Ladder { rho, segs })
    }

    /// Like [`Ladder::new`], after dropping the trivial segments `[x, x+1]`.
    pub fn from_bounds(rho: CuspidalLabel, segs: impl IntoIterator<Item = (HalfInt, HalfInt)>) -> Result<Self> {
        let segs = segs.into_iter().filter(|&(x, y)| y != x + 1).collect();
        Self::new(rho, segs)
    }

    pub fn trivial(rho: CuspidalLabel) -> Self {
        Ladder { rho, segs: Vec::new() }
    }

    pub fn from_speh(u: &EssSpeh) -> Self {
        Ladder { rho: u.rho().clone(), segs: u.segments() }
    }

    pub fn rho(&self) -> &CuspidalLabel {
        &self.rho
    }

    /// The pairs `(x_i, y_i)` in increasing order.
    pub fn segments(&self) -> &[(HalfInt, HalfInt)] {
        &self.segs
    }

    pub fn to_segments(&self) -> Vec<Segment> {
        self.segs
            .iter()
            .map(|&(x, y)| Segment::new(self.rho.clone(), x, y).expect("ladder segments are valid"))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.segs.is_empty()
    }

    /// Number of segments.
    pub fn len(&self) -> usize {
        self.segs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    /// `n` such that this is a representation of `GL_n`.
    pub fn rank(&self) -> u64 {
        let cells: i64 = self.segs.iter().map(|&(x, y)| (x - y).twice() / 2 + 1).sum();
        u64::from(self.rho.d()) * cells as u64
    }

    /// The cuspidal support as a sorted list of `(label, exponent)`.
    pub fn support(&self) -> Vec<(CuspidalLabel, HalfInt)> {
        let mut out = Vec::new();
        for &(x, y) in &self.segs {
            let mut e = y;
            while e <= x {
                out.push((self.rho.clone(), e));
                e += 1;
            }
        }
        out.sort();
        out
    }

    /// `L([-y_k,-x_k]_{rho^vee}, ..., [-y_1,-x_1]_{rho^vee})`.
    pub fn contragredient(&self) -> Ladder {
        Ladder {
            rho: self.rho.dual(),
            segs: self.segs.iter().rev().map(|&(x, y)| (-y, -x)).collect(),
        }
    }

    /// The tuples `c` with `c_1 < ... < c_k`, `y_i - 1 <= c_i <= x_i`, `c_i - x_i` integral.
    pub fn lad_tuples(&self) -> Vec<Vec<HalfInt>> {
        let mut out = Vec::new();
        self.for_each_tuple(&mut |_, _| true, &mut |c| out.push(c.to_vec()));
        out
    }

    /// Visits the tuples of [`Ladder::lad_tuples`] for which `keep(i, c_i)` holds at every index.
    pub(crate) fn for_each_tuple(
        &self,
        keep: &mut dyn FnMut(usize, HalfInt) -> bool,
        visit: &mut dyn FnMut(&[HalfInt]),
    ) {
        let mut c = Vec::with_capacity(self.segs.len());
        self.tuple_rec(0, &mut c, keep, visit);
    }

    fn tuple_rec(
        &self,
        i: usize,
        c: &mut Vec<HalfInt>,
        keep: &mut dyn FnMut(usize, HalfInt) -> bool,
        visit: &mut dyn FnMut(&[HalfInt]),
    ) {
        if i == self.segs.len() {
            visit(c);
            return;
        }
        let (x, y) = self.segs[i];
        let mut ci = y - 1;
        if let Some(&prev) = c.last() {
            ci = ci.max(prev + 1);
        }
        while ci <= x {
            if keep(i, ci) {
                c.push(ci);
                self.tuple_rec(i + 1, c, keep, visit);
                c.pop();
            }
            ci += 1;
        }
    }

    /// Visits the pairs `(c, d)` of tuples with `c_i <= d_i` for which
    /// `keep(i, c_i, d_i)` holds at every index.
    pub(crate) fn for_each_pair(
        &self,
        keep: &mut dyn FnMut(usize, HalfInt, HalfInt) -> bool,
        visit: &mut dyn FnMut(&[HalfInt], &[HalfInt]),
    ) {
        let mut c = Vec::with_capacity(self.segs.len());
        let mut d = Vec::with_capacity(self.segs.len());
        self.pair_rec(0, &mut c, &mut d, keep, visit);
    }

    fn pair_rec(
        &self,
        i: usize,
        c: &mut Vec<HalfInt>,
        d: &mut Vec<HalfInt>,
        keep: &mut dyn FnMut(usize, HalfInt, HalfInt) -> bool,
        visit: &mut dyn FnMut(&[HalfInt], &[HalfInt]),
    ) {
        if i == self.segs.len() {
            visit(c, d);
            return;
        }
        let (x, y) = self.segs[i];
        let mut ci = y - 1;
        if let Some(&prev) = c.last() {
            ci = ci.max(prev + 1);
        }
        while ci <= x {
            let mut di = ci;
            if let Some(&prev) = d.last() {
                di = di.max(prev + 1);
            }
            while di <= x {
                if keep(i, ci, di) {
                    c.push(ci);
                    d.push(di);
                    self.pair_rec(i + 1, c, d, keep, visit);
                    c.pop();
                    d.pop();
                }
                di += 1;
            }
            ci += 1;
        }
    }

    /// The sub-ladder `L([x_i, c_i + 1])`.
    pub(crate) fn upper_part(&self, c: &[HalfInt]) -> Ladder {
        let segs = self.segs.iter().zip(c).map(|(&(x, _), &ci)| (x, ci + 1));
        Ladder::from_bounds(self.rho.clone(), segs).expect("upper parts of ladders are ladders")
    }

    /// The sub-ladder `L([c_i, y_i])`.
    pub(crate) fn lower_part(&self, c: &[HalfInt]) -> Ladder {
        let segs = self.segs.iter().zip(c).map(|(&(_, y), &ci)| (ci, y));
        Ladder::from_bounds(self.rho.clone(), segs).expect("lower parts of ladders are ladders")
    }

    /// The sub-ladder `L([d_i, c_i + 1])`.
    pub(crate) fn middle_part(&self, c: &[HalfInt], d: &[HalfInt]) -> Ladder {
        let segs = c.iter().zip(d).map(|(&ci, &di)| (di, ci + 1));
        Ladder::from_bounds(self.rho.clone(), segs).expect("middle parts of ladders are ladders")
    }

    fn key(&self) -> Option<(&CuspidalLabel, &[(HalfInt, HalfInt)])> {
        if self.segs.is_empty() {
            None
        } else {
            Some((&self.rho, &self.segs))
        }
    }
}

impl PartialEq for Ladder {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Ladder {}

impl PartialOrd for Ladder {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ladder {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Debug for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Ladder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segs.is_empty() {
            return f.write_str("1");
        }
        write!(f, "L_{}(", self.rho)?;
        for (i, (x, y)) in self.segs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "[{x},{y}]")?;
        }
        f.write_str(")")
    }
}

/// A term `(left_1 × ... × left_r) ⊗ right` of a Jacquet-module computation.
///
/// The left product is kept unexpanded; trivial factors are removed and the
/// remaining factors sorted, which is harmless since the product is commutative
/// in the Grothendieck group.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GLTerm {
    pub left: Vec<Ladder>,
    pub right: Ladder,
}

impl GLTerm {
    pub fn new(left: Vec<Ladder>, right: Ladder) -> Self {
        let mut left: Vec<Ladder> = left.into_iter().filter(|l| !l.is_trivial()).collect();
        left.sort();
        GLTerm { left, right }
    }

    pub fn left_rank(&self) -> u64 {
        self.left.iter().map(Ladder::rank).sum()
    }
}

/// `m*(L) = Σ_{c ∈ Lad(L)} L([x_i, c_i+1]) ⊗ L([c_i, y_i])`.
pub fn mstar_ladder(l: &Ladder) -> FormalSum<GLTerm> {
    let mut out = FormalSum::new();
    l.for_each_tuple(&mut |_, _| true, &mut |c| {
        out.add(GLTerm::new(alloc::vec![l.upper_part(c)], l.lower_part(c)), 1);
    });
    out
}

/// The GL factors of `μ*(L ⋊ σ)`: one term per pair `(c, d)` of tuples in
/// `Lad(L)` with `c ≤ d`, with left factors `L([c_i, y_i])^∨` and
/// `L([x_i, d_i+1])` and right factor `L([d_i, c_i+1])`.
pub fn mu_star_gl_terms(l: &Ladder) -> FormalSum<GLTerm> {
    let mut out = FormalSum::new();
    l.for_each_pair(&mut |_, _, _| true, &mut |c, d| {
        let left = alloc::vec![l.lower_part(c).contragredient(), l.upper_part(d)];
        out.add(GLTerm::new(left, l.middle_part(c, d)), 1);
    });
    out
}

/// `M* = (m ⊗ 1) ∘ (∨ ⊗ m*) ∘ s ∘ m*`, evaluated by composing [`mstar_ladder`] with itself.
pub fn mstar_full(l: &Ladder) -> FormalSum<GLTerm> {
    let mut out = FormalSum::new();
    for (outer, c1) in mstar_ladder(l) {
        let pi1 = outer.left.into_iter().next().unwrap_or_else(|| Ladder::trivial(l.rho().clone()));
        let pi2_dual = outer.right.contragredient();
        for (inner, c2) in mstar_ladder(&pi1) {
            let mut left = inner.left;
            left.push(pi2_dual.clone());
            out.add(GLTerm::new(left, inner.right), c1 * c2);
        }
    }
    out
}
