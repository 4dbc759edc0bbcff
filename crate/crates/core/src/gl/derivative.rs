//! Maximal left and `M`-derivatives of ladders and the grids of derivative multiplicities.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::formal_sum::FormalSum;
use crate::half_int::HalfInt;
use crate::model::{CuspidalLabel, EssSpeh};

use super::ladder::Ladder;

/// A supercuspidal `rho|.|^z` or `Z_rho[0,1] = L([0,0]_rho, [1,1]_rho)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DerivativeSymbol {
    Cuspidal { rho: CuspidalLabel, z: HalfInt },
    Z01 { rho: CuspidalLabel },
}

impl DerivativeSymbol {
    pub fn cuspidal(rho: CuspidalLabel, z: HalfInt) -> Self {
        DerivativeSymbol::Cuspidal { rho, z }
    }

    pub fn z01(rho: CuspidalLabel) -> Result<Self> {
        if !rho.is_self_dual() {
            return Err(Error::Z01NotSelfDual);
        }
        Ok(DerivativeSymbol::Z01 { rho })
    }

    pub fn rho(&self) -> &CuspidalLabel {
        match self {
            DerivativeSymbol::Cuspidal { rho, .. } | DerivativeSymbol::Z01 { rho } => rho,
        }
    }

    fn allows(&self, label: &CuspidalLabel, e: HalfInt) -> bool {
        match self {
            DerivativeSymbol::Cuspidal { rho, z } => label == rho && e == *z,
            DerivativeSymbol::Z01 { rho } => label == rho && (e == 0 || e == 1),
        }
    }

    /// Whether every exponent of `[hi, lo]_label` lies in the support of the symbol.
    fn allows_segment(&self, label: &CuspidalLabel, lo: HalfInt, hi: HalfInt) -> bool {
        let mut e = lo;
        while e <= hi {
            if !self.allows(label, e) {
                return false;
            }
            e += 1;
        }
        true
    }

    /// `k` such that the product of `factors` is the `k`-th power of the symbol.
    ///
    /// For `Z_rho[0,1]` a ladder factor must be `Z_rho[0,1]` itself; a ladder
    /// cannot be a higher power. Factors with support outside the symbol give `None`.
    fn power_of(&self, factors: &[&Ladder]) -> Option<u32> {
        let mut k = 0;
        for f in factors.iter().filter(|f| !f.is_trivial()) {
            match self {
                DerivativeSymbol::Cuspidal { .. } => {
                    for (label, e) in f.support() {
                        if !self.allows(&label, e) {
                            return None;
                        }
                        k += 1;
                    }
                }
                DerivativeSymbol::Z01 { rho } => {
                    let z = [(HalfInt::ZERO, HalfInt::ZERO), (HalfInt::ONE, HalfInt::ONE)];
                    if f.rho() != rho || f.segments() != z {
                        return None;
                    }
                    k += 1;
                }
            }
        }
        Some(k)
    }
}

impl fmt::Display for DerivativeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivativeSymbol::Cuspidal { rho, z } => write!(f, "{rho}|.|^{z}"),
            DerivativeSymbol::Z01 { rho } => write!(f, "Z_{rho}[0,1]"),
        }
    }
}

/// A highest derivative: the exponent `k` and the cofactor of `sigma^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivative {
    pub k: u32,
    pub result: FormalSum<Ladder>,
}

impl Derivative {
    fn new() -> Self {
        Derivative { k: 0, result: FormalSum::new() }
    }

    fn offer(&mut self, k: u32, term: Ladder, coeff: i64) {
        if k > self.k {
            self.k = k;
            self.result = FormalSum::new();
        }
        if k == self.k {
            self.result.add(term, coeff);
        }
    }
}

fn one_step(rho: &CuspidalLabel) -> DerivativeSymbol {
    DerivativeSymbol::cuspidal(rho.clone(), HalfInt::ONE)
}

/// `L^max_sigma(L)` read off the terms of `m*(L)` whose left factor is `sigma^k`.
pub fn max_left_derivative(l: &Ladder, sigma: &DerivativeSymbol) -> Result<Derivative> {
    if let DerivativeSymbol::Z01 { rho } = sigma {
        if max_left_derivative(l, &one_step(rho))?.k != 0 {
            return Err(Error::Z01NotReduced);
        }
    }
    let mut out = Derivative::new();
    let segs = l.segments();
    let rho = l.rho().clone();
    l.for_each_tuple(&mut |i, c| sigma.allows_segment(&rho, c + 1, segs[i].0), &mut |c| {
        if let Some(k) = sigma.power_of(&[&l.upper_part(c)]) {
            out.offer(k, l.lower_part(c), 1);
        }
    });
    Ok(out)
}

/// `M^max_sigma(L)` read off the terms of `M*(L)` whose left factor is `sigma^k`.
///
/// Only the terms whose left factors have support inside the support of
/// `sigma` are generated.
pub fn max_m_derivative(l: &Ladder, sigma: &DerivativeSymbol) -> Result<Derivative> {
    if let DerivativeSymbol::Z01 { rho } = sigma {
        if max_m_derivative(l, &one_step(rho))?.k != 0 {
            return Err(Error::Z01NotReduced);
        }
    }
    let mut out = Derivative::new();
    let segs = l.segments();
    let rho = l.rho().clone();
    let rho_dual = rho.dual();
    l.for_each_pair(
        &mut |i, c, d| {
            let (x, y) = segs[i];
            sigma.allows_segment(&rho_dual, -c, -y) && sigma.allows_segment(&rho, d + 1, x)
        },
        &mut |c, d| {
            let lower = l.lower_part(c).contragredient();
            let upper = l.upper_part(d);
            if let Some(k) = sigma.power_of(&[&lower, &upper]) {
                out.offer(k, l.middle_part(c, d), 1);
            }
        },
    );
    Ok(out)
}

/// [`max_m_derivative`] extended linearly to a formal sum of ladders.
pub fn max_m_derivative_sum(sum: &FormalSum<Ladder>, sigma: &DerivativeSymbol) -> Result<Derivative> {
    let mut parts = Vec::with_capacity(sum.len());
    for (l, coeff) in sum.iter() {
        parts.push((max_m_derivative(l, sigma)?, coeff));
    }
    let mut out = Derivative::new();
    for (d, coeff) in parts {
        for (t, c) in d.result {
            out.offer(d.k, t, c * coeff);
        }
    }
    Ok(out)
}

/// Applies `M^max` for each symbol in turn, returning the exponents taken and the final sum.
pub fn derivative_sequence(
    start: &FormalSum<Ladder>,
    symbols: &[DerivativeSymbol],
) -> Result<(Vec<u32>, FormalSum<Ladder>)> {
    let mut current = start.clone();
    let mut ks = Vec::with_capacity(symbols.len());
    for sigma in symbols {
        let d = max_m_derivative_sum(&current, sigma)?;
        ks.push(d.k);
        current = d.result;
    }
    Ok((ks, current))
}

/// The symbols of the composite `M^max_{rho|.|^lo, ..., rho|.|^hi}`: `rho|.|^e`
/// for each `e`, except `rho|.|^1` at `e = 0` and `Z_rho[0,1]` at `e = 1`
/// when `0` lies in the range.
pub fn block_symbols(rho: &CuspidalLabel, lo: HalfInt, hi: HalfInt) -> Result<Vec<DerivativeSymbol>> {
    let mut out = Vec::new();
    let mut e = lo;
    while e <= hi {
        out.push(grid_symbol(rho, e, e != lo)?);
        e += 1;
    }
    Ok(out)
}

fn grid_symbol(rho: &CuspidalLabel, e: HalfInt, after_first: bool) -> Result<DerivativeSymbol> {
    if e == 0 {
        Ok(DerivativeSymbol::cuspidal(rho.clone(), HalfInt::ONE))
    } else if e == 1 && after_first {
        DerivativeSymbol::z01(rho.clone())
    } else {
        Ok(DerivativeSymbol::cuspidal(rho.clone(), e))
    }
}

/// The `2s × b` grid of symbols `sigma^{ij}` attached to `u_rho(a,b)|.|^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivGrid {
    rho: CuspidalLabel,
    a: u32,
    b: u32,
    s: HalfInt,
}

impl DerivGrid {
    /// Needs `a, b >= 1` and `2s` a positive integer.
    pub fn new(rho: CuspidalLabel, a: u32, b: u32, s: HalfInt) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::NonPositiveDimension);
        }
        if s.twice() <= 0 {
            return Err(Error::InvalidGrid);
        }
        Ok(DerivGrid { rho, a, b, s })
    }

    pub fn for_speh(u: &EssSpeh) -> Result<Self> {
        Self::new(u.rho().clone(), u.a(), u.b(), u.s())
    }

    pub fn rho(&self) -> &CuspidalLabel {
        &self.rho
    }

    /// Number of blocks, `2s`.
    pub fn rows(&self) -> usize {
        self.s.twice() as usize
    }

    /// Length of each block, `b`.
    pub fn cols(&self) -> usize {
        self.b as usize
    }

    fn big_b(&self) -> HalfInt {
        HalfInt::from_twice(i64::from(self.a) - i64::from(self.b))
    }

    /// `B + s - i + j` for 1-based `i`, `j`.
    pub fn exponent(&self, i: usize, j: usize) -> HalfInt {
        self.big_b() + self.s - i as i64 + j as i64
    }

    pub fn symbol(&self, i: usize, j: usize) -> Result<DerivativeSymbol> {
        grid_symbol(&self.rho, self.exponent(i, j), j != 1)
    }

    /// `1_{ij}`: zero exactly at the exponent `0`.
    pub fn indicator(&self, i: usize, j: usize) -> u32 {
        u32::from(self.exponent(i, j) != 0)
    }

    /// Rows of symbols, one block per row.
    pub fn symbols(&self) -> Result<Vec<Vec<DerivativeSymbol>>> {
        (1..=self.rows())
            .map(|i| (1..=self.cols()).map(|j| self.symbol(i, j)).collect())
            .collect()
    }

    pub fn indicators(&self) -> Vec<Vec<u32>> {
        (1..=self.rows()).map(|i| (1..=self.cols()).map(|j| self.indicator(i, j)).collect()).collect()
    }
}

/// The multiplicities `m^{ij}` along a grid and the terminal `M^max_{(a,b,s)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainResult {
    pub mults: Vec<Vec<u32>>,
    pub result: FormalSum<Ladder>,
}

pub fn derivative_chain(start: &FormalSum<Ladder>, grid: &DerivGrid) -> Result<ChainResult> {
    let mut current = start.clone();
    let mut mults = Vec::with_capacity(grid.rows());
    for row in grid.symbols()? {
        let (ks, next) = derivative_sequence(&current, &row)?;
        mults.push(ks);
        current = next;
    }
    Ok(ChainResult { mults, result: current })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{DualityType, UEssMatrix};

    fn rho() -> CuspidalLabel {
        CuspidalLabel::new("r", 1, DualityType::Orthogonal).unwrap()
    }

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn lad(segs: &[(i64, i64)]) -> Ladder {
        Ladder::new(rho(), segs.iter().map(|&(x, y)| (h(2 * x), h(2 * y))).collect()).unwrap()
    }

    fn cusp(z: i64) -> DerivativeSymbol {
        DerivativeSymbol::cuspidal(rho(), HalfInt::from_int(z))
    }

    fn ess(tl: i64, tr: i64, bl: i64, br: i64) -> Ladder {
        let m = UEssMatrix::new(h(2 * tl), h(2 * tr), h(2 * bl), h(2 * br));
        Ladder::from_speh(&EssSpeh::from_matrix(rho(), &m).unwrap())
    }

    #[test]
    fn segment_examples() {
        let d = lad(&[(1, 0)]);
        let got = max_left_derivative(&d, &cusp(1)).unwrap();
        assert_eq!(got.k, 1);
        assert_eq!(got.result.as_single(), Some(&lad(&[(0, 0)])));
        let got = max_m_derivative(&d, &cusp(1)).unwrap();
        assert_eq!((got.k, got.result.as_single()), (1, Some(&lad(&[(0, 0)]))));
        let got = max_left_derivative(&d, &cusp(5)).unwrap();
        assert_eq!((got.k, got.result.as_single()), (0, Some(&d)));
    }

    #[test]
    fn m_derivative_sees_the_contragredient() {
        // M*(rho|.|^{-1}) contains rho|.|^1 ⊗ 1 through the dual factor.
        let l = lad(&[(-1, -1)]);
        assert_eq!(max_left_derivative(&l, &cusp(1)).unwrap().k, 0);
        let got = max_m_derivative(&l, &cusp(1)).unwrap();
        assert_eq!((got.k, got.result.as_single()), (1, Some(&lad(&[]))));
        // At exponent zero both routes contribute.
        let got = max_m_derivative(&lad(&[(0, 0)]), &cusp(0)).unwrap();
        assert_eq!(got.k, 1);
        assert_eq!(got.result.coeff(&lad(&[])), 2);
    }

    #[test]
    fn z01_derivatives() {
        let z = DerivativeSymbol::z01(rho()).unwrap();
        let zl = lad(&[(0, 0), (1, 1)]);
        let got = max_left_derivative(&zl, &z).unwrap();
        assert_eq!((got.k, got.result.as_single()), (1, Some(&lad(&[]))));
        assert_eq!(max_left_derivative(&lad(&[(1, 0)]), &z), Err(Error::Z01NotReduced));
        let chi = CuspidalLabel::new("chi", 1, DualityType::NotSelfDual).unwrap();
        assert_eq!(DerivativeSymbol::z01(chi), Err(Error::Z01NotSelfDual));
    }

    #[test]
    fn grid_symbols() {
        // u(3,2)|.|^{1}: B = 1/2, exponents B+s-i+j are half-integral.
        let g = DerivGrid::new(rho(), 3, 2, h(2)).unwrap();
        assert_eq!((g.rows(), g.cols()), (2, 2));
        assert_eq!(g.symbol(1, 1).unwrap(), DerivativeSymbol::cuspidal(rho(), h(3)));
        // u(3,1)|.|^{1}: B = 1, exponents 2, 1 then blocks of length one.
        let g = DerivGrid::new(rho(), 3, 1, h(2)).unwrap();
        assert_eq!(g.symbol(2, 1).unwrap(), cusp(1));
        // u(2,3)|.|^{1/2}: B = -1/2; block 1 is [0, 2].
        let g = DerivGrid::new(rho(), 2, 3, h(1)).unwrap();
        assert_eq!(
            g.symbols().unwrap(),
            alloc::vec![alloc::vec![cusp(1), DerivativeSymbol::z01(rho()).unwrap(), cusp(2)]]
        );
        assert_eq!(g.indicators(), alloc::vec![alloc::vec![0, 1, 1]]);
        assert_eq!(DerivGrid::new(rho(), 2, 3, h(0)), Err(Error::InvalidGrid));
    }

    /// Closed form of the chain `rho|.|^B, ..., rho|.|^D` on `u_ess(A,B;C,D)`.
    fn check_column_chain(a: i64, b: i64, c: i64, d: i64) {
        let tau = ess(a, b, c, d);
        let syms = block_symbols(&rho(), HalfInt::from_int(b), HalfInt::from_int(d)).unwrap();
        let expected_ks: Vec<u32> = (b..=d).map(|e| u32::from(e != 0)).collect();
        let (ks, res) = derivative_sequence(&FormalSum::single(tau.clone()), &syms).unwrap();
        assert_eq!(ks, expected_ks, "M chain on {tau}");
        assert_eq!(res.as_single(), Some(&ess(a, b - 1, c, d - 1)), "M chain on {tau}");
        // The left derivatives agree.
        let mut cur = tau.clone();
        for (sym, k) in syms.iter().zip(&expected_ks) {
            let dl = max_left_derivative(&cur, sym).unwrap();
            assert_eq!(dl.k, *k, "L chain on {tau} at {sym}");
            cur = dl.result.as_single().unwrap().clone();
        }
        assert_eq!(cur, ess(a, b - 1, c, d - 1));
    }

    #[test]
    fn column_chain_closed_form() {
        check_column_chain(1, 2, 2, 3);
        check_column_chain(0, 2, 1, 3);
        // Crossing exponents 0 and 1.
        check_column_chain(-1, 0, 2, 3);
        check_column_chain(-2, -1, 3, 4);
    }
}
