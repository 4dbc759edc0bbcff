//! Parabolic induction `u_1 x ... x u_k ⋊ pi(S)` by Speh representations:
//! insertion of doubled blocks, the sets of admissible `nu`, decompositions,
//! and the irreducibility criterion.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exms::{
    in_srep, is_standard, part_connected, part_delta, standard_form, standard_key, ExtMultiSegment, ExtSegment,
};
use crate::gl::tadic_reducible;
use crate::half_int::HalfInt;
use crate::model::{summand_good_parity, CuspidalLabel, EssSpeh, SpehType};

/// The Speh representation `u_rho(c, d)`, inserted as the block `[C,D]` with
/// `C = (c+d)/2 - 1` and `D = (c-d)/2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpehFactor {
    pub rho: CuspidalLabel,
    pub c: u32,
    pub d: u32,
}

impl SpehFactor {
    pub fn new(rho: CuspidalLabel, c: u32, d: u32) -> Result<Self> {
        if c == 0 || d == 0 {
            return Err(Error::NonPositiveDimension);
        }
        Ok(SpehFactor { rho, c, d })
    }

    pub fn big_c(&self) -> HalfInt {
        HalfInt::half(i64::from(self.c) + i64::from(self.d)) - 1
    }

    pub fn big_d(&self) -> HalfInt {
        HalfInt::half(i64::from(self.c) - i64::from(self.d))
    }

    pub fn ext(&self, nu: i64) -> Result<ExtSegment> {
        ExtSegment::new(self.big_c(), self.big_d(), nu)
    }

    /// `nu` with `|nu| <= d`, `nu = d (mod 2)` and `|nu_hat| <= c`.
    fn nu_candidates(&self) -> Vec<i64> {
        let (c, d) = (i64::from(self.c), i64::from(self.d));
        let shift = if self.big_d().is_integral() { 0 } else { 1 };
        (-d..=d).step_by(2).filter(|nu| (nu - shift).abs() <= c).collect()
    }
}

impl fmt::Display for SpehFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u_{}({},{})", self.rho, self.c, self.d)
    }
}

fn check_parity(s: &ExtMultiSegment, rho: &CuspidalLabel, seg: &ExtSegment) -> Result<()> {
    let a = seg.a();
    if a < 1 || !summand_good_parity(s.group, rho, a as u32, seg.b() as u32) {
        return Err(Error::NotGoodParity);
    }
    Ok(())
}

/// Inserts each block twice at its standard position. Returns the result and
/// the 0-based position of the first copy of every block in its part.
fn insert_blocks(s: &ExtMultiSegment, blocks: &[(CuspidalLabel, ExtSegment)]) -> (ExtMultiSegment, Vec<usize>) {
    let mut tagged: BTreeMap<CuspidalLabel, Vec<(ExtSegment, Option<usize>)>> =
        s.parts.iter().map(|(rho, p)| (rho.clone(), p.iter().map(|x| (*x, None)).collect())).collect();
    for (n, (rho, seg)) in blocks.iter().enumerate() {
        let part = tagged.entry(rho.clone()).or_default();
        let key = standard_key(seg);
        let at = part.iter().position(|(x, _)| standard_key(x) > key).unwrap_or(part.len());
        part.insert(at, (*seg, Some(n)));
        part.insert(at, (*seg, Some(n)));
    }
    let mut positions = vec![0; blocks.len()];
    let mut out = ExtMultiSegment::new(s.group);
    for (rho, part) in tagged {
        for (i, (_, tag)) in part.iter().enumerate().rev() {
            if let Some(n) = tag {
                positions[*n] = i;
            }
        }
        out.set_part(rho, part.into_iter().map(|(x, _)| x).collect());
    }
    (out, positions)
}

/// Inserts `([C,D]_rho, nu)` twice into the standard `s`, keeping it standard.
pub fn insert(s: &ExtMultiSegment, rho: &CuspidalLabel, ext: ExtSegment) -> Result<ExtMultiSegment> {
    if !is_standard(s) {
        return Err(Error::NotStandard);
    }
    check_parity(s, rho, &ext)?;
    Ok(insert_blocks(s, &[(rho.clone(), ext)]).0)
}

fn distance(p: &ExtSegment, q: &ExtSegment) -> HalfInt {
    (q.big_a - p.big_a).abs() + (q.big_b - p.big_b).abs()
}

/// Checks the inequality between positions `i < j` when they are connected.
fn pair_ok(part: &[ExtSegment], i: usize, j: usize) -> bool {
    !part_connected(part, i, j) || distance(&part[i], &part[j]) >= HalfInt::from_int(part_delta(part, i, j).abs())
}

fn require_srep(s: &ExtMultiSegment) -> Result<()> {
    if !is_standard(s) {
        return Err(Error::NotStandard);
    }
    if !in_srep(s)? {
        return Err(Error::NotInRep);
    }
    Ok(())
}

fn single_nus(s: &ExtMultiSegment, f: &SpehFactor) -> Result<Vec<i64>> {
    check_parity(s, &f.rho, &f.ext(i64::from(f.d))?)?;
    let mut out = Vec::new();
    for nu in f.nu_candidates() {
        let (inserted, pos) = insert_blocks(s, &[(f.rho.clone(), f.ext(nu)?)]);
        let part = &inserted.parts[&f.rho];
        let p = pos[0];
        let ok = (0..part.len()).filter(|&k| k != p && k != p + 1).all(|k| {
            if k < p {
                pair_ok(part, k, p)
            } else {
                pair_ok(part, p + 1, k)
            }
        });
        if ok {
            out.push(nu);
        }
    }
    Ok(out)
}

/// The `nu` for which `s` with `([C,D], nu)` inserted twice stays non-vanishing.
pub fn nu_set_single(s: &ExtMultiSegment, f: &SpehFactor) -> Result<Vec<i64>> {
    require_srep(s)?;
    single_nus(s, f)
}

/// The constituents of `u_rho(c,d) ⋊ pi(s)`, one per element of [`nu_set_single`].
pub fn decompose_single(s: &ExtMultiSegment, f: &SpehFactor) -> Result<Vec<ExtMultiSegment>> {
    nu_set_single(s, f)?
        .into_iter()
        .map(|nu| Ok(insert_blocks(s, &[(f.rho.clone(), f.ext(nu)?)]).0))
        .collect()
}

fn tuple_ok(s: &ExtMultiSegment, factors: &[SpehFactor], nus: &[i64]) -> Result<bool> {
    let blocks: Vec<(CuspidalLabel, ExtSegment)> =
        factors.iter().zip(nus).map(|(f, &nu)| Ok((f.rho.clone(), f.ext(nu)?))).collect::<Result<_>>()?;
    let (full, pos) = insert_blocks(s, &blocks);
    for l in 0..factors.len() {
        for m in l + 1..factors.len() {
            if factors[l].rho != factors[m].rho {
                continue;
            }
            let part = &full.parts[&factors[l].rho];
            let (i, j) = if pos[l] < pos[m] { (pos[l] + 1, pos[m]) } else { (pos[m] + 1, pos[l]) };
            if !pair_ok(part, i, j) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The tuples `(nu_1, ..., nu_k)` indexing the constituents of
/// `u_1 x ... x u_k ⋊ pi(s)`, in lexicographic order.
pub fn nu_tuples_multi(s: &ExtMultiSegment, factors: &[SpehFactor]) -> Result<Vec<Vec<i64>>> {
    require_srep(s)?;
    let sets: Vec<Vec<i64>> = factors.iter().map(|f| single_nus(s, f)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(factors.len());
    fn rec(
        s: &ExtMultiSegment,
        factors: &[SpehFactor],
        sets: &[Vec<i64>],
        current: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) -> Result<()> {
        let k = current.len();
        if k == sets.len() {
            if tuple_ok(s, factors, current)? {
                out.push(current.clone());
            }
            return Ok(());
        }
        for &nu in &sets[k] {
            current.push(nu);
            rec(s, factors, sets, current, out)?;
            current.pop();
        }
        Ok(())
    }
    rec(s, factors, &sets, &mut current, &mut out)?;
    Ok(out)
}

/// `s` with every factor's block inserted twice with the given `nu`.
pub fn insert_all(s: &ExtMultiSegment, factors: &[SpehFactor], nus: &[i64]) -> Result<ExtMultiSegment> {
    if factors.len() != nus.len() {
        return Err(Error::Precondition("one nu per factor"));
    }
    if !is_standard(s) {
        return Err(Error::NotStandard);
    }
    let mut blocks = Vec::with_capacity(factors.len());
    for (f, &nu) in factors.iter().zip(nus) {
        let ext = f.ext(nu)?;
        check_parity(s, &f.rho, &ext)?;
        blocks.push((f.rho.clone(), ext));
    }
    Ok(insert_blocks(s, &blocks).0)
}

/// The constituents of `u_1 x ... x u_k ⋊ pi(s)`, one per tuple of [`nu_tuples_multi`].
pub fn decompose_multi(s: &ExtMultiSegment, factors: &[SpehFactor]) -> Result<Vec<ExtMultiSegment>> {
    if factors.is_empty() {
        require_srep(s)?;
        return Ok(vec![standard_form(s)?]);
    }
    nu_tuples_multi(s, factors)?.iter().map(|nus| insert_all(s, factors, nus)).collect()
}

/// Whether the tuples contain two points differing by `+2` in exactly one coordinate.
///
/// Needs pairwise distinct `(c_i, d_i)` and at least two elements in every single-factor set.
pub fn adjacent_pair_exists(s: &ExtMultiSegment, factors: &[SpehFactor]) -> Result<bool> {
    require_srep(s)?;
    for (i, f) in factors.iter().enumerate() {
        if factors[..i].iter().any(|g| (g.c, g.d) == (f.c, f.d)) {
            return Err(Error::Precondition("the (c, d) must be pairwise distinct"));
        }
        if single_nus(s, f)?.len() < 2 {
            return Err(Error::Precondition("every factor must induce reducibly"));
        }
    }
    let tuples: BTreeSet<Vec<i64>> = nu_tuples_multi(s, factors)?.into_iter().collect();
    for t in &tuples {
        for i in 0..t.len() {
            let mut up = t.clone();
            up[i] += 2;
            if tuples.contains(&up) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrrVerdict {
    Irreducible,
    Reducible,
    /// Not decidable from the data at hand.
    Unknown(&'static str),
}

impl IrrVerdict {
    fn from_bool(irreducible: bool) -> Self {
        if irreducible {
            IrrVerdict::Irreducible
        } else {
            IrrVerdict::Reducible
        }
    }
}

impl fmt::Display for IrrVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrVerdict::Irreducible => f.write_str("irreducible"),
            IrrVerdict::Reducible => f.write_str("reducible"),
            IrrVerdict::Unknown(why) => write!(f, "unknown ({why})"),
        }
    }
}

/// One condition of the criterion; indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IrrCheck {
    /// `u_i x u_j`.
    Product(usize, usize),
    /// `u_i x u_j^vee`.
    ProductDual(usize, usize),
    /// `u_i ⋊ pi`.
    Induced(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IrrCondition {
    pub check: IrrCheck,
    pub verdict: IrrVerdict,
    /// The verdict was supplied by the caller rather than computed.
    pub asserted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrReport {
    pub verdict: IrrVerdict,
    pub conditions: Vec<IrrCondition>,
}

pub const SMALL_TYPE_UNKNOWN: &str = "small-type u x| pi undecidable internally";
pub const SHIFTED_UNKNOWN: &str = "u x| pi with s != 0 needs derivatives of pi";

fn induced_verdict(s: &ExtMultiSegment, u: &EssSpeh) -> Result<IrrVerdict> {
    if u.s() != 0 {
        return Ok(IrrVerdict::Unknown(match u.classify() {
            Ok(SpehType::Small) => SMALL_TYPE_UNKNOWN,
            _ => SHIFTED_UNKNOWN,
        }));
    }
    if !summand_good_parity(s.group, u.rho(), u.a(), u.b()) {
        // The doubled parameter is not of good parity.
        return Ok(IrrVerdict::Irreducible);
    }
    let f = SpehFactor::new(u.rho().clone(), u.a(), u.b())?;
    Ok(IrrVerdict::from_bool(single_nus(s, &f)?.len() == 1))
}

/// Irreducibility of `u_1 x ... x u_r ⋊ pi(s)` from the pairwise GL products
/// and the single inductions `u_i ⋊ pi(s)`.
///
/// `asserted` maps 1-based factor indices to externally known verdicts of
/// `u_i ⋊ pi(s)`; these are used only where the verdict cannot be computed.
pub fn main_irreducibility(
    us: &[EssSpeh],
    s: &ExtMultiSegment,
    asserted: &BTreeMap<usize, bool>,
) -> Result<IrrReport> {
    require_srep(s)?;
    let mut conditions = Vec::new();
    for i in 0..us.len() {
        for j in 0..us.len() {
            if i == j {
                continue;
            }
            if i < j {
                let red = tadic_reducible(&us[i], &us[j]);
                conditions.push(IrrCondition {
                    check: IrrCheck::Product(i + 1, j + 1),
                    verdict: IrrVerdict::from_bool(!red),
                    asserted: false,
                });
            }
            let red = tadic_reducible(&us[i], &us[j].contragredient());
            conditions.push(IrrCondition {
                check: IrrCheck::ProductDual(i + 1, j + 1),
                verdict: IrrVerdict::from_bool(!red),
                asserted: false,
            });
        }
    }
    for (i, u) in us.iter().enumerate() {
        let mut verdict = induced_verdict(s, u)?;
        let mut was_asserted = false;
        if let (IrrVerdict::Unknown(_), Some(&v)) = (verdict, asserted.get(&(i + 1))) {
            verdict = IrrVerdict::from_bool(v);
            was_asserted = true;
        }
        conditions.push(IrrCondition { check: IrrCheck::Induced(i + 1), verdict, asserted: was_asserted });
    }
    let verdict = if conditions.iter().any(|c| c.verdict == IrrVerdict::Reducible) {
        IrrVerdict::Reducible
    } else if let Some(c) = conditions.iter().find(|c| matches!(c.verdict, IrrVerdict::Unknown(_))) {
        c.verdict
    } else {
        IrrVerdict::Irreducible
    };
    Ok(IrrReport { verdict, conditions })
}
