//! Cuspidal labels, segments, essentially Speh representations and Arthur parameters.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::half_int::HalfInt;

/// The classical group `G_n`: split `SO_{2n+1}` or `Sp_{2n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupKind {
    OddOrthogonal,
    Symplectic,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::OddOrthogonal => "SO-odd",
            GroupKind::Symplectic => "Sp",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DualityType {
    Orthogonal,
    Symplectic,
    NotSelfDual,
}

/// Suffix marking the contragredient of a label that is not self-dual.
const DUAL_SUFFIX: &str = "^v";

/// A unitary supercuspidal representation `rho` of some `GL_d`.
///
/// Only the rank, the duality type and the identity of the line `Z_rho` are
/// modelled. Labels compare by name.
#[derive(Clone)]
pub struct CuspidalLabel {
    name: Arc<str>,
    d: u32,
    duality: DualityType,
}

impl CuspidalLabel {
    pub fn new(name: &str, d: u32, duality: DualityType) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroRank);
        }
        Ok(CuspidalLabel { name: Arc::from(name), d, duality })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn duality(&self) -> DualityType {
        self.duality
    }

    pub fn is_self_dual(&self) -> bool {
        self.duality != DualityType::NotSelfDual
    }

    /// The label of `rho^vee`: itself when self-dual, otherwise the paired label.
    pub fn dual(&self) -> CuspidalLabel {
        if self.is_self_dual() {
            return self.clone();
        }
        let name: String = match self.name.strip_suffix(DUAL_SUFFIX) {
            Some(base) => base.into(),
            None => alloc::format!("{}{}", self.name, DUAL_SUFFIX),
        };
        CuspidalLabel { name: Arc::from(name.as_str()), d: self.d, duality: self.duality }
    }
}

impl PartialEq for CuspidalLabel {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for CuspidalLabel {}

impl PartialOrd for CuspidalLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CuspidalLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.name.cmp(&other.name)
    }
}

impl Hash for CuspidalLabel {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.name.hash(state);
    }
}

impl fmt::Debug for CuspidalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Display for CuspidalLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// The segment `[x, y]_rho = {rho|.|^x, ..., rho|.|^y}` with `x >= y`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    rho: CuspidalLabel,
    x: HalfInt,
    y: HalfInt,
}

impl Segment {
    pub fn new(rho: CuspidalLabel, x: HalfInt, y: HalfInt) -> Result<Self> {
        if x < y || !x.same_lattice(y) {
            return Err(Error::InvalidSegment { x, y });
        }
        Ok(Segment { rho, x, y })
    }

    pub fn rho(&self) -> &CuspidalLabel {
        &self.rho
    }

    /// The upper end point.
    pub fn x(&self) -> HalfInt {
        self.x
    }

    /// The lower end point.
    pub fn y(&self) -> HalfInt {
        self.y
    }

    /// Number of cuspidal exponents in the segment.
    pub fn length(&self) -> i64 {
        (self.x - self.y).twice() / 2 + 1
    }

    /// The segment shifted by `-1`.
    pub fn shifted_down(&self) -> Segment {
        Segment { rho: self.rho.clone(), x: self.x - 1, y: self.y - 1 }
    }

    /// True when both segments lie on the same line `rho|.|^{x + Z}`.
    pub fn same_line(&self, other: &Segment) -> bool {
        self.rho == other.rho && self.x.same_lattice(other.x)
    }
}

/// `u_rho(a, b)|.|^s`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EssSpeh {
    rho: CuspidalLabel,
    a: u32,
    b: u32,
    s: HalfInt,
}

/// Tadic's matrix `(top_left top_right; bottom_left bottom_right)` of an
/// essentially Speh representation `L([x_1,y_1], ..., [x_n,y_n])`: the corners
/// are `y_1, x_1, y_n, x_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UEssMatrix {
    pub top_left: HalfInt,
    pub top_right: HalfInt,
    pub bottom_left: HalfInt,
    pub bottom_right: HalfInt,
}

impl UEssMatrix {
    pub fn new(top_left: HalfInt, top_right: HalfInt, bottom_left: HalfInt, bottom_right: HalfInt) -> Self {
        UEssMatrix { top_left, top_right, bottom_left, bottom_right }
    }

    /// Number of rows, i.e. of segments in the Langlands data.
    pub fn rows(&self) -> Option<i64> {
        self.bottom_right.int_diff(self.top_right).map(|n| n + 1)
    }
}

/// The four types of essentially Speh representations with `s >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SpehType {
    Unitary,
    Small,
    Big,
    NonHalfIntegral,
}

impl fmt::Display for SpehType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpehType::Unitary => "unitary",
            SpehType::Small => "small",
            SpehType::Big => "big",
            SpehType::NonHalfIntegral => "non-half-integral",
        })
    }
}

impl EssSpeh {
    pub fn new(rho: CuspidalLabel, a: u32, b: u32, s: HalfInt) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::NonPositiveDimension);
        }
        Ok(EssSpeh { rho, a, b, s })
    }

    /// The Speh representation `u_rho(a, b)`.
    pub fn speh(rho: CuspidalLabel, a: u32, b: u32) -> Result<Self> {
        Self::new(rho, a, b, HalfInt::ZERO)
    }

    pub fn rho(&self) -> &CuspidalLabel {
        &self.rho
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn s(&self) -> HalfInt {
        self.s
    }

    /// `A = (a + b)/2 - 1`.
    pub fn big_a(&self) -> HalfInt {
        HalfInt::from_twice(i64::from(self.a) + i64::from(self.b) - 2)
    }

    /// `B = (a - b)/2`.
    pub fn big_b(&self) -> HalfInt {
        HalfInt::from_twice(i64::from(self.a) - i64::from(self.b))
    }

    pub fn gl_rank(&self) -> u64 {
        u64::from(self.rho.d()) * u64::from(self.a) * u64::from(self.b)
    }

    /// The segments `[B+s+j, -A+s+j]`, `j = 0..b`, in increasing order.
    pub fn segments(&self) -> Vec<(HalfInt, HalfInt)> {
        let (big_a, big_b, s) = (self.big_a(), self.big_b(), self.s);
        (0..i64::from(self.b)).map(|j| (big_b + s + j, -big_a + s + j)).collect()
    }

    pub fn to_matrix(&self) -> UEssMatrix {
        let (big_a, big_b, s) = (self.big_a(), self.big_b(), self.s);
        UEssMatrix::new(-big_a + s, big_b + s, -big_b + s, big_a + s)
    }

    pub fn from_matrix(rho: CuspidalLabel, m: &UEssMatrix) -> Result<Self> {
        let rows = m.bottom_right.int_diff(m.top_right).ok_or(Error::InconsistentMatrix)?;
        let left_rows = m.bottom_left.int_diff(m.top_left).ok_or(Error::InconsistentMatrix)?;
        let width = m.top_right.int_diff(m.top_left).ok_or(Error::InconsistentMatrix)?;
        if rows != left_rows || rows < 0 || width < 0 {
            return Err(Error::InconsistentMatrix);
        }
        let a = u32::try_from(width + 1).map_err(|_| Error::InconsistentMatrix)?;
        let b = u32::try_from(rows + 1).map_err(|_| Error::InconsistentMatrix)?;
        let s = HalfInt::from_twice((m.top_right + m.bottom_left).twice() / 2);
        let u = EssSpeh::new(rho, a, b, s)?;
        if u.to_matrix() != *m {
            return Err(Error::InconsistentMatrix);
        }
        Ok(u)
    }

    pub fn classify(&self) -> Result<SpehType> {
        if self.s < 0 {
            return Err(Error::NegativeShift);
        }
        if self.s == 0 {
            return Ok(SpehType::Unitary);
        }
        if !self.rho.is_self_dual() {
            return Ok(SpehType::NonHalfIntegral);
        }
        // s <= (a-1)/2  <=>  2s <= a-1
        if self.s.twice() < i64::from(self.a) {
            Ok(SpehType::Small)
        } else {
            Ok(SpehType::Big)
        }
    }

    pub fn contragredient(&self) -> EssSpeh {
        EssSpeh { rho: self.rho.dual(), a: self.a, b: self.b, s: -self.s }
    }

    /// The pair `(u_rho(2s, b)|.|^{a/2}, u_rho(a - 2s, b))`; needs `0 < 2s < a`
    /// with `2s` an integer.
    pub fn split(&self) -> Result<(EssSpeh, EssSpeh)> {
        let two_s = self.s.twice();
        if two_s <= 0 || two_s >= i64::from(self.a) {
            return Err(Error::Precondition("split needs 0 < 2s < a"));
        }
        let two_s = two_s as u32;
        let shifted = EssSpeh::new(self.rho.clone(), two_s, self.b, HalfInt::from_twice(i64::from(self.a)))?;
        let unitary = EssSpeh::speh(self.rho.clone(), self.a - two_s, self.b)?;
        Ok((shifted, unitary))
    }
}

impl fmt::Display for EssSpeh {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u_{}({},{})|.|^{}", self.rho, self.a, self.b, self.s)
    }
}

/// One summand `rho ⊠ S_a ⊠ S_b` of an Arthur parameter.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Summand {
    pub rho: CuspidalLabel,
    pub a: u32,
    pub b: u32,
}

impl Summand {
    pub fn new(rho: CuspidalLabel, a: u32, b: u32) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::NonPositiveDimension);
        }
        Ok(Summand { rho, a, b })
    }

    pub fn dimension(&self) -> u64 {
        u64::from(self.rho.d()) * u64::from(self.a) * u64::from(self.b)
    }

    /// The parity table: the summand is self-dual of the type of the dual group.
    pub fn good_parity(&self, group: GroupKind) -> bool {
        summand_good_parity(group, &self.rho, self.a, self.b)
    }
}

pub fn summand_good_parity(group: GroupKind, rho: &CuspidalLabel, a: u32, b: u32) -> bool {
    let even = (a + b) % 2 == 0;
    match (rho.duality(), group) {
        (DualityType::Orthogonal, GroupKind::Symplectic) => even,
        (DualityType::Orthogonal, GroupKind::OddOrthogonal) => !even,
        (DualityType::Symplectic, GroupKind::Symplectic) => !even,
        (DualityType::Symplectic, GroupKind::OddOrthogonal) => even,
        (DualityType::NotSelfDual, _) => false,
    }
}

/// A local Arthur parameter, as a multiset of summands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArthurParam {
    pub group: GroupKind,
    pub summands: Vec<Summand>,
}

impl ArthurParam {
    pub fn new(group: GroupKind, summands: Vec<Summand>) -> Self {
        ArthurParam { group, summands }
    }

    pub fn dimension(&self) -> u64 {
        self.summands.iter().map(Summand::dimension).sum()
    }

    /// The summands sorted, for comparison as multisets.
    pub fn sorted_summands(&self) -> Vec<Summand> {
        let mut v = self.summands.clone();
        v.sort();
        v
    }
}

pub fn good_parity(psi: &ArthurParam) -> bool {
    psi.summands.iter().all(|s| s.good_parity(psi.group))
}

/// `|S_psi|` for a parameter of good parity.
///
/// The character group of `A_psi` modulo the identifications of equal summands
/// has rank `k` (the number of distinct summands); the central element then
/// kills one further factor unless it already lies in the identified subgroup,
/// which happens exactly when every summand occurs an even number of times.
pub fn component_group_order(psi: &ArthurParam) -> Result<u64> {
    if !good_parity(psi) {
        return Err(Error::NotGoodParity);
    }
    let mut classes: BTreeMap<&Summand, u32> = BTreeMap::new();
    for s in &psi.summands {
        *classes.entry(s).or_default() += 1;
    }
    let k = classes.len() as u32;
    let any_odd = classes.values().any(|m| m % 2 == 1);
    let rank = if any_odd { k - 1 } else { k };
    Ok(1u64 << rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn orth(name: &str) -> CuspidalLabel {
        CuspidalLabel::new(name, 1, DualityType::Orthogonal).unwrap()
    }

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn good_parity_table() {
        let rho = orth("r");
        let chi = CuspidalLabel::new("chi", 1, DualityType::NotSelfDual).unwrap();
        let sp = ArthurParam::new(GroupKind::Symplectic, alloc::vec![Summand::new(rho.clone(), 3, 1).unwrap()]);
        assert!(good_parity(&sp));
        let bad = ArthurParam::new(GroupKind::Symplectic, alloc::vec![Summand::new(chi, 1, 1).unwrap()]);
        assert!(!good_parity(&bad));
        let so = ArthurParam::new(GroupKind::OddOrthogonal, alloc::vec![Summand::new(rho, 3, 2).unwrap()]);
        assert!(good_parity(&so));
        let symp = CuspidalLabel::new("t", 2, DualityType::Symplectic).unwrap();
        assert!(summand_good_parity(GroupKind::Symplectic, &symp, 2, 1));
        assert!(summand_good_parity(GroupKind::OddOrthogonal, &symp, 2, 2));
    }

    #[test]
    fn component_group_orders() {
        let rho = orth("r");
        let s = |a, b| Summand::new(rho.clone(), a, b).unwrap();
        let psi = |v| ArthurParam::new(GroupKind::Symplectic, v);
        assert_eq!(component_group_order(&psi(alloc::vec![s(3, 1), s(1, 1)])), Ok(2));
        assert_eq!(component_group_order(&psi(alloc::vec![s(3, 1)])), Ok(1));
        assert_eq!(component_group_order(&psi(alloc::vec![])), Ok(1));
        // A doubled summand: the identified generator survives the central quotient.
        assert_eq!(component_group_order(&psi(alloc::vec![s(3, 1), s(3, 1)])), Ok(2));
        assert_eq!(component_group_order(&psi(alloc::vec![s(3, 1), s(3, 1), s(1, 1)])), Ok(2));
        assert_eq!(component_group_order(&psi(alloc::vec![s(2, 1)])), Err(Error::NotGoodParity));
    }

    #[test]
    fn matrix_examples() {
        let rho = orth("r");
        let u = EssSpeh::new(rho.clone(), 3, 2, h(1)).unwrap();
        assert_eq!(u.to_matrix(), UEssMatrix::new(h(-2), h(2), h(0), h(4)));
        assert_eq!(EssSpeh::from_matrix(rho.clone(), &u.to_matrix()), Ok(u));
        let triv = EssSpeh::speh(rho.clone(), 1, 1).unwrap();
        assert_eq!(triv.to_matrix(), UEssMatrix::new(h(0), h(0), h(0), h(0)));
        let bad = UEssMatrix::new(h(0), h(2), h(2), h(6));
        assert_eq!(EssSpeh::from_matrix(rho, &bad), Err(Error::InconsistentMatrix));
    }

    #[test]
    fn classification() {
        let rho = orth("r");
        let chi = CuspidalLabel::new("chi", 1, DualityType::NotSelfDual).unwrap();
        assert_eq!(EssSpeh::new(rho.clone(), 3, 2, h(1)).unwrap().classify(), Ok(SpehType::Small));
        assert_eq!(EssSpeh::new(rho.clone(), 3, 2, h(0)).unwrap().classify(), Ok(SpehType::Unitary));
        assert_eq!(EssSpeh::new(rho.clone(), 1, 4, h(3)).unwrap().classify(), Ok(SpehType::Big));
        assert_eq!(EssSpeh::new(rho.clone(), 3, 2, h(2)).unwrap().classify(), Ok(SpehType::Small));
        assert_eq!(EssSpeh::new(rho.clone(), 3, 2, h(3)).unwrap().classify(), Ok(SpehType::Big));
        assert_eq!(EssSpeh::new(chi, 3, 2, h(1)).unwrap().classify(), Ok(SpehType::NonHalfIntegral));
        assert_eq!(EssSpeh::new(rho, 3, 2, h(-1)).unwrap().classify(), Err(Error::NegativeShift));
    }

    #[test]
    fn contragredients() {
        let rho = orth("r");
        let chi = CuspidalLabel::new("chi", 1, DualityType::NotSelfDual).unwrap();
        let u = EssSpeh::new(rho.clone(), 3, 2, h(1)).unwrap();
        assert_eq!(u.contragredient(), EssSpeh::new(rho.clone(), 3, 2, h(-1)).unwrap());
        let v = EssSpeh::speh(rho, 2, 2).unwrap();
        assert_eq!(v.contragredient(), v);
        let w = EssSpeh::new(chi.clone(), 1, 1, h(2)).unwrap();
        let wd = w.contragredient();
        assert_eq!(wd.rho().name(), "chi^v");
        assert_eq!(wd.s(), h(-2));
        assert_eq!(wd.contragredient(), w);
    }

    #[test]
    fn segments_of_speh() {
        let rho = orth("r");
        // u(3,2)|.|^{1/2} = L([1,-1],[2,0])
        let u = EssSpeh::new(rho, 3, 2, h(1)).unwrap();
        assert_eq!(u.segments(), alloc::vec![(h(2), h(-2)), (h(4), h(0))]);
    }
}
