//! Enumeration of the standard parameters of an Arthur packet.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::half_int::HalfInt;
use crate::model::{good_parity, ArthurParam, CuspidalLabel, GroupKind};

use super::rep::part_in_srep;
use super::{part_sign_parity, ExtMultiSegment, ExtSegment};

/// A surviving part and its sign parity.
type Survivor = (Vec<ExtSegment>, i64);

/// All `mu`-vectors on a fixed standard sequence of segments passing the
/// non-vanishing criterion, each with its sign parity.
fn part_survivors(segs: &[(HalfInt, HalfInt)]) -> Vec<Survivor> {
    let mut out = Vec::new();
    let mut current: Vec<ExtSegment> = Vec::with_capacity(segs.len());
    fn rec(segs: &[(HalfInt, HalfInt)], current: &mut Vec<ExtSegment>, out: &mut Vec<(Vec<ExtSegment>, i64)>) {
        let i = current.len();
        if i == segs.len() {
            if part_in_srep(current) {
                out.push((current.clone(), part_sign_parity(current)));
            }
            return;
        }
        let (a, b) = segs[i];
        let len = (a - b).twice() / 2 + 1;
        for mu in (-len..=len).step_by(2) {
            current.push(ExtSegment { big_a: a, big_b: b, mu });
            rec(segs, current, out);
            current.pop();
        }
    }
    rec(segs, &mut current, &mut out);
    out
}

/// The standard extended multi-segments `S` with `psi_S = psi` and `pi(S) != 0`,
/// one per element of the packet.
pub fn enumerate_packet(psi: &ArthurParam) -> Result<Vec<ExtMultiSegment>> {
    if !good_parity(psi) {
        return Err(Error::NotGoodParity);
    }
    let mut by_rho: BTreeMap<CuspidalLabel, Vec<(HalfInt, HalfInt)>> = BTreeMap::new();
    for s in &psi.summands {
        let (a, b) = (i64::from(s.a), i64::from(s.b));
        by_rho.entry(s.rho.clone()).or_default().push((HalfInt::half(a + b) - 1, HalfInt::half(a - b)));
    }
    let mut per_rho = Vec::new();
    for (rho, mut segs) in by_rho {
        segs.sort_by_key(|&(a, b)| (b, -a));
        per_rho.push((rho, part_survivors(&segs)));
    }
    let mut out = BTreeSet::new();
    let mut choice: Vec<usize> = Vec::new();
    fn combine(
        per_rho: &[(CuspidalLabel, Vec<Survivor>)],
        choice: &mut Vec<usize>,
        parity: i64,
        group: GroupKind,
        out: &mut BTreeSet<ExtMultiSegment>,
    ) {
        let k = choice.len();
        if k == per_rho.len() {
            if parity % 2 == 0 {
                let mut s = ExtMultiSegment::new(group);
                for ((rho, options), &c) in per_rho.iter().zip(choice.iter()) {
                    s.set_part(rho.clone(), options[c].0.clone());
                }
                out.insert(s);
            }
            return;
        }
        for (c, (_, p)) in per_rho[k].1.iter().enumerate() {
            choice.push(c);
            combine(per_rho, choice, parity + p, group, out);
            choice.pop();
        }
    }
    combine(&per_rho, &mut choice, 0, psi.group, &mut out);
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::super::test_util::*;
    use super::*;
    use crate::model::{component_group_order, Summand};
    use alloc::vec;

    fn psi(group: GroupKind, ab: &[(u32, u32)]) -> ArthurParam {
        ArthurParam::new(group, ab.iter().map(|&(a, b)| Summand::new(rho(), a, b).unwrap()).collect())
    }

    #[test]
    fn tempered_pair() {
        let p = psi(GroupKind::Symplectic, &[(3, 1), (1, 1)]);
        let packet = enumerate_packet(&p).unwrap();
        assert_eq!(packet.len(), 2);
        assert_eq!(packet[0].parts[&rho()], vec![ei(0, 0, -1), ei(1, 1, -1)]);
        assert_eq!(packet[1].parts[&rho()], vec![ei(0, 0, 1), ei(1, 1, 1)]);
        assert_eq!(component_group_order(&p), Ok(2));
    }

    #[test]
    fn single_tempered() {
        assert_eq!(enumerate_packet(&psi(GroupKind::Symplectic, &[(5, 1)])).unwrap().len(), 1);
    }

    #[test]
    fn duplicated_summand() {
        let packet = enumerate_packet(&psi(GroupKind::Symplectic, &[(3, 1), (3, 1)])).unwrap();
        for s in &packet {
            let part = &s.parts[&rho()];
            assert_eq!(part[0].mu, part[1].mu);
        }
        assert!(!packet.is_empty());
    }

    #[test]
    fn bad_parity() {
        assert_eq!(enumerate_packet(&psi(GroupKind::Symplectic, &[(2, 1)])), Err(Error::NotGoodParity));
    }
}
