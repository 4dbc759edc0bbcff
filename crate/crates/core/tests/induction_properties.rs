mod common;

use std::collections::BTreeSet;

use arthur_core::exms::{in_srep, standard_form, ExtMultiSegment};
use arthur_core::induction::{
    adjacent_pair_exists, decompose_multi, decompose_single, insert_all, nu_set_single, nu_tuples_multi, SpehFactor,
};
use arthur_core::{summand_good_parity, Error, GroupKind};
use common::*;
use proptest::prelude::*;

fn srep(min: usize, max: usize) -> impl Strategy<Value = ExtMultiSegment> {
    exms(min, max).prop_filter("not in Rep", |s| in_srep(s).unwrap())
}

fn factor_for(group: GroupKind, c: u32, d: u32) -> Option<SpehFactor> {
    summand_good_parity(group, &rho(), c, d).then(|| SpehFactor::new(rho(), c, d).unwrap())
}

/// All `nu` tuples whose full insertion is non-vanishing.
fn oracle_tuples(s: &ExtMultiSegment, fs: &[SpehFactor]) -> Vec<Vec<i64>> {
    let mut tuples: Vec<Vec<i64>> = vec![vec![]];
    for f in fs {
        let d = i64::from(f.d);
        tuples = tuples
            .into_iter()
            .flat_map(|t| (-d..=d).step_by(2).map(move |nu| [t.clone(), vec![nu]].concat()))
            .collect();
    }
    tuples
        .into_iter()
        .filter(|t| match insert_all(s, fs, t) {
            Ok(full) => in_srep(&full).unwrap_or(false),
            Err(_) => false,
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn nu_set_is_a_progression(s in srep(0, 4), c in 1u32..=5, d in 1u32..=4) {
        if let Some(f) = factor_for(s.group, c, d) {
            let n = nu_set_single(&s, &f).unwrap();
            prop_assert!(!n.is_empty());
            prop_assert!(n.windows(2).all(|w| w[1] - w[0] == 2));
            let parts = decompose_single(&s, &f).unwrap();
            prop_assert_eq!(parts.len(), n.len());
            prop_assert_eq!(n.len() == 1, parts.len() == 1);
        }
    }

    #[test]
    fn tuples_match_the_oracle(s in srep(0, 3), cd in prop::collection::vec((1u32..=4, 1u32..=3), 1..=2)) {
        let fs: Option<Vec<SpehFactor>> = cd.iter().map(|&(c, d)| factor_for(s.group, c, d)).collect();
        if let Some(fs) = fs {
            prop_assert_eq!(nu_tuples_multi(&s, &fs).unwrap(), oracle_tuples(&s, &fs));
            let parts = decompose_multi(&s, &fs).unwrap();
            let distinct: BTreeSet<ExtMultiSegment> =
                parts.iter().map(|p| standard_form(p).unwrap()).collect();
            prop_assert_eq!(distinct.len(), parts.len());
        }
    }

    #[test]
    fn reducible_factors_have_adjacent_points(s in srep(0, 3), cd in prop::collection::vec((1u32..=4, 1u32..=3), 1..=3)) {
        let fs: Option<Vec<SpehFactor>> = cd.iter().map(|&(c, d)| factor_for(s.group, c, d)).collect();
        if let Some(fs) = fs {
            match adjacent_pair_exists(&s, &fs) {
                Ok(found) => prop_assert!(found),
                Err(Error::Precondition(_)) => {}
                Err(e) => prop_assert!(false, "{e}"),
            }
        }
    }
}
