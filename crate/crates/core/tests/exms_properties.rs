mod common;

use arthur_core::exms::{
    atobe_sign_condition, aubert_dual, delta, deform, from_atobe, in_rep_bruteforce, in_srep, is_standard,
    necessary_condition, reorder, sign_condition_holds, standard_form, to_atobe, DEFAULT_MAX_STATES,
};
use common::*;
use proptest::prelude::*;

fn sorted_ab(s: &arthur_core::exms::ExtMultiSegment) -> Vec<(u32, u32)> {
    let mut v: Vec<(u32, u32)> = s.psi().unwrap().summands.iter().map(|x| (x.a, x.b)).collect();
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn atobe_round_trip_and_sign_transport(g in group(), raw in raw_segs(1, 5)) {
        if let Some(s) = build(g, &raw, false) {
            let sym = to_atobe(&s).unwrap();
            prop_assert_eq!(from_atobe(&sym).unwrap(), s.clone());
            prop_assert_eq!(atobe_sign_condition(&sym), sign_condition_holds(&s));
        }
    }

    #[test]
    fn reorder_is_an_involution(s in exms(2, 5), pick in 0usize..4) {
        let part = s.part(&rho()).unwrap();
        let i = pick % (part.len() - 1);
        let (p, q) = (part[i], part[i + 1]);
        if !p.same_segment(&q) || p.mu == q.mu {
            if let Ok(r) = reorder(&s, &rho(), i + 1) {
                prop_assert_eq!(reorder(&r, &rho(), i + 1).unwrap(), s);
            }
        }
    }

    #[test]
    fn reorder_keeps_sign_condition(s in exms(2, 5), pick in 0usize..4) {
        let i = pick % (s.len() - 1);
        if let Ok(r) = reorder(&s, &rho(), i + 1) {
            prop_assert!(sign_condition_holds(&r));
        }
    }

    #[test]
    fn standard_form_is_idempotent(s in exms(1, 5)) {
        let std = standard_form(&s).unwrap();
        prop_assert!(is_standard(&std));
        prop_assert_eq!(standard_form(&std).unwrap(), std);
    }

    #[test]
    fn delta_is_antisymmetric(s in exms(2, 5), i in 1usize..=5, j in 1usize..=5) {
        let n = s.len();
        let (i, j) = ((i - 1) % n + 1, (j - 1) % n + 1);
        prop_assert_eq!(delta(&s, &rho(), i, j).unwrap(), -delta(&s, &rho(), j, i).unwrap());
    }

    #[test]
    fn criterion_matches_definition(s in exms(1, 4)) {
        prop_assert_eq!(in_srep(&s).unwrap(), in_rep_bruteforce(&s, DEFAULT_MAX_STATES).unwrap());
    }

    #[test]
    fn nonvanishing_implies_necessary(s in exms(1, 5)) {
        if in_srep(&s).unwrap() {
            prop_assert!(necessary_condition(&s));
        }
    }

    #[test]
    fn dual_swaps_parameter(s in exms(1, 5)) {
        if in_srep(&s).unwrap() {
            let d = aubert_dual(&s).unwrap();
            prop_assert!(d.validate().is_admissible());
            prop_assert!(in_srep(&d).unwrap());
            let swapped: Vec<(u32, u32)> = {
                let mut v: Vec<(u32, u32)> = sorted_ab(&s).into_iter().map(|(a, b)| (b, a)).collect();
                v.sort();
                v
            };
            prop_assert_eq!(sorted_ab(&d), swapped);
            prop_assert_eq!(aubert_dual(&d).unwrap(), standard_form(&s).unwrap());
        }
    }

    #[test]
    fn deform_preserves_dimension(s in exms(2, 5)) {
        if in_srep(&s).unwrap() {
            for k in 2..=s.len() {
                if let Ok(d) = deform(&s, &rho(), k) {
                    prop_assert!(d.validate().is_admissible());
                    prop_assert!(in_srep(&d).unwrap());
                    prop_assert_eq!(d.dimension().unwrap(), s.dimension().unwrap());
                }
            }
        }
    }
}
