use proptest::prelude::*;

use knottab::classify::{compare, CompareOptions, VerdictTag};
use knottab::closedform::{self, bracket_girth3};
use knottab::diagram::{pd_from_rep, pretzel_pd};
use knottab::girth::{all_decompositions, rep_from_decomposition, GirthError, TREE_BUDGET};
use knottab::laurent::{jones_from_bracket, LaurentPoly, Var};
use knottab::oracle;
use knottab::repr::{canonicalize, d3_orbit, parse_rep, Girth2Rep, Girth3Rep, Rep};

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -5i64..=5), 0..6).prop_map(|t| LaurentPoly::from_terms(Var::A, t))
}

fn girth3(lo: i64, hi: i64) -> impl Strategy<Value = Girth3Rep> {
    prop::array::uniform6(lo..=hi).prop_map(|l| Girth3Rep::new([l[0], l[1], l[2]], [l[3], l[4], l[5]]))
}

fn even_girth3() -> impl Strategy<Value = Girth3Rep> {
    prop::array::uniform6(-2i64..=2)
        .prop_map(|l| Girth3Rep::new([2 * l[0], 2 * l[1], 2 * l[2]], [2 * l[3], 2 * l[4], 2 * l[5]]))
}

fn rep() -> impl Strategy<Value = Rep> {
    prop_oneof![(-5i64..=5, -5i64..=5).prop_map(|(p, q)| Girth2Rep { p, q }.into()), girth3(-3, 3).prop_map(Rep::from),]
}

fn oracle_bracket(r: &Rep) -> LaurentPoly {
    oracle::bracket(&pd_from_rep(r).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_laws(x in poly(), y in poly(), z in poly()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&x * &LaurentPoly::one(Var::A), x.clone());
    }

    #[test]
    fn variable_inversion_is_a_ring_involution(x in poly(), y in poly()) {
        prop_assert_eq!(x.invert_variable().invert_variable(), x.clone());
        prop_assert_eq!((&x * &y).invert_variable(), &x.invert_variable() * &y.invert_variable());
    }

    #[test]
    fn display_round_trips(x in poly()) {
        prop_assert_eq!(LaurentPoly::parse(Var::A, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn rep_text_round_trips(r in rep()) {
        prop_assert_eq!(parse_rep(&r.to_string()).unwrap(), r);
    }

    #[test]
    fn canonicalize_is_idempotent(r in rep()) {
        let c = canonicalize(&r);
        prop_assert_eq!(canonicalize(&c.rep), c);
    }

    #[test]
    fn canonical_key_is_constant_on_orbits(r in girth3(-4, 4)) {
        let key = canonicalize(&r.into()).key;
        for m in d3_orbit(&r) {
            prop_assert_eq!(&canonicalize(&m.into()).key, &key);
        }
    }

    #[test]
    fn closed_form_bracket_and_jones_match_oracle(r in rep()) {
        let pd = pd_from_rep(&r).unwrap();
        let b = closedform::bracket(&r).unwrap();
        prop_assert_eq!(&b, &oracle::bracket(&pd).unwrap());
        prop_assert_eq!(jones_from_bracket(&b, pd.writhe().unwrap()), oracle::jones(&pd).unwrap());
    }

    #[test]
    fn sweep_equals_state_sum(r in rep()) {
        let pd = pd_from_rep(&r).unwrap();
        prop_assert_eq!(oracle::bracket_sweep(&pd).unwrap(), oracle::bracket_state_sum(&pd).unwrap());
    }

    #[test]
    fn closed_form_conway_matches_fox(r in even_girth3()) {
        let pd = pd_from_rep(&r.into()).unwrap();
        prop_assert_eq!(closedform::conway(&r.into()).unwrap(), oracle::conway_fox(&pd).unwrap());
    }

    /// `K(p q r / s s 0)` is the pretzel link `(p-s, q, r-s)` for `s = ±1`.
    #[test]
    fn unit_bottom_row_gives_a_pretzel(p in -4i64..=4, q in -4i64..=4, r in -4i64..=4, s in prop_oneof![Just(1i64), Just(-1)]) {
        let labels = [p - s, q, r - s];
        prop_assume!(labels.iter().filter(|&&x| x == 0).count() <= 1);
        let rep = Girth3Rep::new([p, q, r], [s, s, 0]);
        prop_assert_eq!(bracket_girth3(&rep), oracle::bracket(&pretzel_pd(&labels)).unwrap());
    }

    #[test]
    fn reduced_trees_have_equal_girth(r in girth3(-2, 2)) {
        prop_assume!(r.crossing_count() <= 9);
        let pd = pd_from_rep(&r.into()).unwrap();
        let all = match all_decompositions(&pd, TREE_BUDGET) {
            Err(GirthError::NotReduced(_)) => return Ok(()),
            other => other.unwrap(),
        };
        for d in all {
            prop_assert_eq!(d.girth, d.dual_girth);
            if d.girth == 3 {
                let back = rep_from_decomposition(&d).unwrap();
                prop_assert!(oracle_bracket(&back).equal_up_to_unit(&oracle::bracket(&pd).unwrap()));
            }
        }
    }

    #[test]
    fn verdict_evidence_holds(r1 in rep(), r2 in rep(), mirror_ok in any::<bool>()) {
        let v = compare(&r1, &r2, CompareOptions { mirror_ok });
        prop_assert!(v.evidence_holds(&r1, &r2), "{} vs {}: {:?}", r1, r2, v);
    }

    /// On even grids the verdict never contradicts the oracle.
    #[test]
    fn verdicts_agree_with_the_oracle(r1 in even_girth3(), r2 in even_girth3()) {
        let (a, b): (Rep, Rep) = (r1.into(), r2.into());
        let v = compare(&a, &b, CompareOptions::default());
        let (ba, bb) = (oracle_bracket(&a), oracle_bracket(&b));
        let jones = |r: &Rep| oracle::jones(&pd_from_rep(r).unwrap()).unwrap();
        let fox = |r: &Rep| oracle::conway_fox(&pd_from_rep(r).unwrap()).unwrap();
        match v.tag {
            VerdictTag::EqualBySymmetry => {
                prop_assert_eq!(jones(&a), jones(&b));
                prop_assert!(ba.equal_up_to_unit(&bb));
            }
            VerdictTag::DistinctByConway => prop_assert_ne!(fox(&a), fox(&b)),
            VerdictTag::DistinctByJones => prop_assert_ne!(jones(&a), jones(&b)),
            VerdictTag::NecessaryConditionFails | VerdictTag::Unresolved => {}
        }
    }

    /// Reps in one orbit are reported equal by symmetry.
    #[test]
    fn orbit_members_compare_equal(r in girth3(-4, 4), k in 0usize..12) {
        let orbit: Vec<Girth3Rep> = d3_orbit(&r).into_iter().collect();
        let m = orbit[k % orbit.len()];
        let v = compare(&r.into(), &m.into(), CompareOptions::default());
        prop_assert_eq!(v.tag, VerdictTag::EqualBySymmetry);
    }
}
