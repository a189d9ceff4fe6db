use knottab::diagram::pd_from_rep;
use knottab::girth::{diagram_girth, find_decomposition, rep_from_decomposition, TREE_BUDGET};
use knottab::oracle::{bracket, jones};
use knottab::repr::{canonicalize, Girth2Rep, Girth3Rep, Rep};

/// Same link type as far as the bracket can tell; Jones of a link depends on
/// the orientation the template picks.
fn same_link(a: &knottab::diagram::PDCode, b: &knottab::diagram::PDCode) -> bool {
    bracket(a).unwrap().equal_up_to_unit(&bracket(b).unwrap())
}

fn g3(top: [i64; 3], bottom: [i64; 3]) -> Rep {
    Rep::Girth3(Girth3Rep::new(top, bottom))
}

#[test]
fn double_twist_witness_recovers_labels() {
    for (p, q) in [(2, -2), (3, 2), (-4, 3), (2, 2), (5, -3)] {
        let rep: Rep = Girth2Rep { p, q }.into();
        let pd = pd_from_rep(&rep).unwrap();
        let (g, w) = diagram_girth(&pd, TREE_BUDGET).unwrap();
        assert_eq!(g, 2);
        let back = rep_from_decomposition(&w).unwrap();
        assert!(same_link(&pd_from_rep(&back).unwrap(), &pd), "{rep} -> {back}");
    }
}

#[test]
fn girth3_templates_round_trip() {
    for rep in
        [g3([2, 2, 2], [2, 2, 2]), g3([0, 2, 2], [0, -1, -1]), g3([2, -2, 2], [1, 3, -1]), g3([1, 2, 3], [1, 1, 2])]
    {
        let pd = pd_from_rep(&rep).unwrap();
        let (g, _) = diagram_girth(&pd, TREE_BUDGET).unwrap();
        assert!(g <= 3, "{rep}: girth {g}");
        let key = canonicalize(&rep).key;
        let hit = find_decomposition(&pd, TREE_BUDGET, 3, |r| canonicalize(r).key == key).unwrap();
        let (_, back) = hit.unwrap_or_else(|| panic!("{rep}: no girth-3 witness recovers it"));
        assert!(same_link(&pd_from_rep(&back).unwrap(), &pd), "{rep} -> {back}");
        if pd.components().unwrap() == 1 {
            assert_eq!(jones(&pd_from_rep(&back).unwrap()).unwrap(), jones(&pd).unwrap());
        }
    }
}

#[test]
fn every_low_girth_decomposition_of_the_fixtures_recovers_the_knot() {
    use knottab::census::load_fixture;
    use knottab::girth::all_decompositions;
    let dir = std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/rolfsen");
    let mut checked = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let fx = load_fixture(&entry.unwrap().path()).unwrap();
        for d in all_decompositions(&fx.pd, TREE_BUDGET).unwrap() {
            assert_eq!(d.girth, d.dual_girth, "{}", fx.name);
            if d.girth > 3 {
                continue;
            }
            let rep = rep_from_decomposition(&d).unwrap_or_else(|e| panic!("{}: {e}", fx.name));
            assert!(same_link(&pd_from_rep(&rep).unwrap(), &fx.pd), "{}: {rep}", fx.name);
            checked += 1;
        }
    }
    assert!(checked > 100, "{checked}");
}
