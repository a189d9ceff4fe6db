//! The twelve acceptance criteria, one PASS/FAIL line each.
//!
//! Every criterion is checked exactly as stated. Two of them cannot hold:
//! the table has two rows that name the wrong knot (11), and the closed form
//! of the shifted S-series is off by a sign for odd `q` (12). Those are listed
//! in `UNATTAINABLE`; the test fails if any other criterion fails, or if one
//! of those two unexpectedly starts passing.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use knottab::census::{crossing_number, dedup_census, enumerate, jones_span, verify_table, Filters, RowStatus, TABLE};
use knottab::classify::{compare, CompareOptions, VerdictTag};
use knottab::closedform::{
    self, bracket_diff, bracket_diff_formula, bracket_double_twist, bracket_girth3, conway_diff, conway_diff_formula,
    conway_girth3_even, det_with_ones, s_determinant, s_hat, s_poly, BottomPerm, CorrectionFactor,
};
use knottab::diagram::pd_from_rep;
use knottab::girth::{diagram_girth, find_decomposition, TREE_BUDGET};
use knottab::laurent::{LaurentPoly, Var};
use knottab::oracle::{self, bracket_state_sum, conway_fox};
use knottab::repr::{canonicalize, d3_orbit, Girth1Rep, Girth2Rep, Girth3Rep, Rep};

const UNATTAINABLE: [u32; 2] = [11, 12];

type Criterion = (u32, &'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn a(coeff: i64, exp: i64) -> LaurentPoly {
    LaurentPoly::monomial(Var::A, coeff, exp)
}

fn g3(l: [i64; 6]) -> Girth3Rep {
    Girth3Rep::new([l[0], l[1], l[2]], [l[3], l[4], l[5]])
}

/// Every 6-tuple over `values`.
fn grid(values: &[i64]) -> Vec<Girth3Rep> {
    let n = values.len();
    (0..n.pow(6))
        .map(|mut i| {
            let mut l = [0; 6];
            for x in &mut l {
                *x = values[i % n];
                i /= n;
            }
            g3(l)
        })
        .collect()
}

fn oracle_bracket(rep: &Rep) -> LaurentPoly {
    oracle::bracket(&pd_from_rep(rep).unwrap()).unwrap()
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    o.detail += &format!(" in {took:.2?}");
    if took > limit {
        o.pass = false;
        o.detail += &format!(" (limit {limit:?})");
    }
    o
}

fn c1() -> Outcome {
    timed(Duration::from_secs(60), || {
        let bad: Vec<String> = (-4..=4i64)
            .flat_map(|p| (-4..=4i64).map(move |q| (p, q)))
            .filter(|&(p, q)| {
                let pd = pd_from_rep(&Girth2Rep { p, q }.into()).unwrap();
                bracket_double_twist(p, q) != bracket_state_sum(&pd).unwrap()
            })
            .map(|(p, q)| format!("K({p},{q})"))
            .collect();
        outcome(bad.is_empty(), format!("81 double twists, mismatches {bad:?}"))
    })
}

fn c2() -> Outcome {
    timed(Duration::from_secs(300), || {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let reps: Vec<Girth3Rep> = (0..200).map(|_| g3([(); 6].map(|_| rng.gen_range(-3..=3)))).collect();
        let bad: Vec<String> = reps
            .par_iter()
            .filter(|r| bracket_girth3(r) != oracle_bracket(&(**r).into()))
            .map(|r| r.to_string())
            .collect();
        outcome(bad.is_empty(), format!("200 random reps in [-3,3], mismatches {bad:?}"))
    })
}

fn c3() -> Outcome {
    // 729 = 3^6: the even labels 0, 2, 4.
    let reps = grid(&[0, 2, 4]);
    let bad: Vec<String> = reps
        .par_iter()
        .filter(|r| {
            let pd = pd_from_rep(&(**r).into()).unwrap();
            conway_girth3_even(r).ok() != conway_fox(&pd).ok()
        })
        .map(|r| r.to_string())
        .collect();
    outcome(bad.is_empty(), format!("{} reps over {{0,2,4}}, mismatches {bad:?}", reps.len()))
}

fn c4() -> Outcome {
    let det = det_with_ones([4, 8, 12], [2, 4, 6]);
    let d = &a(1, 2) + &a(1, -2);
    let lhs = &s_determinant([4, 8, 12], [2, 4, 6]) * &(&d * &d);
    let rhs = LaurentPoly::from_terms(Var::A, [(32, 1), (40, -2), (56, 2), (64, -1)]);
    outcome(det == 0 && lhs == rhs, format!("integer determinant {det}, S-determinant times (A^2+A^-2)^2 = {lhs}"))
}

fn c5() -> Outcome {
    let (r1, r2): (Rep, Rep) = (Girth2Rep { p: 2, q: 8 }.into(), Girth2Rep { p: 4, q: 4 }.into());
    let c1 = closedform::conway(&r1).unwrap();
    let c2 = closedform::conway(&r2).unwrap();
    let expected = LaurentPoly::from_terms(Var::Z, [(0, 1), (2, 4)]);
    let span = |r: &Rep| jones_span(&oracle::jones(&pd_from_rep(r).unwrap()).unwrap()).unwrap();
    let (s1, s2) = (span(&r1), span(&r2));
    let tag = compare(&r1, &r2, CompareOptions::default()).tag;
    outcome(
        c1 == expected && c2 == expected && (s1, s2) == (10, 8) && tag == VerdictTag::DistinctByJones,
        format!("Conway {c1} and {c2}, spans {s1} and {s2}, verdict {tag:?}"),
    )
}

fn c6() -> Outcome {
    let bad: Vec<String> = (2..=8i64)
        .flat_map(|p| (2..=8i64).map(move |q| (p, q)))
        .filter_map(|(p, q)| {
            let j = oracle::jones(&pd_from_rep(&Girth2Rep { p, q }.into()).unwrap()).unwrap();
            let s = jones_span(&j).unwrap();
            (s != p + q).then(|| format!("K({p},{q}) span {s}"))
        })
        .collect();
    outcome(bad.is_empty(), format!("49 double twists, violations {bad:?}"))
}

fn c7() -> Outcome {
    let reps = enumerate(2, 10, Filters { even_only: true, positive_only: true }, None).unwrap();
    let census = dedup_census(&reps, CompareOptions::default());
    let multisets: BTreeSet<(i64, i64)> = census
        .classes
        .iter()
        .flat_map(|c| c.members.iter().map(|&m| &census.reps()[m]))
        .filter_map(|r| match r {
            Rep::Girth2(r) => Some((r.p.min(r.q), r.q.max(r.p))),
            _ => None,
        })
        .collect();
    let expected: BTreeSet<(i64, i64)> =
        (2..=10).step_by(2).flat_map(|p| (p..=10).step_by(2).map(move |q| (p, q))).collect();
    let singletons = census.classes.iter().all(|c| c.members.len() == 1);
    outcome(
        census.class_count() == 15 && singletons && multisets == expected,
        format!("{} reps, {} classes, one multiset per class: {singletons}", reps.len(), census.class_count()),
    )
}

fn c8() -> Outcome {
    let orbit_bad: Vec<String> = grid(&[-4, -3, -2, -1, 0, 1, 2, 3, 4])
        .par_iter()
        .filter(|r| {
            let b = bracket_girth3(r);
            let c = conway_girth3_even(r).ok();
            d3_orbit(r).iter().any(|m| bracket_girth3(m) != b || conway_girth3_even(m).ok() != c)
        })
        .map(|r| r.to_string())
        .collect();
    // Conway is compared on knots; for links the two closed forms fix
    // different orientations.
    let same = |x: &Rep, y: &Rep| {
        let knot = pd_from_rep(x).unwrap().components().unwrap() == 1;
        closedform::bracket(x).unwrap() == closedform::bracket(y).unwrap()
            && (!knot || closedform::conway(x).ok().is_some_and(|c| Some(c) == closedform::conway(y).ok()))
    };
    let mut reduction_bad = Vec::new();
    for p in -4..=4i64 {
        for q in -4..=4i64 {
            let (pq, qp): (Rep, Rep) = (Girth2Rep { p, q }.into(), Girth2Rep { p: q, q: p }.into());
            if !same(&pq, &qp) {
                reduction_bad.push(format!("K({p},{q}) vs K({q},{p})"));
            }
        }
        for u in [1, -1] {
            let (two, one): (Rep, Rep) = (Girth2Rep { p, q: u }.into(), Girth1Rep { p: p - u }.into());
            if !same(&two, &one) {
                reduction_bad.push(format!("K({p},{u}) vs K({})", p - u));
            }
        }
    }
    outcome(
        orbit_bad.is_empty() && reduction_bad.is_empty(),
        format!("9^6 girth-3 orbits and girth-2 reductions, failures {orbit_bad:?} {reduction_bad:?}"),
    )
}

fn c9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let reps: Vec<Girth3Rep> = (0..100).map(|_| g3([(); 6].map(|_| 2 * rng.gen_range(1..=6)))).collect();
    let bad: Vec<String> = reps
        .iter()
        .flat_map(|r| BottomPerm::ALL.into_iter().map(move |perm| (r, perm)))
        .filter(|(r, perm)| {
            conway_diff(r, *perm).unwrap() != conway_diff_formula(r, *perm).unwrap()
                || bracket_diff(r, *perm) != bracket_diff_formula(r, *perm, CorrectionFactor::LoopValue)
        })
        .map(|(r, perm)| format!("{r} {perm:?}"))
        .collect();
    outcome(bad.is_empty(), format!("100 random reps, each bottom permutation, factor 1-d^2, mismatches {bad:?}"))
}

fn c10() -> Outcome {
    let reps: Vec<Girth3Rep> = grid(&[2, 4, 6]).into_iter().filter(|r| r.top[0] != r.bottom[0]).collect();
    let equal: Vec<Girth3Rep> = reps
        .par_iter()
        .filter(|r| oracle_bracket(&(**r).into()) == oracle_bracket(&r.exchange_p_a().into()))
        .copied()
        .collect();
    let counter: Vec<String> = equal
        .iter()
        .filter(|r| {
            let ([_, q, rr], [_, b, c]) = (r.top, r.bottom);
            !((q == 0 && c == 0) || (q == c && b == rr))
        })
        .map(|r| r.to_string())
        .collect();
    outcome(
        counter.is_empty(),
        format!("{} reps, {} with equal brackets, counterexamples {counter:?}", reps.len(), equal.len()),
    )
}

fn c11() -> Outcome {
    let rep: Rep = Girth3Rep::new([0, 2, 2], [0, -1, -1]).into();
    let pd = pd_from_rep(&rep).unwrap();
    let (g, _) = diagram_girth(&pd, TREE_BUDGET).unwrap();
    let key = canonicalize(&rep).key;
    let witness =
        (1..=3).find_map(|k| find_decomposition(&pd, TREE_BUDGET, k, |r| canonicalize(r).key == key).unwrap());
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/rolfsen");
    let small: Vec<_> = TABLE.iter().copied().filter(|(n, _)| crossing_number(n).is_some_and(|c| c <= 7)).collect();
    let report = verify_table(&small, &fixtures);
    let bad: Vec<String> = report
        .rows
        .iter()
        .filter(|r| r.status != RowStatus::Pass)
        .map(|r| format!("{} {} ({:?}: {})", r.name, r.rep.as_deref().unwrap_or("-"), r.status, r.note))
        .collect();
    outcome(
        g <= 3 && witness.is_some() && bad.is_empty(),
        format!(
            "diagram girth {g}, witness found: {}; {} rows up to 7 crossings, not passing {bad:?}",
            witness.is_some(),
            report.rows.len()
        ),
    )
}

fn c12() -> Outcome {
    let d = &a(1, 2) + &a(1, -2);
    let one = LaurentPoly::one(Var::A);
    let printed_bad: Vec<i64> = (-10..=10i64).filter(|&q| &s_hat(q) * &d != &one - &a(1, 4 * q)).collect();
    let signed_ok = (-10..=10i64).all(|q| &s_hat(q) * &d == &one - &a(if q % 2 == 0 { 1 } else { -1 }, 4 * q));
    // Mirror relation against the bracket of the twist diagram, not the
    // definition: <K(p)> = d A^-p + S_p.
    let mirror_bad: Vec<i64> = (-10..=10i64)
        .filter(|&p| {
            let twist = |k: i64| {
                let rep: Rep = Girth1Rep { p: k }.into();
                &oracle_bracket(&rep) - &(&loop_value() * &a(1, -k))
            };
            s_poly(-p) != s_poly(p).invert_variable() || twist(p) != s_poly(p)
        })
        .collect();
    outcome(
        printed_bad.is_empty() && mirror_bad.is_empty(),
        format!(
            "1-A^4q fails for q in {printed_bad:?}; 1-(-1)^q A^4q holds for all |q|<=10: {signed_ok}; \
             mirror relation failures {mirror_bad:?}"
        ),
    )
}

fn loop_value() -> LaurentPoly {
    knottab::laurent::loop_value(Var::A)
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 12] = [
        (1, "double twist bracket equals state sum", c1),
        (2, "girth-3 bracket equals oracle on random reps", c2),
        (3, "girth-3 Conway equals Fox calculus", c3),
        (4, "example determinants", c4),
        (5, "K(2,8) and K(4,4)", c5),
        (6, "span law for double twists", c6),
        (7, "double twist census classes", c7),
        (8, "symmetry orbits and reductions", c8),
        (9, "difference formulas equal subtraction", c9),
        (10, "exchange theorem on even labels in [2,6]", c10),
        (11, "girth pipeline and table", c11),
        (12, "S-series identities", c12),
    ];
    let mut failed = Vec::new();
    for (id, title, run) in criteria {
        let o = run();
        // written to the handle directly so the lines show without --nocapture
        let line = format!("{} {id:>2} {title}: {}\n", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        std::io::stderr().write_all(line.as_bytes()).unwrap();
        if !o.pass {
            failed.push(id);
        }
    }
    assert_eq!(failed, UNATTAINABLE, "failing criteria differ from the documented unattainable set");
}
