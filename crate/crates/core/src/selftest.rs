//! Formula-against-oracle suites, small enough to run from the command line.

use serde::Serialize;

use crate::closedform::{
    bracket_diff, bracket_diff_formula, bracket_double_twist, bracket_girth3, conway_diff, conway_diff_formula,
    conway_girth3_even, det_with_ones, example_s_determinant_value, s_determinant, s_hat, s_poly, BottomPerm,
    CorrectionFactor,
};
use crate::diagram::pd_from_rep;
use crate::laurent::{LaurentPoly, RationalLaurent, Var};
use crate::oracle;
use crate::repr::{d3_orbit, Girth2Rep, Girth3Rep, Rep};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    /// First failing case, if any.
    pub failure: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn suite(name: &'static str, cases: impl IntoIterator<Item = Result<(), String>>) -> SuiteResult {
    let mut n = 0;
    for c in cases {
        n += 1;
        if let Err(failure) = c {
            return SuiteResult { name, cases: n, failure: Some(failure) };
        }
    }
    SuiteResult { name, cases: n, failure: None }
}

fn even_positive_grid(values: &[i64]) -> Vec<Girth3Rep> {
    let mut out = Vec::new();
    for &p in values {
        for &q in values {
            for &r in values {
                for &a in values {
                    for &b in values {
                        for &c in values {
                            out.push(Girth3Rep::new([p, q, r], [a, b, c]));
                        }
                    }
                }
            }
        }
    }
    out
}

/// A fixed spread of girth-3 reps with labels in `[-3, 3]`.
fn sampled_girth3(count: usize) -> Vec<Girth3Rep> {
    let mut state: u64 = 0x2545_f491_4f6c_dd1d;
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % 7) as i64 - 3
    };
    (0..count)
        .map(|_| {
            let l: Vec<i64> = (0..6).map(|_| next()).collect();
            Girth3Rep::new([l[0], l[1], l[2]], [l[3], l[4], l[5]])
        })
        .collect()
}

fn oracle_bracket(rep: &Rep) -> Result<LaurentPoly, String> {
    let pd = pd_from_rep(rep).map_err(|e| format!("{rep}: {e}"))?;
    oracle::bracket(&pd).map_err(|e| format!("{rep}: {e}"))
}

pub fn run_all() -> Vec<SuiteResult> {
    let mut out = Vec::new();
    out.push(suite(
        "double twist bracket vs state sum",
        (-4..=4i64).flat_map(|p| (-4..=4i64).map(move |q| (p, q))).map(|(p, q)| {
            let rep: Rep = Girth2Rep { p, q }.into();
            let pd = pd_from_rep(&rep).map_err(|e| e.to_string())?;
            let oracle = oracle::bracket_state_sum(&pd).map_err(|e| e.to_string())?;
            (bracket_double_twist(p, q) == oracle).then_some(()).ok_or(format!("{rep}"))
        }),
    ));
    out.push(suite(
        "girth-3 bracket vs oracle",
        sampled_girth3(60).into_iter().map(|r| {
            let o = oracle_bracket(&r.into())?;
            (bracket_girth3(&r) == o).then_some(()).ok_or(format!("{r}"))
        }),
    ));
    out.push(suite(
        "girth-3 Conway vs Fox calculus",
        even_positive_grid(&[0, 2, 4]).into_iter().map(|r| {
            let pd = pd_from_rep(&r.into()).map_err(|e| e.to_string())?;
            let fox = oracle::conway_fox(&pd).map_err(|e| format!("{r}: {e}"))?;
            let cf = conway_girth3_even(&r).map_err(|e| e.to_string())?;
            (cf == fox).then_some(()).ok_or(format!("{r}"))
        }),
    ));
    out.push(suite("example determinants", [example_check()]));
    out.push(suite(
        "difference formulas vs subtraction",
        even_positive_grid(&[2, 6]).into_iter().flat_map(|r| {
            BottomPerm::ALL.into_iter().map(move |perm| {
                let c = conway_diff(&r, perm).map_err(|e| e.to_string())?;
                let cf = conway_diff_formula(&r, perm).map_err(|e| e.to_string())?;
                let b = bracket_diff(&r, perm);
                let bf = bracket_diff_formula(&r, perm, CorrectionFactor::LoopValue);
                (c == cf && b == bf).then_some(()).ok_or(format!("{r} {perm:?}"))
            })
        }),
    ));
    out.push(suite(
        "symmetry orbits",
        even_positive_grid(&[2, 4]).into_iter().map(|r| {
            let b = bracket_girth3(&r);
            let c = conway_girth3_even(&r).map_err(|e| e.to_string())?;
            for m in d3_orbit(&r) {
                if bracket_girth3(&m) != b || conway_girth3_even(&m).ok().as_ref() != Some(&c) {
                    return Err(format!("{r} vs {m}"));
                }
            }
            Ok(())
        }),
    ));
    out.push(suite(
        "S identities",
        (-10..=10i64).map(|q| {
            let lhs = &s_hat(q) * &LaurentPoly::from_terms(Var::A, [(2, 1), (-2, 1)]);
            // the sign alternates with the parity of q
            let sign = if q % 2 == 0 { 1 } else { -1 };
            let rhs = &LaurentPoly::one(Var::A) - &LaurentPoly::monomial(Var::A, sign, 4 * q);
            let mirror = s_poly(-q) == s_poly(q).invert_variable();
            (lhs == rhs && mirror).then_some(()).ok_or(format!("q = {q}"))
        }),
    ));
    out
}

fn example_check() -> Result<(), String> {
    if det_with_ones([4, 8, 12], [2, 4, 6]) != 0 {
        return Err("integer determinant is nonzero".into());
    }
    let sdet = RationalLaurent::from_poly(s_determinant([4, 8, 12], [2, 4, 6]));
    if sdet != example_s_determinant_value() {
        return Err(format!("S-determinant {sdet}"));
    }
    Ok(())
}
