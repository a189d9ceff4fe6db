//! Decision procedures: symmetry moves on one side, invariant differences
//! on the other. Invariant equality is never upgraded to equivalence.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::closedform::{
    self, bracket_diff, bracket_diff_exchange, conway_diff, conway_double_twist, det_with_ones, s_determinant,
    BottomPerm, ClosedFormError,
};
use crate::diagram::pd_from_rep;
use crate::laurent::{jones_from_bracket, LaurentPoly};
use crate::oracle::{self, FOX_CAP};
use crate::repr::{canonicalize, Girth1Rep, Girth2Rep, Girth3Rep, Rep};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl From<ClosedFormError> for ClassifyError {
    fn from(e: ClosedFormError) -> Self {
        ClassifyError::Precondition(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictTag {
    EqualBySymmetry,
    DistinctByConway,
    DistinctByJones,
    NecessaryConditionFails,
    Unresolved,
}

/// A single representation move that preserves the knot type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Move {
    /// `K(p q r / a b c) -> K(q r p / b c a)`
    Rotate,
    /// `K(p q r / a b c) -> K(p r q / c b a)`
    Reflect,
    /// `K(p q r / a b c) -> K(a b c / q r p)`
    SwapRows,
    /// `K(p,q) -> K(q,p)`
    SwapLabels,
    /// `K(p,±1) -> K(p∓1)` (either label)
    AbsorbUnit,
    /// Negate every label.
    Mirror,
}

impl Move {
    pub fn apply(self, rep: &Rep) -> Option<Rep> {
        match (self, rep) {
            (Move::Mirror, r) => Some(r.mirror()),
            (Move::Rotate, Rep::Girth3(r)) => Some(r.rotate().into()),
            (Move::Reflect, Rep::Girth3(r)) => Some(r.reflect().into()),
            (Move::SwapRows, Rep::Girth3(r)) => Some(r.swap_rows().into()),
            (Move::SwapLabels, Rep::Girth2(r)) => Some(Girth2Rep { p: r.q, q: r.p }.into()),
            (Move::AbsorbUnit, Rep::Girth2(r)) if r.q.abs() == 1 => Some(Girth1Rep { p: r.p - r.q }.into()),
            (Move::AbsorbUnit, Rep::Girth2(r)) if r.p.abs() == 1 => Some(Girth1Rep { p: r.q - r.p }.into()),
            _ => None,
        }
    }
}

pub fn apply_moves(rep: &Rep, moves: &[Move]) -> Option<Rep> {
    moves.iter().try_fold(rep.clone(), |r, m| m.apply(&r))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Invariant {
    Conway,
    Jones,
    /// Kauffman bracket compared up to a unit `±A^k` (used for links).
    Bracket,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// Applying `left` to the first rep and `right` to the second reaches `common`.
    Symmetry {
        left: Vec<Move>,
        right: Vec<Move>,
        common: String,
    },
    /// Invariant of the first minus that of the second. `mirror` is the
    /// difference against the mirror of the second, in mirror-tolerant mode.
    Difference {
        invariant: Invariant,
        poly: LaurentPoly,
        mirror: Option<LaurentPoly>,
    },
    Determinant {
        integer: i64,
        s_determinant: LaurentPoly,
        difference: Option<LaurentPoly>,
    },
    Reason {
        detail: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub tag: VerdictTag,
    pub evidence: Evidence,
}

impl Verdict {
    fn unresolved(detail: impl Into<String>) -> Self {
        Verdict { tag: VerdictTag::Unresolved, evidence: Evidence::Reason { detail: detail.into() } }
    }

    fn symmetry(left: Vec<Move>, right: Vec<Move>, common: &Rep) -> Self {
        Verdict {
            tag: VerdictTag::EqualBySymmetry,
            evidence: Evidence::Symmetry { left, right, common: common.to_string() },
        }
    }

    fn difference(tag: VerdictTag, invariant: Invariant, poly: LaurentPoly) -> Self {
        Verdict { tag, evidence: Evidence::Difference { invariant, poly, mirror: None } }
    }

    pub fn is_distinct(&self) -> bool {
        matches!(
            self.tag,
            VerdictTag::DistinctByConway | VerdictTag::DistinctByJones | VerdictTag::NecessaryConditionFails
        )
    }

    /// Checks the verdict's own evidence against `r1` and `r2`: symmetry
    /// moves must land on the common rep and difference polynomials must be
    /// nonzero.
    pub fn evidence_holds(&self, r1: &Rep, r2: &Rep) -> bool {
        match &self.evidence {
            Evidence::Symmetry { left, right, common } => {
                let a = apply_moves(r1, left).map(|r| r.to_string());
                let b = apply_moves(r2, right).map(|r| r.to_string());
                self.tag == VerdictTag::EqualBySymmetry && a.as_ref() == Some(common) && b.as_ref() == Some(common)
            }
            Evidence::Difference { poly, mirror, .. } => {
                self.is_distinct() && !poly.is_zero() && mirror.as_ref().is_none_or(|m| !m.is_zero())
            }
            Evidence::Determinant { integer, s_determinant, difference } => {
                !self.is_distinct()
                    || ((*integer != 0 || !s_determinant.is_zero()) && difference.as_ref().is_none_or(|d| !d.is_zero()))
            }
            Evidence::Reason { .. } => !self.is_distinct() && self.tag != VerdictTag::EqualBySymmetry,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("verdict serializes")
    }
}

/// Shortest sequence of D3 moves taking `from` to `to`, if they share an orbit.
pub fn d3_path(from: &Girth3Rep, to: &Girth3Rep) -> Option<Vec<Move>> {
    let mut prev: BTreeMap<Girth3Rep, (Girth3Rep, Move)> = BTreeMap::new();
    let mut queue = VecDeque::from([*from]);
    let mut seen = std::collections::BTreeSet::from([*from]);
    while let Some(r) = queue.pop_front() {
        if r == *to {
            let mut moves = Vec::new();
            let mut cur = r;
            while cur != *from {
                let (p, m) = prev[&cur];
                moves.push(m);
                cur = p;
            }
            moves.reverse();
            return Some(moves);
        }
        for (m, next) in [(Move::Rotate, r.rotate()), (Move::Reflect, r.reflect()), (Move::SwapRows, r.swap_rows())] {
            if seen.insert(next) {
                prev.insert(next, (r, m));
                queue.push_back(next);
            }
        }
    }
    None
}

/// Moves taking a rep to its canonical form.
pub fn moves_to_canonical(rep: &Rep) -> Vec<Move> {
    let canon = canonicalize(rep).rep;
    match rep {
        Rep::Girth3(r) => match &canon {
            Rep::Girth3(c) => d3_path(r, c).expect("canonical rep lies in the orbit"),
            _ => unreachable!("girth-3 reps stay girth 3"),
        },
        Rep::Girth2(r) => {
            if r.p.abs() == 1 || r.q.abs() == 1 {
                vec![Move::AbsorbUnit]
            } else if r.p > r.q {
                vec![Move::SwapLabels]
            } else {
                Vec::new()
            }
        }
        _ => Vec::new(),
    }
}

fn symmetry_between(r1: &Rep, r2: &Rep) -> Option<Verdict> {
    let (c1, c2) = (canonicalize(r1), canonicalize(r2));
    (c1.key == c2.key).then(|| Verdict::symmetry(moves_to_canonical(r1), moves_to_canonical(r2), &c1.rep))
}

fn require_even(r: &Girth3Rep) -> Result<(), ClassifyError> {
    if r.all_even() {
        Ok(())
    } else {
        Err(ClassifyError::Precondition(format!("{r}: labels must be even")))
    }
}

fn jones_even(r: &Girth3Rep) -> LaurentPoly {
    jones_from_bracket(&closedform::bracket_girth3(r), r.labels().iter().sum())
}

fn jones_diff_even(r1: &Girth3Rep, bracket_difference: &LaurentPoly) -> LaurentPoly {
    // all-even reps share the writhe, so the Jones difference is the
    // normalized bracket difference
    jones_from_bracket(bracket_difference, r1.labels().iter().sum())
}

/// Even positive double twists: equal iff `{p,q} = {a,b}`, otherwise told
/// apart by `pq` (Conway) or by `p+q` (Jones span).
pub fn classify_girth2_even(p: i64, q: i64, a: i64, b: i64) -> Result<Verdict, ClassifyError> {
    if [p, q, a, b].iter().any(|&x| x <= 0 || x % 2 != 0) {
        return Err(ClassifyError::Precondition(format!("({p},{q}) vs ({a},{b}): labels must be even and positive")));
    }
    let (r1, r2): (Rep, Rep) = (Girth2Rep { p, q }.into(), Girth2Rep { p: a, q: b }.into());
    if let Some(v) = symmetry_between(&r1, &r2) {
        return Ok(v);
    }
    if p * q != a * b {
        let d = &conway_double_twist(p, q)? - &conway_double_twist(a, b)?;
        return Ok(Verdict::difference(VerdictTag::DistinctByConway, Invariant::Conway, d));
    }
    let j = |x: i64, y: i64| jones_from_bracket(&closedform::bracket_double_twist(x, y), x + y);
    Ok(Verdict::difference(VerdictTag::DistinctByJones, Invariant::Jones, &j(p, q) - &j(a, b)))
}

/// Compares `r` with `τ r` for a transposition `τ` of the bottom row.
pub fn transposition_test(r: &Girth3Rep, tau: BottomPerm) -> Result<Verdict, ClassifyError> {
    if !tau.is_transposition() {
        return Err(ClassifyError::Precondition(format!("{tau:?} is not a transposition")));
    }
    require_even(r)?;
    let image = tau.apply(r);
    if r.all_even_positive() {
        let d = conway_diff(r, tau)?;
        if !d.is_zero() {
            return Ok(Verdict::difference(VerdictTag::DistinctByConway, Invariant::Conway, d));
        }
    } else {
        let d = bracket_diff(r, tau);
        if !d.is_zero() {
            return Ok(Verdict::difference(VerdictTag::DistinctByJones, Invariant::Jones, jones_diff_even(r, &d)));
        }
    }
    match d3_path(r, &image) {
        Some(moves) => Ok(Verdict::symmetry(moves, Vec::new(), &image.into())),
        None => Ok(Verdict::unresolved(format!("{r} and {image} agree on the difference factor but share no orbit"))),
    }
}

/// Obstructions for `r` against its image under a 3-cycle of the bottom row:
/// the integer determinant (Conway) and the S-determinant (bracket). Both
/// vanishing leaves the pair unresolved.
pub fn cycle_obstruction(r: &Girth3Rep, cycle: BottomPerm) -> Result<Verdict, ClassifyError> {
    if !cycle.is_three_cycle() {
        return Err(ClassifyError::Precondition(format!("{cycle:?} is not a 3-cycle")));
    }
    require_even(r)?;
    let image = cycle.apply(r);
    let row2 = image.bottom;
    let integer = det_with_ones(r.top, row2);
    let sdet = s_determinant(r.top, row2);
    if integer != 0 && r.all_even_positive() {
        let d = conway_diff(r, cycle)?;
        return Ok(Verdict {
            tag: VerdictTag::DistinctByConway,
            evidence: Evidence::Determinant { integer, s_determinant: sdet, difference: Some(d) },
        });
    }
    if !sdet.is_zero() {
        let d = jones_diff_even(r, &bracket_diff(r, cycle));
        return Ok(Verdict {
            tag: VerdictTag::DistinctByJones,
            evidence: Evidence::Determinant { integer, s_determinant: sdet, difference: Some(d) },
        });
    }
    Ok(Verdict {
        tag: VerdictTag::Unresolved,
        evidence: Evidence::Determinant { integer, s_determinant: sdet, difference: None },
    })
}

/// `K(p q r / a b c)` against `K(a q r / p b c)`. Equal brackets with
/// `p != a` force `q = c = 0`, or `q = c` and `b = r`.
pub fn row_swap_test(r: &Girth3Rep) -> Result<Verdict, ClassifyError> {
    require_even(r)?;
    let image = r.exchange_p_a();
    let [p, q, rr] = r.top;
    let [a, b, c] = r.bottom;
    if p == a {
        return Ok(Verdict::symmetry(Vec::new(), Vec::new(), &(*r).into()));
    }
    let d = bracket_diff_exchange(r);
    let condition = (q == 0 && c == 0) || (q == c && b == rr);
    if !condition {
        return Ok(Verdict::difference(VerdictTag::NecessaryConditionFails, Invariant::Jones, jones_diff_even(r, &d)));
    }
    if !d.is_zero() {
        return Ok(Verdict::difference(VerdictTag::DistinctByJones, Invariant::Jones, jones_diff_even(r, &d)));
    }
    match d3_path(r, &image) {
        Some(moves) => Ok(Verdict::symmetry(moves, Vec::new(), &image.into())),
        None => Ok(Verdict::unresolved(format!("{r} and {image} have equal brackets"))),
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CompareOptions {
    /// Treat a knot and its mirror image as equal.
    pub mirror_ok: bool,
}

/// Invariants of one representation, closed form first, oracle under cap.
#[derive(Clone, Debug)]
pub struct RepInvariants {
    pub components: usize,
    pub conway: Option<LaurentPoly>,
    pub bracket: Option<LaurentPoly>,
    pub jones: Option<LaurentPoly>,
}

pub fn rep_invariants(rep: &Rep) -> RepInvariants {
    let pd = pd_from_rep(rep).ok();
    let crossings = rep.crossing_count() as usize;
    let components = pd.as_ref().and_then(|pd| pd.components().ok()).unwrap_or(0);
    let bracket = closedform::bracket(rep).ok().or_else(|| {
        let pd = pd.as_ref()?;
        oracle::bracket(pd).ok()
    });
    let writhe = pd.as_ref().and_then(|pd| pd.writhe().ok());
    let jones = match (&bracket, writhe) {
        (Some(b), Some(w)) => Some(jones_from_bracket(b, w)),
        _ => None,
    };
    let conway = if components != 1 {
        None
    } else {
        closedform::conway(rep).ok().or_else(|| {
            let pd = pd.as_ref()?;
            (crossings <= FOX_CAP).then(|| oracle::conway_fox(pd).ok()).flatten()
        })
    };
    RepInvariants { components, conway, bracket, jones }
}

/// Orbit membership, then Conway, then Jones (bracket up to a unit for links).
pub fn compare(r1: &Rep, r2: &Rep, opts: CompareOptions) -> Verdict {
    if let Some(v) = symmetry_between(r1, r2) {
        return v;
    }
    if opts.mirror_ok {
        if let Some(Verdict { evidence: Evidence::Symmetry { left, mut right, common }, tag }) =
            symmetry_between(r1, &r2.mirror())
        {
            right.insert(0, Move::Mirror);
            return Verdict { tag, evidence: Evidence::Symmetry { left, right, common } };
        }
    }
    let (i1, i2) = (rep_invariants(r1), rep_invariants(r2));
    if let (Some(c1), Some(c2)) = (&i1.conway, &i2.conway) {
        if c1 != c2 {
            // knot Conway polynomials are mirror invariant
            let d = c1 - c2;
            return Verdict {
                tag: VerdictTag::DistinctByConway,
                evidence: Evidence::Difference {
                    invariant: Invariant::Conway,
                    mirror: opts.mirror_ok.then(|| d.clone()),
                    poly: d,
                },
            };
        }
    }
    if i1.components == 1 && i2.components == 1 {
        if let (Some(j1), Some(j2)) = (&i1.jones, &i2.jones) {
            let d = j1 - j2;
            let m = j1 - &j2.invert_variable();
            if !d.is_zero() && (!opts.mirror_ok || !m.is_zero()) {
                return Verdict {
                    tag: VerdictTag::DistinctByJones,
                    evidence: Evidence::Difference {
                        invariant: Invariant::Jones,
                        poly: d,
                        mirror: opts.mirror_ok.then_some(m),
                    },
                };
            }
            return Verdict::unresolved("Conway and Jones polynomials agree");
        }
    } else if let (Some(b1), Some(b2)) = (&i1.bracket, &i2.bracket) {
        let same = b1.equal_up_to_unit(b2) || (opts.mirror_ok && b1.equal_up_to_unit(&b2.invert_variable()));
        if !same {
            let d = b1 - b2;
            let d = if d.is_zero() { b1 - &b2.scale(-1) } else { d };
            return Verdict {
                tag: VerdictTag::DistinctByJones,
                evidence: Evidence::Difference {
                    invariant: Invariant::Bracket,
                    mirror: opts.mirror_ok.then(|| b1 - &b2.invert_variable()),
                    poly: d,
                },
            };
        }
        return Verdict::unresolved("brackets agree up to a unit");
    }
    Verdict::unresolved("invariants unavailable: no closed form and over the oracle cap")
}

/// Jones polynomial of an all-even girth-3 rep from the closed form.
pub fn jones_girth3_even(r: &Girth3Rep) -> Result<LaurentPoly, ClassifyError> {
    require_even(r)?;
    Ok(jones_even(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::Var;

    #[test]
    fn k28_and_k44_differ_by_jones() {
        let v = classify_girth2_even(2, 8, 4, 4).unwrap();
        assert_eq!(v.tag, VerdictTag::DistinctByJones);
        assert_eq!(classify_girth2_even(2, 4, 4, 2).unwrap().tag, VerdictTag::EqualBySymmetry);
        let v = classify_girth2_even(2, 6, 2, 8).unwrap();
        assert_eq!(v.tag, VerdictTag::DistinctByConway);
        assert!(classify_girth2_even(2, 3, 4, 4).is_err());
    }

    #[test]
    fn transpositions() {
        let r = Girth3Rep::new([2, 4, 4], [2, 4, 6]);
        let v = transposition_test(&r, BottomPerm::SwapAC).unwrap();
        assert_eq!(v.tag, VerdictTag::EqualBySymmetry);
        assert!(v.evidence_holds(&r.into(), &BottomPerm::SwapAC.apply(&r).into()));
        let r = Girth3Rep::new([2, 4, 6], [2, 4, 6]);
        let v = transposition_test(&r, BottomPerm::SwapAB).unwrap();
        assert_eq!(v.tag, VerdictTag::DistinctByConway);
        match v.evidence {
            Evidence::Difference { poly, .. } => assert_eq!(poly, LaurentPoly::monomial(Var::Z, 2, 2)),
            e => panic!("{e:?}"),
        }
        let r = Girth3Rep::new([2, 4, 6], [4, 4, 4]);
        assert_eq!(transposition_test(&r, BottomPerm::SwapBC).unwrap().tag, VerdictTag::EqualBySymmetry);
    }

    #[test]
    fn cycles() {
        let r = Girth3Rep::new([4, 8, 12], [4, 6, 2]);
        let v = cycle_obstruction(&r, BottomPerm::CycleCAB).unwrap();
        assert_eq!(v.tag, VerdictTag::DistinctByJones);
        let r = Girth3Rep::new([2, 2, 2], [2, 2, 2]);
        assert_eq!(cycle_obstruction(&r, BottomPerm::CycleBCA).unwrap().tag, VerdictTag::Unresolved);
        let r = Girth3Rep::new([2, 4, 6], [2, 6, 4]);
        assert_eq!(cycle_obstruction(&r, BottomPerm::CycleCAB).unwrap().tag, VerdictTag::DistinctByConway);
    }

    #[test]
    fn row_swaps() {
        let v = row_swap_test(&Girth3Rep::new([2, 4, 6], [8, 2, 4])).unwrap();
        assert_eq!(v.tag, VerdictTag::NecessaryConditionFails);
        assert!(v.evidence_holds(
            &Girth3Rep::new([2, 4, 6], [8, 2, 4]).into(),
            &Girth3Rep::new([8, 4, 6], [2, 2, 4]).into()
        ));
        let v = row_swap_test(&Girth3Rep::new([2, 4, 6], [2, 2, 4])).unwrap();
        assert_eq!(v.tag, VerdictTag::EqualBySymmetry);
        let v = row_swap_test(&Girth3Rep::new([2, 0, 4], [6, 4, 0])).unwrap();
        assert_ne!(v.tag, VerdictTag::NecessaryConditionFails);
        let v = row_swap_test(&Girth3Rep::new([2, 4, 6], [8, 6, 4])).unwrap();
        assert_ne!(v.tag, VerdictTag::NecessaryConditionFails);
    }

    #[test]
    fn compare_examples() {
        let o = CompareOptions::default();
        let v = compare(&Girth2Rep { p: 2, q: 8 }.into(), &Girth2Rep { p: 4, q: 4 }.into(), o);
        assert_eq!(v.tag, VerdictTag::DistinctByJones);
        let r1: Rep = Girth3Rep::new([4, 8, 12], [4, 6, 2]).into();
        let r2: Rep = Girth3Rep::new([4, 8, 12], [2, 4, 6]).into();
        assert_eq!(compare(&r1, &r2, o).tag, VerdictTag::DistinctByJones);
        let g = Girth3Rep::new([2, 4, 6], [8, 2, 4]);
        for m in crate::repr::d3_orbit(&g) {
            let v = compare(&g.into(), &m.into(), o);
            assert_eq!(v.tag, VerdictTag::EqualBySymmetry);
            assert!(v.evidence_holds(&g.into(), &m.into()));
        }
        let k: Rep = Girth2Rep { p: 3, q: 2 }.into();
        assert_ne!(compare(&k, &k.mirror(), o).tag, VerdictTag::EqualBySymmetry);
        let v = compare(&k, &k.mirror(), CompareOptions { mirror_ok: true });
        assert_eq!(v.tag, VerdictTag::EqualBySymmetry);
        assert!(v.evidence_holds(&k, &k.mirror()));
    }
}
