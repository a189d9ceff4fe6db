//! Closed-form invariants of the girth-1, girth-2 and girth-3 families.
//!
//! Bracket normalization throughout: the crossingless circle has bracket 1
//! and each further loop contributes `-A^2 - A^-2`.

use thiserror::Error;

use crate::laurent::{loop_value, LaurentPoly, RationalLaurent, Var};
use crate::repr::{Girth1Rep, Girth2Rep, Girth3Rep, Rep};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClosedFormError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no closed form for {0}")]
    NoClosedForm(String),
}

/// Orientation of the two strands of a twist region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrientationCase {
    SameDirection,
    OppositeDirections,
}

fn z() -> LaurentPoly {
    LaurentPoly::var(Var::Z)
}

fn a_mono(c: i64, e: i64) -> LaurentPoly {
    LaurentPoly::monomial(Var::A, c, e)
}

/// `∇_p` of the single twist `K(p)` oriented as given.
pub fn conway_single_twist(p: i64, case: OrientationCase) -> Result<LaurentPoly, ClosedFormError> {
    match case {
        OrientationCase::SameDirection => {
            let n = p.unsigned_abs();
            // ∇_0 = 0, ∇_1 = 1, ∇_k = z ∇_{k-1} + ∇_{k-2}
            let (mut prev, mut cur) = (LaurentPoly::zero(Var::Z), LaurentPoly::one(Var::Z));
            if n == 0 {
                return Ok(prev);
            }
            for _ in 1..n {
                let next = &(&z() * &cur) + &prev;
                prev = cur;
                cur = next;
            }
            Ok(if p < 0 && n.is_multiple_of(2) { -cur } else { cur })
        }
        OrientationCase::OppositeDirections => {
            if p % 2 != 0 {
                return Err(ClosedFormError::Precondition(format!("opposite directions needs an even twist, got {p}")));
            }
            // p/2 z for p > 0 and -p/2 z for p < 0, as stated.
            Ok(LaurentPoly::monomial(Var::Z, p.abs() / 2, 1))
        }
    }
}

/// `∇_{p-1} - ((q+1)/2) z ∇_p` (q > 0) or `((q-1)/2) z ∇_p + ∇_{p+1}`
/// (q < 0), exactly as printed. Kept for comparison with the calibrated
/// formula used by [`conway_double_twist`].
pub fn conway_double_twist_printed(p: i64, q: i64) -> Result<LaurentPoly, ClosedFormError> {
    if q % 2 == 0 || p == 0 {
        return Err(ClosedFormError::Precondition("needs p nonzero and q odd".into()));
    }
    let nab = |k: i64| conway_single_twist(k, OrientationCase::SameDirection).unwrap();
    Ok(if q > 0 {
        &nab(p - 1) - &(&z() * &nab(p)).scale((q + 1) / 2)
    } else {
        &(&z() * &nab(p)).scale((q - 1) / 2) + &nab(p + 1)
    })
}

/// Conway polynomial of the double twist knot `K(p,q)`.
///
/// Both labels even: `pq/4 z^2 + 1`. One label odd, say `q`: the printed
/// negative-`q` branch evaluated at `(sign(q) p, -|q|)`, which is the reading
/// the diagram oracle confirms. Both odd gives a two-component link.
pub fn conway_double_twist(p: i64, q: i64) -> Result<LaurentPoly, ClosedFormError> {
    match (p % 2 == 0, q % 2 == 0) {
        (true, true) => {
            // sign(p) sign(q) |p| |q| / 4
            Ok(&LaurentPoly::monomial(Var::Z, p * q / 4, 2) + &LaurentPoly::one(Var::Z))
        }
        (true, false) if p == 0 => Ok(LaurentPoly::one(Var::Z)),
        (true, false) => conway_double_twist_printed(q.signum() * p, -q.abs()),
        (false, true) => conway_double_twist(q, p),
        (false, false) => Err(ClosedFormError::NoClosedForm(format!("K({p},{q}) is a link"))),
    }
}

fn require_even_positive(r: &Girth3Rep) -> Result<(), ClosedFormError> {
    if r.all_even_positive() {
        Ok(())
    } else {
        Err(ClosedFormError::Precondition(format!("{r}: labels must be even and positive")))
    }
}

/// Conway polynomial of `K(p q r / a b c)` for even labels. Stated for
/// positive labels; the Fox oracle agrees for zero and negative even ones too.
pub fn conway_girth3_even(r: &Girth3Rep) -> Result<LaurentPoly, ClosedFormError> {
    if !r.all_even() {
        return Err(ClosedFormError::Precondition(format!("{r}: labels must be even")));
    }
    let [p, q, rr] = r.top;
    let [a, b, c] = r.bottom;
    let quartic = (p * q + p * rr + q * rr) * (a * b + a * c + b * c);
    let quadratic = p * a + p * c + q * a + q * b + rr * b + rr * c;
    assert!(quartic % 16 == 0 && quadratic % 4 == 0, "inexact division for {r}");
    Ok(LaurentPoly::from_terms(Var::Z, [(4, quartic / 16), (2, quadratic / 4), (0, 1)]))
}

/// Permutations of the bottom row `(a, b, c)`, named by the resulting row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BottomPerm {
    Identity,
    /// `(b a c)`
    SwapAB,
    /// `(a c b)`
    SwapBC,
    /// `(c b a)`
    SwapAC,
    /// `(c a b)`
    CycleCAB,
    /// `(b c a)`
    CycleBCA,
}

impl BottomPerm {
    pub const ALL: [BottomPerm; 6] = [
        BottomPerm::Identity,
        BottomPerm::SwapAB,
        BottomPerm::SwapBC,
        BottomPerm::SwapAC,
        BottomPerm::CycleCAB,
        BottomPerm::CycleBCA,
    ];

    pub fn indices(self) -> [usize; 3] {
        match self {
            BottomPerm::Identity => [0, 1, 2],
            BottomPerm::SwapAB => [1, 0, 2],
            BottomPerm::SwapBC => [0, 2, 1],
            BottomPerm::SwapAC => [2, 1, 0],
            BottomPerm::CycleCAB => [2, 0, 1],
            BottomPerm::CycleBCA => [1, 2, 0],
        }
    }

    pub fn is_transposition(self) -> bool {
        matches!(self, BottomPerm::SwapAB | BottomPerm::SwapBC | BottomPerm::SwapAC)
    }

    pub fn is_three_cycle(self) -> bool {
        matches!(self, BottomPerm::CycleCAB | BottomPerm::CycleBCA)
    }

    pub fn apply(self, r: &Girth3Rep) -> Girth3Rep {
        r.permute_bottom(self.indices())
    }
}

/// 3x3 integer determinant with last row `(1, 1, 1)`.
pub fn det_with_ones(row1: [i64; 3], row2: [i64; 3]) -> i64 {
    let [x1, x2, x3] = row1;
    let [y1, y2, y3] = row2;
    x1 * (y2 - y3) - x2 * (y1 - y3) + x3 * (y1 - y2)
}

/// `∇(r) - ∇(perm r)` by direct subtraction.
pub fn conway_diff(r: &Girth3Rep, perm: BottomPerm) -> Result<LaurentPoly, ClosedFormError> {
    Ok(&conway_girth3_even(r)? - &conway_girth3_even(&perm.apply(r))?)
}

/// The product and determinant forms of the Conway differences.
pub fn conway_diff_formula(r: &Girth3Rep, perm: BottomPerm) -> Result<LaurentPoly, ClosedFormError> {
    require_even_positive(r)?;
    let [p, q, rr] = r.top;
    let [a, b, c] = r.bottom;
    let coeff = match perm {
        BottomPerm::Identity => 0,
        BottomPerm::SwapAB => (p - rr) * (a - b),
        BottomPerm::SwapBC => (p - q) * (c - b),
        BottomPerm::SwapAC => (q - rr) * (a - c),
        BottomPerm::CycleCAB => det_with_ones([p, q, rr], [c, a, b]),
        BottomPerm::CycleBCA => -det_with_ones([p, q, rr], [a, b, c]),
    };
    assert!(coeff % 4 == 0, "inexact division for {r}");
    Ok(LaurentPoly::monomial(Var::Z, coeff / 4, 2))
}

/// `S_p = sum_{i=1}^{p} A^(2-i) (-A^3)^(p-i)`, `S_-p(A) = S_p(A^-1)`, `S_0 = 0`.
pub fn s_poly(p: i64) -> LaurentPoly {
    if p < 0 {
        return s_poly(-p).invert_variable();
    }
    LaurentPoly::from_terms(
        Var::A,
        (1..=p).map(|i| {
            let k = p - i;
            (2 - i + 3 * k, if k % 2 == 0 { 1 } else { -1 })
        }),
    )
}

/// `Ŝ_p = S_p A^p`.
pub fn s_hat(p: i64) -> LaurentPoly {
    s_poly(p).shift(p)
}

/// Bracket of the single twist `K(p)`: `(-A^2 - A^-2) A^-p + S_p`.
pub fn bracket_single_twist(p: i64) -> LaurentPoly {
    &(&loop_value(Var::A) * &a_mono(1, -p)) + &s_poly(p)
}

/// `<K(p,q)> = (-A^2 - A^-2)(S_p A^-q + S_q A^-p) + S_p S_q + A^(-p-q)`.
pub fn bracket_double_twist(p: i64, q: i64) -> LaurentPoly {
    let (sp, sq) = (s_poly(p), s_poly(q));
    let cross = &sp.shift(-q) + &sq.shift(-p);
    &(&(&loop_value(Var::A) * &cross) + &(&sp * &sq)) + &a_mono(1, -p - q)
}

/// Symmetric functions `S^0..S^3` of a triple.
pub fn sym_s(k: u8, t: [i64; 3]) -> LaurentPoly {
    let [p, q, r] = t;
    let (sp, sq, sr) = (s_poly(p), s_poly(q), s_poly(r));
    match k {
        0 => a_mono(1, -p - q - r),
        1 => &(&sp.shift(-q - r) + &sq.shift(-p - r)) + &sr.shift(-p - q),
        2 => &(&(&sp * &sq).shift(-r) + &(&sp * &sr).shift(-q)) + &(&sq * &sr).shift(-p),
        3 => &(&sp * &sq) * &sr,
        _ => panic!("sym_s index {k} out of range"),
    }
}

/// Bracket of `K(p q r / a b c)`.
pub fn bracket_girth3(rep: &Girth3Rep) -> LaurentPoly {
    let top = rep.top;
    let bot = rep.bottom;
    let [p, q, r] = top;
    let [a, b, c] = bot;
    let t: Vec<LaurentPoly> = (0..4).map(|k| sym_s(k, top)).collect();
    let u: Vec<LaurentPoly> = (0..4).map(|k| sym_s(k, bot)).collect();
    let s = s_poly;
    // S_x S_y A^-(w - x - y)
    let w = p + q + r + a + b + c;
    let pair = |x: i64, y: i64| (&s(x) * &s(y)).shift(-(w - x - y));
    let d = loop_value(Var::A);
    let d2 = &d * &d;
    let d3 = &d2 * &d;

    let block0 = [&t[0] * &u[0], &t[2] * &u[2], pair(p, a), pair(p, c), pair(q, a), pair(q, b), pair(r, b), pair(r, c)];
    let block1 = [&t[1] * &u[0], &t[0] * &u[1], &t[2] * &u[1], &t[1] * &u[2], &t[3] * &u[2], &t[2] * &u[3]];
    let block2 =
        [&t[2] * &u[0], &t[0] * &u[2], &t[3] * &u[1], &t[1] * &u[3], &t[3] * &u[3], pair(p, b), pair(q, c), pair(r, a)];
    let block3 = [&t[3] * &u[0], &t[0] * &u[3]];
    let sum = |xs: &[LaurentPoly]| xs.iter().fold(LaurentPoly::zero(Var::A), |acc, x| &acc + x);
    let mut total = sum(&block0);
    total = &total + &(&sum(&block1) * &d);
    total = &total + &(&sum(&block2) * &d2);
    &total + &(&sum(&block3) * &d3)
}

/// Closed-form bracket of any girth-1/2/3 representation.
pub fn bracket(rep: &Rep) -> Result<LaurentPoly, ClosedFormError> {
    match rep {
        Rep::Girth1(Girth1Rep { p }) => Ok(bracket_single_twist(*p)),
        Rep::Girth2(Girth2Rep { p, q }) => Ok(bracket_double_twist(*p, *q)),
        Rep::Girth3(r) => Ok(bracket_girth3(r)),
        Rep::General(_) => Err(ClosedFormError::NoClosedForm(rep.to_string())),
    }
}

/// Closed-form Conway polynomial of a girth-1/2/3 representation. Single
/// twists use the braid orientation; girth 3 needs even positive labels.
pub fn conway(rep: &Rep) -> Result<LaurentPoly, ClosedFormError> {
    match rep {
        Rep::Girth1(Girth1Rep { p }) => conway_single_twist(*p, OrientationCase::SameDirection),
        Rep::Girth2(Girth2Rep { p, q }) => conway_double_twist(*p, *q),
        Rep::Girth3(r) => conway_girth3_even(r),
        Rep::General(_) => Err(ClosedFormError::NoClosedForm(rep.to_string())),
    }
}

/// Which reading of the printed correction factor to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorrectionFactor {
    /// `1 - (-A^2 - A^-1)^2`, as printed.
    Printed,
    /// `1 - (-A^2 - A^-2)^2`.
    LoopValue,
}

impl CorrectionFactor {
    pub fn poly(self) -> LaurentPoly {
        let inner = match self {
            CorrectionFactor::Printed => LaurentPoly::from_terms(Var::A, [(2, -1), (-1, -1)]),
            CorrectionFactor::LoopValue => loop_value(Var::A),
        };
        &LaurentPoly::one(Var::A) - &(&inner * &inner)
    }
}

/// `<r> - <perm r>` by direct subtraction.
pub fn bracket_diff(r: &Girth3Rep, perm: BottomPerm) -> LaurentPoly {
    &bracket_girth3(r) - &bracket_girth3(&perm.apply(r))
}

/// The S-determinant `det[(Ŝ_p, Ŝ_q, Ŝ_r), row2, (1, 1, 1)]`.
pub fn s_determinant(top: [i64; 3], row2: [i64; 3]) -> LaurentPoly {
    let x = top.map(s_hat);
    let y = row2.map(s_hat);
    let minor = |i: usize, j: usize| &y[i] - &y[j];
    let t1 = &x[0] * &minor(1, 2);
    let t2 = &x[1] * &minor(0, 2);
    let t3 = &x[2] * &minor(0, 1);
    &(&t1 - &t2) + &t3
}

/// The product and determinant forms of the bracket differences.
pub fn bracket_diff_formula(r: &Girth3Rep, perm: BottomPerm, factor: CorrectionFactor) -> LaurentPoly {
    let [p, q, rr] = r.top;
    let [a, b, c] = r.bottom;
    let w = p + q + rr + a + b + c;
    let h = s_hat;
    let core = match perm {
        BottomPerm::Identity => return LaurentPoly::zero(Var::A),
        BottomPerm::SwapAB => &(&h(p) - &h(rr)) * &(&h(a) - &h(b)),
        BottomPerm::SwapBC => &(&h(p) - &h(q)) * &(&h(c) - &h(b)),
        BottomPerm::SwapAC => &(&h(q) - &h(rr)) * &(&h(a) - &h(c)),
        BottomPerm::CycleCAB => s_determinant([p, q, rr], [c, a, b]),
        BottomPerm::CycleBCA => -s_determinant([p, q, rr], [a, b, c]),
    };
    &core.shift(-w) * &factor.poly()
}

/// `<K(p q r / a b c)> - <K(a q r / p b c)>` in the printed factored form.
pub fn bracket_diff_exchange_formula(r: &Girth3Rep) -> LaurentPoly {
    let [p, q, rr] = r.top;
    let [a, b, c] = r.bottom;
    let s = s_poly;
    let d = loop_value(Var::A);
    let d2 = &d * &d;
    let d3 = &d2 * &d;
    let first = &s(p).shift(-q - rr - a - b - c) - &s(a).shift(-p - q - rr - b - c);
    let second = &(&s(b) * &s(c)).shift(-p - q - rr - a) - &(&s(q) * &s(rr)).shift(-p - a - b - c);
    let third = &d - &d3;
    let sum = [
        (&(&s(q) * &s(b)) * &s(c)).shift(-p - rr - a),
        (&(&s(rr) * &s(b)) * &s(c)).shift(-p - q - a),
        s(c).shift(-p - q - rr - a - b),
        -(&(&s(q) * &s(rr)) * &s(b)).shift(-p - a - c),
        -(&(&s(q) * &s(rr)) * &s(c)).shift(-p - a - b),
        -s(q).shift(-p - rr - a - b - c),
    ]
    .iter()
    .fold(LaurentPoly::zero(Var::A), |acc, x| &acc + x);
    let one = LaurentPoly::one(Var::A);
    &(&(&first * &second) * &third) + &(&sum * &(&one - &d2))
}

/// `<K(p q r / a b c)> - <K(a q r / p b c)>` by direct subtraction.
pub fn bracket_diff_exchange(r: &Girth3Rep) -> LaurentPoly {
    &bracket_girth3(r) - &bracket_girth3(&r.exchange_p_a())
}

/// Both sides of the identity obtained by clearing denominators in the
/// equal-bracket condition for the `p <-> a` exchange:
/// `(left, right)` with `left - right` vanishing exactly when the condition holds.
pub fn exchange_identity_sides(q: i64, r: i64, b: i64, c: i64) -> (LaurentPoly, LaurentPoly) {
    let one = LaurentPoly::one(Var::A);
    let f = |k: i64| &one - &a_mono(1, 4 * k);
    let left = &(&(&(&f(q) * &f(b)) * &f(c)) + &(&(&f(r) * &f(b)) * &f(c)))
        - &(&(&(&f(q) * &f(r)) * &f(b)) + &(&(&f(q) * &f(r)) * &f(c)));
    let dd = LaurentPoly::from_terms(Var::A, [(2, 1), (-2, 1)]);
    let bracket = &(&(&f(b) * &f(c)) - &(&f(q) * &f(r))) + &(&a_mono(1, 4 * c) - &a_mono(1, 4 * q));
    let right = &(&dd * &dd) * &bracket;
    (left, right)
}

/// The example S-determinant value `(A^32 - 2A^40 + 2A^56 - A^64) / (A^2 + A^-2)^2`.
pub fn example_s_determinant_value() -> RationalLaurent {
    let num = LaurentPoly::from_terms(Var::A, [(32, 1), (40, -2), (56, 2), (64, -1)]);
    let d = LaurentPoly::from_terms(Var::A, [(2, 1), (-2, 1)]);
    RationalLaurent::new(num, &d * &d).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp(s: &str) -> LaurentPoly {
        LaurentPoly::parse(Var::Z, s).unwrap()
    }
    fn ap(s: &str) -> LaurentPoly {
        LaurentPoly::parse(Var::A, s).unwrap()
    }

    #[test]
    fn single_twist_conway() {
        use OrientationCase::*;
        assert_eq!(conway_single_twist(1, SameDirection).unwrap(), zp("1"));
        assert_eq!(conway_single_twist(2, SameDirection).unwrap(), zp("z"));
        assert_eq!(conway_single_twist(3, SameDirection).unwrap(), zp("z^2 + 1"));
        assert_eq!(conway_single_twist(-3, SameDirection).unwrap(), zp("z^2 + 1"));
        assert_eq!(conway_single_twist(-4, SameDirection).unwrap(), -conway_single_twist(4, SameDirection).unwrap());
        assert_eq!(conway_single_twist(4, OppositeDirections).unwrap(), zp("2z"));
        assert!(conway_single_twist(3, OppositeDirections).is_err());
    }

    #[test]
    fn double_twist_conway_even() {
        assert_eq!(conway_double_twist(2, 2).unwrap(), zp("z^2 + 1"));
        assert_eq!(conway_double_twist(2, -2).unwrap(), zp("-z^2 + 1"));
        assert_eq!(conway_double_twist(2, 8).unwrap(), conway_double_twist(4, 4).unwrap());
    }

    #[test]
    fn girth3_conway() {
        let r = Girth3Rep::new([2, 2, 2], [2, 2, 2]);
        assert_eq!(conway_girth3_even(&r).unwrap(), zp("9z^4 + 6z^2 + 1"));
        assert!(conway_girth3_even(&Girth3Rep::new([2, 2, 2], [2, 2, 1])).is_err());
        assert!(conway_girth3_even(&Girth3Rep::new([2, 2, 2], [2, 2, -2])).is_ok());
    }

    #[test]
    fn conway_differences() {
        let r = Girth3Rep::new([2, 4, 6], [2, 4, 6]);
        assert_eq!(conway_diff_formula(&r, BottomPerm::SwapAB).unwrap(), zp("2z^2"));
        assert_eq!(conway_diff(&r, BottomPerm::SwapAB).unwrap(), zp("2z^2"));
        assert!(conway_diff(&r, BottomPerm::Identity).unwrap().is_zero());
        let flat = Girth3Rep::new([4, 4, 4], [2, 6, 8]);
        for perm in [BottomPerm::SwapAB, BottomPerm::SwapBC, BottomPerm::SwapAC] {
            assert!(conway_diff(&flat, perm).unwrap().is_zero());
        }
    }

    #[test]
    fn s_polynomials() {
        assert_eq!(s_poly(0), LaurentPoly::zero(Var::A));
        assert_eq!(s_poly(1), ap("A"));
        assert_eq!(s_poly(2), ap("1 - A^4"));
        assert_eq!(s_poly(-2), ap("1 - A^-4"));
        let d = ap("A^2 + A^-2");
        assert_eq!(&s_hat(2) * &d, ap("1 - A^8"));
    }

    #[test]
    fn double_twist_bracket_values() {
        assert_eq!(bracket_double_twist(1, 1), ap("-A^-2 - A^2"));
        assert_eq!(bracket_double_twist(0, 0), ap("1"));
        let b = bracket_double_twist(2, 8);
        assert_eq!(b.lowest_term(), Some((-10, -1)));
        assert_eq!(b.highest_term(), Some((26, 1)));
    }

    #[test]
    fn symmetric_functions() {
        assert_eq!(sym_s(0, [0, 0, 0]), ap("1"));
        assert_eq!(sym_s(3, [1, 1, 1]), ap("A^3"));
        let base = sym_s(1, [2, 4, 6]);
        for t in [[2, 6, 4], [4, 2, 6], [4, 6, 2], [6, 2, 4], [6, 4, 2]] {
            assert_eq!(sym_s(1, t), base);
        }
    }

    #[test]
    fn example_determinant() {
        assert_eq!(det_with_ones([4, 8, 12], [2, 4, 6]), 0);
        let det = RationalLaurent::from_poly(s_determinant([4, 8, 12], [2, 4, 6]));
        assert_eq!(det, example_s_determinant_value());
    }

    #[test]
    fn bracket_symmetric_under_orbit() {
        let r = Girth3Rep::new([2, 4, 6], [2, 4, 6]);
        let b = bracket_girth3(&r);
        for s in crate::repr::d3_orbit(&r) {
            assert_eq!(bracket_girth3(&s), b, "{s}");
        }
    }

    #[test]
    fn bracket_diff_identity_and_flat() {
        let r = Girth3Rep::new([2, 2, 2], [4, 4, 4]);
        for perm in BottomPerm::ALL {
            assert!(bracket_diff(&r, perm).is_zero());
        }
        let r = Girth3Rep::new([1, -2, 3], [0, 2, -1]);
        assert!(bracket_diff(&r, BottomPerm::Identity).is_zero());
    }
}
