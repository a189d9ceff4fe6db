//! Exact single-variable Laurent polynomials over the integers.
//!
//! Coefficients are stored densely from the lowest nonzero exponent to the
//! highest, so the zero polynomial is the empty vector. All arithmetic is
//! checked: an `i64` overflow aborts with a panic rather than wrapping.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Semantic label of the formal variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    /// Kauffman bracket variable.
    A,
    /// Conway variable.
    Z,
    /// Alexander variable (integer powers of t).
    T,
    /// Jones polynomial, exponents counted in quarter powers of t.
    TQuarter,
    /// Chebyshev argument.
    X,
}

impl Var {
    fn symbol(self) -> &'static str {
        match self {
            Var::A => "A",
            Var::Z => "z",
            Var::T | Var::TQuarter => "t",
            Var::X => "x",
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("variable mismatch: {0:?} vs {1:?}")]
    VarMismatch(Var, Var),
    #[error("span of the zero polynomial is undefined")]
    ZeroSpan,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact")]
    InexactDivision,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    var: Var,
    low: i64,
    coeffs: Vec<i64>,
}

fn add_i64(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("Laurent coefficient overflow")
}

fn mul_i64(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("Laurent coefficient overflow")
}

impl LaurentPoly {
    pub fn zero(var: Var) -> Self {
        LaurentPoly { var, low: 0, coeffs: Vec::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, 1)
    }

    pub fn constant(var: Var, c: i64) -> Self {
        Self::monomial(var, c, 0)
    }

    pub fn monomial(var: Var, coeff: i64, exp: i64) -> Self {
        if coeff == 0 {
            return Self::zero(var);
        }
        LaurentPoly { var, low: exp, coeffs: vec![coeff] }
    }

    /// The variable itself.
    pub fn var(var: Var) -> Self {
        Self::monomial(var, 1, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(var: Var, terms: I) -> Self {
        let terms: Vec<(i64, i64)> = terms.into_iter().collect();
        let Some(lo) = terms.iter().map(|t| t.0).min() else {
            return Self::zero(var);
        };
        let hi = terms.iter().map(|t| t.0).max().unwrap();
        let mut coeffs = vec![0i64; (hi - lo + 1) as usize];
        for (e, c) in terms {
            let slot = &mut coeffs[(e - lo) as usize];
            *slot = add_i64(*slot, c);
        }
        Self::normalized(var, lo, coeffs)
    }

    fn normalized(var: Var, mut low: i64, mut coeffs: Vec<i64>) -> Self {
        let lead = coeffs.iter().position(|&c| c != 0);
        match lead {
            None => Self::zero(var),
            Some(first) => {
                let last = coeffs.iter().rposition(|&c| c != 0).unwrap();
                coeffs.truncate(last + 1);
                coeffs.drain(..first);
                low += first as i64;
                LaurentPoly { var, low, coeffs }
            }
        }
    }

    pub fn variable(&self) -> Var {
        self.var
    }

    /// Same coefficients, relabeled variable.
    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs == [1]
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        if self.is_zero() || exp < self.low {
            return 0;
        }
        self.coeffs.get((exp - self.low) as usize).copied().unwrap_or(0)
    }

    /// Nonzero terms as `(exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(move |(i, &c)| (self.low + i as i64, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    /// `(min_exp, max_exp, span)`.
    pub fn extremes(&self) -> Result<(i64, i64, i64), LaurentError> {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => Ok((lo, hi, hi - lo)),
            _ => Err(LaurentError::ZeroSpan),
        }
    }

    pub fn lowest_term(&self) -> Option<(i64, i64)> {
        self.terms().next()
    }

    pub fn highest_term(&self) -> Option<(i64, i64)> {
        self.terms().next_back()
    }

    fn check_var(&self, other: &Self) -> Result<(), LaurentError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(LaurentError::VarMismatch(self.var, other.var))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_var(other)?;
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let lo = self.low.min(other.low);
        let hi = self.max_exp().unwrap().max(other.max_exp().unwrap());
        let mut coeffs = vec![0i64; (hi - lo + 1) as usize];
        for p in [self, other] {
            let off = (p.low - lo) as usize;
            for (i, &c) in p.coeffs.iter().enumerate() {
                coeffs[off + i] = add_i64(coeffs[off + i], c);
            }
        }
        Ok(Self::normalized(self.var, lo, coeffs))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        self.check_var(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.var));
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = add_i64(coeffs[i + j], mul_i64(a, b));
            }
        }
        Ok(Self::normalized(self.var, self.low + other.low, coeffs))
    }

    fn neg_ref(&self) -> Self {
        LaurentPoly {
            var: self.var,
            low: self.low,
            coeffs: self.coeffs.iter().map(|&c| c.checked_neg().expect("Laurent coefficient overflow")).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        let coeffs = self.coeffs.iter().map(|&c| mul_i64(c, k)).collect();
        Self::normalized(self.var, self.low, coeffs)
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { var: self.var, low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.var);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `var -> var^-1`.
    pub fn invert_variable(&self) -> Self {
        Self::from_terms(self.var, self.terms().map(|(e, c)| (-e, c)))
    }

    /// Substitute `var -> var^k`.
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::from_terms(self.var, self.terms().map(|(e, c)| (e * k, c)))
    }

    /// Value of the derivative at `var = 1`, i.e. `sum e * c_e`.
    pub fn derivative_at_one(&self) -> i64 {
        self.terms().fold(0i64, |acc, (e, c)| add_i64(acc, mul_i64(e, c)))
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().fold(0i64, |acc, &c| add_i64(acc, c))
    }

    /// Evaluate at an integer, for polynomials with no negative exponents
    /// or at `x = ±1`.
    pub fn eval_int(&self, x: i64) -> Option<i64> {
        if self.is_zero() {
            return Some(0);
        }
        if self.low < 0 && x.abs() != 1 {
            return None;
        }
        let mut acc: i64 = 0;
        for (e, c) in self.terms() {
            let p = if x.abs() == 1 {
                if x == -1 && e.rem_euclid(2) == 1 {
                    -1
                } else {
                    1
                }
            } else {
                x.checked_pow(e as u32)?
            };
            acc = acc.checked_add(c.checked_mul(p)?)?;
        }
        Some(acc)
    }

    /// Evaluate at a rational point `num/den`, returned as an exact
    /// fraction `(numerator, denominator)` with `den^(span)` scaling.
    pub fn eval_rational(&self, num: i128, den: i128) -> (i128, i128) {
        let (lo, hi) = match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return (0, 1),
        };
        // value = sum c_e (num/den)^e = [sum c_e num^(e-lo) den^(hi-e)] * num^lo / den^hi
        let mut acc: i128 = 0;
        for (e, c) in self.terms() {
            let t = (c as i128) * num.pow((e - lo) as u32) * den.pow((hi - e) as u32);
            acc += t;
        }
        let (mut n, mut d) = (acc, den.pow((hi - lo) as u32));
        // multiply by (num/den)^lo
        if lo >= 0 {
            n *= num.pow(lo as u32);
            d *= den.pow(lo as u32);
        } else {
            n *= den.pow((-lo) as u32);
            d *= num.pow((-lo) as u32);
        }
        (n, d)
    }

    /// Exact division. Fails if `divisor` is zero or does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, LaurentError> {
        self.check_var(divisor)?;
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero(self.var));
        }
        let d_lead = divisor.coeffs[0];
        let d_len = divisor.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < d_len {
            return Err(LaurentError::InexactDivision);
        }
        let q_len = rem.len() - d_len + 1;
        let mut quot = vec![0i64; q_len];
        for i in 0..q_len {
            let r = rem[i];
            if r == 0 {
                continue;
            }
            if r % d_lead != 0 {
                return Err(LaurentError::InexactDivision);
            }
            let q = r / d_lead;
            quot[i] = q;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = add_i64(rem[i + j], -mul_i64(q, dc));
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return Err(LaurentError::InexactDivision);
        }
        Ok(Self::normalized(self.var, self.low - divisor.low, quot))
    }

    /// True if `self = ±var^k * other` for some k.
    pub fn equal_up_to_unit(&self, other: &Self) -> bool {
        if self.var != other.var || self.coeffs.len() != other.coeffs.len() {
            return false;
        }
        self.coeffs == other.coeffs || self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| *a == -*b)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[{}]", self.var, self)
    }
}

fn fmt_exponent(var: Var, e: i64) -> String {
    if var == Var::TQuarter {
        let g = gcd(e.abs(), 4);
        let (n, d) = (e / g, 4 / g);
        if d == 1 {
            if n == 1 {
                String::new()
            } else {
                format!("^{n}")
            }
        } else {
            format!("^({n}/{d})")
        }
    } else if e == 1 {
        String::new()
    } else {
        format!("^{e}")
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// Canonical text form. Terms ascend by exponent, except Conway polynomials
/// which are written highest degree first (`9z^4 + 6z^2 + 1`).
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<(i64, i64)> =
            if self.var == Var::Z { self.terms().rev().collect() } else { self.terms().collect() };
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            if e == 0 {
                write!(f, "{mag}")?;
            } else {
                if mag != 1 {
                    write!(f, "{mag}")?;
                }
                write!(f, "{}{}", self.var.symbol(), fmt_exponent(self.var, e))?;
            }
        }
        Ok(())
    }
}

impl LaurentPoly {
    /// Parse the canonical text form (either term order; `*` between the
    /// coefficient and the variable is optional).
    pub fn parse(var: Var, text: &str) -> Result<Self, LaurentError> {
        Parser { src: text.as_bytes(), pos: 0, var }.poly()
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    var: Var,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T, LaurentError> {
        Err(LaurentError::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn int(&mut self) -> Result<i64, LaurentError> {
        let start = self.pos;
        if matches!(self.peek(), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse::<i64>().or_else(|_| {
            self.pos = start;
            self.err("expected integer")
        })
    }

    fn exponent(&mut self) -> Result<i64, LaurentError> {
        if self.peek() != Some(b'^') {
            return Ok(if self.var == Var::TQuarter { 4 } else { 1 });
        }
        self.pos += 1;
        let paren = self.peek() == Some(b'(');
        if paren {
            self.pos += 1;
        }
        let n = self.int()?;
        let mut d = 1;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            d = self.int()?;
        }
        if paren {
            if self.peek() != Some(b')') {
                return self.err("expected ')'");
            }
            self.pos += 1;
        }
        if self.var == Var::TQuarter {
            if d == 0 || (4 * n) % d != 0 {
                return self.err("exponent is not a quarter integer");
            }
            Ok(4 * n / d)
        } else if d != 1 {
            self.err("fractional exponent")
        } else {
            Ok(n)
        }
    }

    fn poly(&mut self) -> Result<LaurentPoly, LaurentError> {
        let mut terms = Vec::new();
        let sym = self.var.symbol().as_bytes()[0];
        let mut first = true;
        loop {
            self.skip_ws();
            if self.pos >= self.src.len() {
                if first {
                    return self.err("empty polynomial");
                }
                break;
            }
            let mut sign = 1i64;
            if let Some(c @ (b'+' | b'-')) = self.peek() {
                sign = if c == b'-' { -1 } else { 1 };
                self.pos += 1;
                self.skip_ws();
            } else if !first {
                return self.err("expected '+' or '-'");
            }
            first = false;
            let mut coeff = 1i64;
            let mut had_coeff = false;
            if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                coeff = self.int()?;
                had_coeff = true;
                self.skip_ws();
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.skip_ws();
                }
            }
            let exp = if self.peek() == Some(sym) {
                self.pos += 1;
                self.exponent()?
            } else if had_coeff {
                0
            } else {
                return self.err("expected coefficient or variable");
            };
            terms.push((exp, sign * coeff));
        }
        Ok(LaurentPoly::from_terms(self.var, terms))
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Infers the variable from the first symbol found; constants parse as `A`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let var = if s.contains('z') {
            Var::Z
        } else if s.contains('t') {
            Var::TQuarter
        } else if s.contains('x') {
            Var::X
        } else {
            Var::A
        };
        LaurentPoly::parse(var, s)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl $tr<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only for deterministic sorting: by variable, then by
/// the ascending term list.
impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.var.cmp(&other.var).then_with(|| self.terms().cmp(other.terms()))
    }
}

/// `(-var^2 - var^-2)`, the loop value of the bracket.
pub fn loop_value(var: Var) -> LaurentPoly {
    LaurentPoly::from_terms(var, [(2, -1), (-2, -1)])
}

/// Chebyshev polynomial of the second kind, via `U_{n+1} = 2x U_n - U_{n-1}`.
pub fn chebyshev_u(n: u32) -> LaurentPoly {
    let two_x = LaurentPoly::monomial(Var::X, 2, 1);
    let mut prev = LaurentPoly::one(Var::X);
    if n == 0 {
        return prev;
    }
    let mut cur = two_x.clone();
    for _ in 1..n {
        let next = &(&two_x * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Jones polynomial from a bracket and writhe: `(-A^3)^(-w) <K>` followed by
/// the substitution `A^4 = t`. The result is in quarter powers of `t`.
pub fn jones_from_bracket(bracket: &LaurentPoly, writhe: i64) -> LaurentPoly {
    assert_eq!(bracket.variable(), Var::A, "bracket must be a polynomial in A");
    let sign = if writhe.rem_euclid(2) == 0 { 1 } else { -1 };
    bracket.shift(-3 * writhe).scale(sign).with_var(Var::TQuarter)
}

/// A quotient of Laurent polynomials compared by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RationalLaurent {
    pub numerator: LaurentPoly,
    pub denominator: LaurentPoly,
}

impl RationalLaurent {
    pub fn new(numerator: LaurentPoly, denominator: LaurentPoly) -> Result<Self, LaurentError> {
        numerator.check_var(&denominator)?;
        if denominator.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        Ok(RationalLaurent { numerator, denominator })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let var = p.variable();
        RationalLaurent { numerator: p, denominator: LaurentPoly::one(var) }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }
}

impl PartialEq for RationalLaurent {
    fn eq(&self, other: &Self) -> bool {
        &self.numerator * &other.denominator == &other.numerator * &self.denominator
    }
}

impl fmt::Display for RationalLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> LaurentPoly {
        LaurentPoly::parse(Var::A, s).unwrap()
    }

    #[test]
    fn cancellation_and_products() {
        assert_eq!(a("A + A^-1") + a("-A^-1"), a("A"));
        assert!((LaurentPoly::zero(Var::A) * a("3A^7 - 2")).is_zero());
        assert_eq!(a("1 - A^4") * a("1 + A^4"), a("1 - A^8"));
    }

    #[test]
    fn var_mismatch_is_an_error() {
        let z = LaurentPoly::var(Var::Z);
        assert_eq!(a("A").try_add(&z), Err(LaurentError::VarMismatch(Var::A, Var::Z)));
    }

    #[test]
    fn inversion() {
        assert_eq!(a("A").invert_variable(), a("A^-1"));
        assert_eq!(a("1 - A^4").invert_variable(), a("1 - A^-4"));
        let p = a("-3A^-2 + 5 + A^9");
        assert_eq!(p.invert_variable().invert_variable(), p);
    }

    #[test]
    fn extremes() {
        assert_eq!(a("-A^-4 + A^8").extremes(), Ok((-4, 8, 12)));
        assert_eq!(a("3").extremes(), Ok((0, 0, 0)));
        assert_eq!(LaurentPoly::zero(Var::A).extremes(), Err(LaurentError::ZeroSpan));
    }

    #[test]
    fn derivative() {
        assert_eq!(a("A^4").derivative_at_one(), 4);
        assert_eq!(a("1 - A^8").derivative_at_one(), -8);
    }

    #[test]
    fn chebyshev_small() {
        let x = |s: &str| LaurentPoly::parse(Var::X, s).unwrap();
        assert_eq!(chebyshev_u(0), x("1"));
        assert_eq!(chebyshev_u(1), x("2x"));
        assert_eq!(chebyshev_u(2), x("-1 + 4x^2"));
    }

    #[test]
    fn jones_of_two_component_unlink() {
        let j = jones_from_bracket(&a("-A^2 - A^-2"), 0);
        assert_eq!(j.to_string(), "-t^(-1/2) - t^(1/2)");
    }

    #[test]
    fn rendering() {
        assert_eq!(a("A^8 + 2 - A^-4").to_string(), "-A^-4 + 2 + A^8");
        let z = LaurentPoly::parse(Var::Z, "1 + 6z^2 + 9z^4").unwrap();
        assert_eq!(z.to_string(), "9z^4 + 6z^2 + 1");
        assert_eq!(LaurentPoly::parse(Var::Z, "9z^4 + 6z^2 + 1").unwrap(), z);
        assert_eq!(a("2*A^3").to_string(), "2A^3");
    }

    #[test]
    fn parse_errors_carry_position() {
        match LaurentPoly::parse(Var::A, "A^2 + + 3") {
            Err(LaurentError::Parse { pos, .. }) => assert_eq!(pos, 6),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn exact_division() {
        let d = a("A^2 + A^-2");
        let p = &a("1 - A^4") * &d;
        assert_eq!(p.div_exact(&d), Ok(a("1 - A^4")));
        assert_eq!(a("A + 1").div_exact(&a("A^2 + 1")), Err(LaurentError::InexactDivision));
    }

    #[test]
    fn rational_equality_by_cross_multiplication() {
        let x = RationalLaurent::new(a("1 - A^8"), a("A^2 + A^-2")).unwrap();
        let y = RationalLaurent::from_poly(a("A^2 - A^6"));
        assert_eq!(x, y);
        assert!(RationalLaurent::new(a("1"), LaurentPoly::zero(Var::A)).is_err());
    }
}
