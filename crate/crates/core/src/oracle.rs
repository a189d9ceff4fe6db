//! Brute-force invariants of PD diagrams, independent of the closed forms.

use std::collections::HashMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::diagram::{DiagramError, PDCode, UnionFind};
use crate::laurent::{jones_from_bracket, loop_value, LaurentPoly, Var};

/// Largest diagram the state sum will enumerate.
pub const STATE_SUM_CAP: usize = 24;
/// Largest diagram the Fox-calculus oracle accepts.
pub const FOX_CAP: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{crossings} crossings exceeds the oracle cap of {cap}")]
    TooLarge { crossings: usize, cap: usize },
    #[error("the Fox-calculus oracle needs a knot, got {0} components")]
    NotAKnot(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Dense relabeling of arcs to `0..2n`.
fn dense_labels(pd: &PDCode) -> (Vec<[usize; 4]>, usize) {
    let mut map = HashMap::new();
    let crossings = pd
        .crossings
        .iter()
        .map(|c| {
            c.map(|l| {
                let next = map.len();
                *map.entry(l).or_insert(next)
            })
        })
        .collect();
    (crossings, map.len())
}

/// Loop count of one state; bit `i` set means the B-smoothing at crossing `i`.
fn state_loops(crossings: &[[usize; 4]], arcs: usize, state: u64) -> usize {
    let mut uf = UnionFind::new(arcs);
    for (i, &[a, b, c, d]) in crossings.iter().enumerate() {
        if state >> i & 1 == 0 {
            uf.union(a, b);
            uf.union(c, d);
        } else {
            uf.union(a, d);
            uf.union(b, c);
        }
    }
    uf.count()
}

/// Builds `sum counts[b][l] A^(n - 2b) d^(l - 1)` with `d = -A^2 - A^-2`.
fn assemble(n: usize, counts: &[Vec<i64>], extra_loops: usize) -> LaurentPoly {
    let d = loop_value(Var::A);
    let max_loops = counts.iter().map(|r| r.len()).max().unwrap_or(0);
    let powers: Vec<LaurentPoly> = (0..max_loops + extra_loops).map(|k| d.pow(k as u32)).collect();
    let mut total = LaurentPoly::zero(Var::A);
    for (b, row) in counts.iter().enumerate() {
        for (loops, &count) in row.iter().enumerate() {
            if count != 0 {
                let term = powers[loops + extra_loops - 1].shift(n as i64 - 2 * b as i64).scale(count);
                total = &total + &term;
            }
        }
    }
    total
}

/// Kauffman bracket by summing over all `2^n` states, normalized so the
/// crossingless circle is 1.
pub fn bracket_state_sum(pd: &PDCode) -> Result<LaurentPoly, OracleError> {
    let n = pd.crossings.len();
    if n > STATE_SUM_CAP {
        return Err(OracleError::TooLarge { crossings: n, cap: STATE_SUM_CAP });
    }
    pd.partners()?;
    if n == 0 {
        let k = pd.unknots.max(1);
        return Ok(loop_value(Var::A).pow(k - 1));
    }
    let (crossings, arcs) = dense_labels(pd);
    let chunk_bits = n.min(8);
    let chunks = 1u64 << chunk_bits;
    let per_chunk = 1u64 << (n - chunk_bits);
    let width = arcs + 1;
    let counts = (0..chunks)
        .into_par_iter()
        .map(|hi| {
            let mut local = vec![vec![0i64; width]; n + 1];
            for lo in 0..per_chunk {
                let state = hi * per_chunk + lo;
                let loops = state_loops(&crossings, arcs, state);
                local[state.count_ones() as usize][loops] += 1;
            }
            local
        })
        .reduce(
            || vec![vec![0i64; width]; n + 1],
            |mut a, b| {
                for (ra, rb) in a.iter_mut().zip(&b) {
                    for (x, y) in ra.iter_mut().zip(rb) {
                        *x += y;
                    }
                }
                a
            },
        );
    Ok(assemble(n, &counts, pd.unknots as usize))
}

/// Orders crossings so each one shares as many arcs as possible with the
/// crossings already placed.
fn sweep_order(crossings: &[[usize; 4]], arcs: usize) -> Vec<usize> {
    let n = crossings.len();
    let mut placed = vec![false; n];
    let mut open = vec![0u8; arcs];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let best = (0..n)
            .filter(|&x| !placed[x])
            .max_by_key(|&x| {
                let shared = crossings[x].iter().filter(|&&a| open[a] == 1).count();
                (shared, std::cmp::Reverse(x))
            })
            .expect("unplaced crossing");
        placed[best] = true;
        for &a in &crossings[best] {
            open[a] += 1;
        }
        order.push(best);
    }
    order
}

#[derive(Clone, Default)]
struct Frontier {
    /// Partner of each open arc, sorted by arc.
    pairs: Vec<(usize, usize)>,
}

impl Frontier {
    fn partner(&self, a: usize) -> Option<usize> {
        self.pairs.binary_search_by_key(&a, |p| p.0).ok().map(|i| self.pairs[i].1)
    }
    fn set(&mut self, a: usize, b: usize) {
        match self.pairs.binary_search_by_key(&a, |p| p.0) {
            Ok(i) => self.pairs[i].1 = b,
            Err(i) => self.pairs.insert(i, (a, b)),
        }
    }
    fn remove(&mut self, a: usize) {
        if let Ok(i) = self.pairs.binary_search_by_key(&a, |p| p.0) {
            self.pairs.remove(i);
        }
    }
    /// Joins arc ends `x` and `y`; returns whether a loop closed.
    fn join(&mut self, x: usize, y: usize) -> bool {
        match (self.partner(x), self.partner(y)) {
            _ if x == y => {
                debug_assert!(self.partner(x).is_none());
                true
            }
            (None, None) => {
                self.set(x, y);
                self.set(y, x);
                false
            }
            (Some(px), None) => {
                self.remove(x);
                self.set(px, y);
                self.set(y, px);
                false
            }
            (None, Some(py)) => {
                self.remove(y);
                self.set(py, x);
                self.set(x, py);
                false
            }
            (Some(px), Some(py)) => {
                self.remove(x);
                self.remove(y);
                if px == y {
                    true
                } else {
                    self.set(px, py);
                    self.set(py, px);
                    false
                }
            }
        }
    }
}

/// Kauffman bracket by sweeping crossings and merging states that induce
/// the same connection pattern on the open arcs. Same normalization as
/// [`bracket_state_sum`], no size cap.
pub fn bracket_sweep(pd: &PDCode) -> Result<LaurentPoly, OracleError> {
    pd.partners()?;
    let n = pd.crossings.len();
    if n == 0 {
        return Ok(loop_value(Var::A).pow(pd.unknots.max(1) - 1));
    }
    let (crossings, arcs) = dense_labels(pd);
    let d = loop_value(Var::A);
    let mut states: HashMap<Vec<(usize, usize)>, LaurentPoly> = HashMap::new();
    states.insert(Vec::new(), LaurentPoly::one(Var::A));
    for x in sweep_order(&crossings, arcs) {
        let [a, b, c, dd] = crossings[x];
        let mut next: HashMap<Vec<(usize, usize)>, LaurentPoly> = HashMap::with_capacity(states.len() * 2);
        for (key, poly) in states {
            for (pairs, exp) in [([(a, b), (c, dd)], 1i64), ([(a, dd), (b, c)], -1)] {
                let mut f = Frontier { pairs: key.clone() };
                let mut value = poly.shift(exp);
                for (u, v) in pairs {
                    if f.join(u, v) {
                        value = &value * &d;
                    }
                }
                let slot = next.entry(f.pairs).or_insert_with(|| LaurentPoly::zero(Var::A));
                *slot = &*slot + &value;
            }
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
    }
    let total = states.remove(&Vec::new()).unwrap_or_else(|| LaurentPoly::zero(Var::A));
    let total = &total * &d.pow(pd.unknots);
    Ok(total.div_exact(&d).expect("at least one loop in every state"))
}

/// Bracket with the faster sweep; the state sum is kept as the reference.
pub fn bracket(pd: &PDCode) -> Result<LaurentPoly, OracleError> {
    bracket_sweep(pd)
}

pub fn writhe(pd: &PDCode) -> Result<i64, OracleError> {
    Ok(pd.writhe()?)
}

pub fn components(pd: &PDCode) -> Result<usize, OracleError> {
    Ok(pd.components()?)
}

/// Jones polynomial in quarter powers of `t`.
pub fn jones(pd: &PDCode) -> Result<LaurentPoly, OracleError> {
    Ok(jones_from_bracket(&bracket(pd)?, pd.writhe()?))
}

/// Determinant by fraction-free elimination with exact division.
pub fn determinant(mut m: Vec<Vec<LaurentPoly>>, var: Var) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one(var);
    }
    let mut sign = 1;
    let mut prev = LaurentPoly::one(var);
    for k in 0..n {
        let Some(pivot) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return LaurentPoly::zero(var);
        };
        if pivot != k {
            m.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = LaurentPoly::zero(var);
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].scale(sign)
}

/// Alexander polynomial from the Wirtinger presentation, normalized to be
/// symmetric with value 1 at `t = 1`.
pub fn alexander_fox(pd: &PDCode) -> Result<LaurentPoly, OracleError> {
    let n = pd.crossings.len();
    if n > FOX_CAP {
        return Err(OracleError::TooLarge { crossings: n, cap: FOX_CAP });
    }
    let comps = pd.components()?;
    if comps != 1 {
        return Err(OracleError::NotAKnot(comps));
    }
    if n == 0 {
        return Ok(LaurentPoly::one(Var::T));
    }
    let orient = pd.orientation()?;
    let (crossings, arcs) = dense_labels(pd);
    // generators: arcs glued through over-passes
    let mut uf = UnionFind::new(arcs);
    for c in &crossings {
        uf.union(c[1], c[3]);
    }
    let mut gen_of = HashMap::new();
    for a in 0..arcs {
        let r = uf.find(a);
        let next = gen_of.len();
        gen_of.entry(r).or_insert(next);
    }
    let g = |uf: &mut UnionFind, a: usize| gen_of[&uf.find(a)];
    assert_eq!(gen_of.len(), n, "one generator per crossing");
    let t = LaurentPoly::var(Var::T);
    let one = LaurentPoly::one(Var::T);
    let mut m = vec![vec![LaurentPoly::zero(Var::T); n]; n];
    for (x, c) in crossings.iter().enumerate() {
        let (over, inc, out) = (g(&mut uf, c[1]), g(&mut uf, c[0]), g(&mut uf, c[2]));
        let (ck, ci, cj) = if orient.sign(x) > 0 {
            (&one - &t, t.clone(), -one.clone())
        } else {
            (&t - &one, one.clone(), -t.clone())
        };
        for (col, val) in [(over, ck), (inc, ci), (out, cj)] {
            m[x][col] = &m[x][col] + &val;
        }
    }
    let minor: Vec<Vec<LaurentPoly>> = m[1..].iter().map(|row| row[1..].to_vec()).collect();
    let det = determinant(minor, Var::T);
    let (lo, hi, _) = det.extremes().map_err(|_| DiagramError::Invalid("zero Alexander polynomial".into()))?;
    let mut sym = det.shift(-(lo + hi) / 2);
    if sym.eval_at_one() < 0 {
        sym = -sym;
    }
    Ok(sym)
}

/// Rewrites a symmetric `f(t)` as a polynomial in `z = t^(1/2) - t^(-1/2)`.
pub fn symmetric_to_conway(sym: &LaurentPoly) -> LaurentPoly {
    let z2 = LaurentPoly::monomial(Var::Z, 1, 2);
    let two = LaurentPoly::constant(Var::Z, 2);
    // t^k + t^-k as polynomials in z
    let mut prev = two.clone();
    let mut cur = &z2 + &two;
    let mut total = LaurentPoly::constant(Var::Z, sym.coeff(0));
    let top = sym.max_exp().unwrap_or(0);
    for k in 1..=top {
        total = &total + &cur.scale(sym.coeff(k));
        let next = &(&(&z2 + &two) * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    total
}

/// Conway polynomial of a knot via Fox calculus.
pub fn conway_fox(pd: &PDCode) -> Result<LaurentPoly, OracleError> {
    Ok(symmetric_to_conway(&alexander_fox(pd)?))
}
