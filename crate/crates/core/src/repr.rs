//! Tree-pair representations of knots: `K(p)`, `K(p,q)`, `K(p q r / a b c)`
//! and general labeled plane-tree pairs.
//!
//! Text notation: `(3)`, `(2,-2)`, `[0 2 2 / 0 -1 -1]`. The JSON form is
//! `{"girth":2,"labels":[p,q]}` or `{"girth":3,"top":[..],"bottom":[..]}`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ReprError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid representation: {0}")]
    Invalid(String),
}

/// Single twist knot `K(p)`: two strands twisted `p` half times, closed up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Girth1Rep {
    pub p: i64,
}

/// Double twist knot `K(p,q)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Girth2Rep {
    pub p: i64,
    pub q: i64,
}

/// `K(p q r / a b c)`: the pair of Y-shaped trees. `top` labels the tree
/// inside the Heegaard disk, `bottom` the dual tree. Bottom label `a` sits
/// between the `p` and `q` branches, `b` between `q` and `r`, `c` between
/// `r` and `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Girth3Rep {
    pub top: [i64; 3],
    pub bottom: [i64; 3],
}

impl Girth3Rep {
    pub fn new(top: [i64; 3], bottom: [i64; 3]) -> Self {
        Girth3Rep { top, bottom }
    }

    pub fn labels(&self) -> [i64; 6] {
        let [p, q, r] = self.top;
        let [a, b, c] = self.bottom;
        [p, q, r, a, b, c]
    }

    /// 120° rotation: `K(q r p / b c a)`.
    pub fn rotate(&self) -> Self {
        let [p, q, r] = self.top;
        let [a, b, c] = self.bottom;
        Girth3Rep::new([q, r, p], [b, c, a])
    }

    /// Reflection fixing the `p` branch: `K(p r q / c b a)`.
    pub fn reflect(&self) -> Self {
        let [p, q, r] = self.top;
        let [a, b, c] = self.bottom;
        Girth3Rep::new([p, r, q], [c, b, a])
    }

    /// Exchange of the two trees: `K(a b c / q r p)`.
    pub fn swap_rows(&self) -> Self {
        let [p, q, r] = self.top;
        let [a, b, c] = self.bottom;
        Girth3Rep::new([a, b, c], [q, r, p])
    }

    /// Apply a permutation to the bottom row: position `i` receives
    /// `bottom[perm[i]]`.
    pub fn permute_bottom(&self, perm: [usize; 3]) -> Self {
        Girth3Rep::new(self.top, perm.map(|i| self.bottom[i]))
    }

    /// `K(a q r / p b c)`.
    pub fn exchange_p_a(&self) -> Self {
        let [p, q, r] = self.top;
        let [a, b, c] = self.bottom;
        Girth3Rep::new([a, q, r], [p, b, c])
    }

    pub fn all_even(&self) -> bool {
        self.labels().iter().all(|x| x % 2 == 0)
    }

    pub fn all_even_positive(&self) -> bool {
        self.labels().iter().all(|&x| x > 0 && x % 2 == 0)
    }

    pub fn crossing_count(&self) -> u64 {
        self.labels().iter().map(|x| x.unsigned_abs()).sum()
    }
}

/// The orbit of `r` under the symmetry group generated by rotation,
/// reflection and tree exchange (at most 12 elements).
pub fn d3_orbit(r: &Girth3Rep) -> BTreeSet<Girth3Rep> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::from([*r]);
    while let Some(x) = queue.pop_front() {
        if !seen.insert(x) {
            continue;
        }
        for y in [x.rotate(), x.reflect(), x.swap_rows()] {
            if !seen.contains(&y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// A plane tree: edges carry integer labels, `rotation[v]` lists the edge
/// indices around `v` in counterclockwise order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PlaneTree {
    pub edges: Vec<(usize, usize, i64)>,
    pub rotation: Vec<Vec<usize>>,
}

impl PlaneTree {
    pub fn single_vertex() -> Self {
        PlaneTree { edges: Vec::new(), rotation: vec![Vec::new()] }
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn valence(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    pub fn leaves(&self) -> usize {
        (0..self.vertex_count()).filter(|&v| self.valence(v) == 1).count()
    }

    pub fn has_valence_two(&self) -> bool {
        (0..self.vertex_count()).any(|v| self.valence(v) == 2)
    }

    /// Remove exterior edges labeled 0 until none remain.
    pub fn strip_zero_exterior(&self) -> PlaneTree {
        let mut t = self.clone();
        loop {
            let victim = t
                .edges
                .iter()
                .position(|&(u, v, l)| l == 0 && (t.valence(u) == 1 || t.valence(v) == 1) && t.edges.len() > 1);
            let Some(e) = victim else { return t };
            t = t.remove_leaf_edge(e);
        }
    }

    fn remove_leaf_edge(&self, e: usize) -> PlaneTree {
        let (u, v, _) = self.edges[e];
        let leaf = if self.valence(u) == 1 { u } else { v };
        let mut edges = Vec::new();
        let mut edge_map = vec![usize::MAX; self.edges.len()];
        let vmap: Vec<usize> = (0..self.vertex_count())
            .scan(0usize, |next, w| {
                if w == leaf {
                    Some(usize::MAX)
                } else {
                    *next += 1;
                    Some(*next - 1)
                }
            })
            .collect();
        for (i, &(a, b, l)) in self.edges.iter().enumerate() {
            if i != e {
                edge_map[i] = edges.len();
                edges.push((vmap[a], vmap[b], l));
            }
        }
        let rotation = (0..self.vertex_count())
            .filter(|&w| w != leaf)
            .map(|w| self.rotation[w].iter().filter(|&&x| x != e).map(|&x| edge_map[x]).collect())
            .collect();
        PlaneTree { edges, rotation }
    }

    /// Attach a 0-labeled exterior edge at every valence-2 vertex, placed
    /// after the first edge in its rotation.
    pub fn pad_zero_exterior(&self) -> PlaneTree {
        let mut t = self.clone();
        for v in 0..self.vertex_count() {
            if self.valence(v) == 2 {
                let leaf = t.rotation.len();
                let e = t.edges.len();
                t.edges.push((v, leaf, 0));
                t.rotation.push(vec![e]);
                t.rotation[v].insert(1, e);
            }
        }
        t
    }
}

/// A general labeled plane-tree pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TreePairRep {
    pub tree: PlaneTree,
    pub dual: PlaneTree,
    pub girth: usize,
}

impl TreePairRep {
    /// Checks that neither tree has valence-2 vertices and both have
    /// `girth` leaves.
    pub fn validate(&self) -> Result<(), ReprError> {
        for (name, t) in [("tree", &self.tree), ("dual", &self.dual)] {
            if t.has_valence_two() {
                return Err(ReprError::Invalid(format!("{name} has a valence-2 vertex")));
            }
            if !t.edges.is_empty() && t.leaves() != self.girth {
                return Err(ReprError::Invalid(format!("{name} has {} leaves, girth is {}", t.leaves(), self.girth)));
            }
        }
        Ok(())
    }

    pub fn mirror(&self) -> Self {
        let neg = |t: &PlaneTree| PlaneTree {
            edges: t.edges.iter().map(|&(u, v, l)| (u, v, -l)).collect(),
            rotation: t.rotation.clone(),
        };
        TreePairRep { tree: neg(&self.tree), dual: neg(&self.dual), girth: self.girth }
    }

    fn key(&self) -> String {
        let s = |t: &PlaneTree| serde_json::to_string(&t.strip_zero_exterior()).unwrap();
        format!("g{}:{}|{}", self.girth, s(&self.tree), s(&self.dual))
    }
}

/// Any of the supported representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rep {
    Girth1(Girth1Rep),
    Girth2(Girth2Rep),
    Girth3(Girth3Rep),
    General(TreePairRep),
}

impl Rep {
    pub fn girth(&self) -> usize {
        match self {
            Rep::Girth1(_) => 1,
            Rep::Girth2(_) => 2,
            Rep::Girth3(_) => 3,
            Rep::General(t) => t.girth,
        }
    }

    pub fn mirror(&self) -> Rep {
        match self {
            Rep::Girth1(r) => Rep::Girth1(Girth1Rep { p: -r.p }),
            Rep::Girth2(r) => Rep::Girth2(Girth2Rep { p: -r.p, q: -r.q }),
            Rep::Girth3(r) => Rep::Girth3(Girth3Rep::new(r.top.map(|x| -x), r.bottom.map(|x| -x))),
            Rep::General(t) => Rep::General(t.mirror()),
        }
    }

    pub fn labels(&self) -> Vec<i64> {
        match self {
            Rep::Girth1(r) => vec![r.p],
            Rep::Girth2(r) => vec![r.p, r.q],
            Rep::Girth3(r) => r.labels().to_vec(),
            Rep::General(t) => t.tree.edges.iter().chain(&t.dual.edges).map(|e| e.2).collect(),
        }
    }

    pub fn crossing_count(&self) -> u64 {
        self.labels().iter().map(|x| x.unsigned_abs()).sum()
    }
}

impl From<Girth1Rep> for Rep {
    fn from(r: Girth1Rep) -> Self {
        Rep::Girth1(r)
    }
}
impl From<Girth2Rep> for Rep {
    fn from(r: Girth2Rep) -> Self {
        Rep::Girth2(r)
    }
}
impl From<Girth3Rep> for Rep {
    fn from(r: Girth3Rep) -> Self {
        Rep::Girth3(r)
    }
}

impl fmt::Display for Girth3Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p, q, r] = self.top;
        let [a, b, c] = self.bottom;
        write!(f, "[{p} {q} {r} / {a} {b} {c}]")
    }
}

impl fmt::Display for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rep::Girth1(r) => write!(f, "({})", r.p),
            Rep::Girth2(r) => write!(f, "({},{})", r.p, r.q),
            Rep::Girth3(r) => write!(f, "{r}"),
            Rep::General(t) => write!(f, "{}", serde_json::to_string(t).unwrap()),
        }
    }
}

/// Canonical form of a representation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Canonical {
    pub rep: Rep,
    pub key: String,
    /// Set when the reduction left an unknot or a trivial link
    /// (`K(0)`, `K(±1)`, or a girth-2 rep with a 0 label).
    pub degenerate: bool,
}

/// Reduce a girth-2 rep by `K(p,q) = K(q,p)` and `K(p,±1) = K(p∓1)`.
fn reduce_girth2(r: Girth2Rep) -> Rep {
    let (p, q) = (r.p, r.q);
    if q == 1 || q == -1 {
        return Rep::Girth1(Girth1Rep { p: p - q });
    }
    if p == 1 || p == -1 {
        return Rep::Girth1(Girth1Rep { p: q - p });
    }
    Rep::Girth2(Girth2Rep { p: p.min(q), q: p.max(q) })
}

pub fn canonicalize(rep: &Rep) -> Canonical {
    let rep = match rep {
        Rep::Girth2(r) => reduce_girth2(*r),
        Rep::Girth3(r) => Rep::Girth3(*d3_orbit(r).iter().next().unwrap()),
        other => other.clone(),
    };
    let degenerate = match &rep {
        Rep::Girth1(r) => r.p.abs() <= 1,
        Rep::Girth2(r) => r.p == 0 || r.q == 0,
        _ => false,
    };
    let key = match &rep {
        Rep::General(t) => t.key(),
        other => other.to_string(),
    };
    Canonical { rep, key, degenerate }
}

/// Parse `(p)`, `(p,q)` or `[p q r / a b c]`. A JSON object is also accepted.
pub fn parse_rep(text: &str) -> Result<Rep, ReprError> {
    let t = text.trim();
    if t.starts_with('{') {
        let json: RepJson = serde_json::from_str(t)
            .map_err(|e| ReprError::Parse { pos: e.column().saturating_sub(1), msg: e.to_string() })?;
        return json.try_into();
    }
    let offset = text.len() - text.trim_start().len();
    let err = |pos: usize, msg: &str| ReprError::Parse { pos: pos + offset, msg: msg.to_string() };
    let (open, close) = match t.chars().next() {
        Some('(') => ('(', ')'),
        Some('[') => ('[', ']'),
        _ => return Err(err(0, "expected '(' or '['")),
    };
    if !t.ends_with(close) {
        return Err(err(t.len(), &format!("expected '{close}'")));
    }
    let body = &t[1..t.len() - 1];
    // Collect integer tokens with their byte positions.
    let mut nums = Vec::new();
    let mut slash_at = None;
    let bytes = body.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() || (c == b',' && open == '(') {
            i += 1;
        } else if c == b'/' && open == '[' && slash_at.is_none() {
            slash_at = Some(nums.len());
            i += 1;
        } else if c == b'-' || c == b'+' || c.is_ascii_digit() {
            let start = i;
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let tok = &body[start..i];
            let v: i64 = tok.parse().map_err(|_| err(start + 1, "bad integer"))?;
            nums.push(v);
        } else {
            return Err(err(i + 1, &format!("unexpected character '{}'", c as char)));
        }
    }
    match (open, nums.len()) {
        ('(', 1) => Ok(Rep::Girth1(Girth1Rep { p: nums[0] })),
        ('(', 2) => Ok(Rep::Girth2(Girth2Rep { p: nums[0], q: nums[1] })),
        ('(', _) => Err(err(1, "expected one or two labels")),
        (_, 6) if slash_at == Some(3) => {
            Ok(Rep::Girth3(Girth3Rep::new([nums[0], nums[1], nums[2]], [nums[3], nums[4], nums[5]])))
        }
        _ => Err(err(1, "expected three labels, '/', three labels")),
    }
}

impl FromStr for Rep {
    type Err = ReprError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rep(s)
    }
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    girth: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    top: Option<[i64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    bottom: Option<[i64; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tree: Option<PlaneTree>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    dual: Option<PlaneTree>,
}

impl TryFrom<RepJson> for Rep {
    type Error = ReprError;
    fn try_from(j: RepJson) -> Result<Self, ReprError> {
        let bad = |m: &str| ReprError::Invalid(m.to_string());
        match (j.girth, j.labels, j.top, j.bottom, j.tree, j.dual) {
            (1, Some(l), None, None, None, None) if l.len() == 1 => Ok(Rep::Girth1(Girth1Rep { p: l[0] })),
            (2, Some(l), None, None, None, None) if l.len() == 2 => Ok(Rep::Girth2(Girth2Rep { p: l[0], q: l[1] })),
            (3, None, Some(top), Some(bottom), None, None) => Ok(Rep::Girth3(Girth3Rep::new(top, bottom))),
            (g, None, None, None, Some(tree), Some(dual)) => {
                let t = TreePairRep { tree, dual, girth: g };
                t.validate()?;
                Ok(Rep::General(t))
            }
            _ => Err(bad("fields do not match the girth")),
        }
    }
}

impl Serialize for Rep {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut j = RepJson { girth: self.girth(), labels: None, top: None, bottom: None, tree: None, dual: None };
        match self {
            Rep::Girth1(r) => j.labels = Some(vec![r.p]),
            Rep::Girth2(r) => j.labels = Some(vec![r.p, r.q]),
            Rep::Girth3(r) => {
                j.top = Some(r.top);
                j.bottom = Some(r.bottom);
            }
            Rep::General(t) => {
                j.tree = Some(t.tree.clone());
                j.dual = Some(t.dual.clone());
            }
        }
        j.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Rep {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        RepJson::deserialize(d)?.try_into().map_err(serde::de::Error::custom)
    }
}
