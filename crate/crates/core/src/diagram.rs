//! Planar diagram codes, checkerboard shading, Tait graphs and the
//! diagram templates for the tree-pair families.
//!
//! PD convention: each crossing is listed counterclockwise starting at the
//! incoming under-strand. The A-smoothing of `X[a,b,c,d]` joins `a` with `b`
//! and `c` with `d`. A crossing is positive when the over-strand runs from
//! `d` to `b`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::repr::{Girth1Rep, Girth2Rep, Girth3Rep, Rep};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("cannot parse PD code: {0}")]
    Parse(String),
    #[error("invalid PD code: {0}")]
    Invalid(String),
    #[error("diagram is split; a connected diagram is required")]
    Split,
    #[error("no diagram template for {0}")]
    NoTemplate(String),
}

/// A slot is position `pos` of crossing `crossing`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub crossing: usize,
    pub pos: u8,
}

impl Slot {
    fn new(crossing: usize, pos: usize) -> Self {
        Slot { crossing, pos: (pos % 4) as u8 }
    }
    fn index(self) -> usize {
        self.crossing * 4 + self.pos as usize
    }
    fn opposite(self) -> Slot {
        Slot::new(self.crossing, self.pos as usize + 2)
    }
    fn next_ccw(self) -> Slot {
        Slot::new(self.crossing, self.pos as usize + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PDCode {
    pub crossings: Vec<[u32; 4]>,
    /// Crossingless circles in addition to the crossings.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub unknots: u32,
}

fn is_zero(n: &u32) -> bool {
    *n == 0
}

/// Per-crossing orientation data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    /// Position (1 or 3) where the over-strand enters.
    pub over_entry: Vec<u8>,
    /// Closed strands through crossings, each as its sequence of entry slots.
    pub strands: Vec<Vec<Slot>>,
}

impl Orientation {
    pub fn sign(&self, crossing: usize) -> i8 {
        if self.over_entry[crossing] == 3 {
            1
        } else {
            -1
        }
    }
}

impl PDCode {
    pub fn unknot() -> Self {
        PDCode { crossings: Vec::new(), unknots: 1 }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// `partner[slot]` is the slot at the other end of the arc.
    pub fn partners(&self) -> Result<Vec<Slot>, DiagramError> {
        let mut seen: HashMap<u32, Vec<Slot>> = HashMap::new();
        for (x, c) in self.crossings.iter().enumerate() {
            for (k, &label) in c.iter().enumerate() {
                seen.entry(label).or_default().push(Slot::new(x, k));
            }
        }
        let mut partner = vec![Slot { crossing: usize::MAX, pos: 0 }; 4 * self.crossings.len()];
        for (label, slots) in &seen {
            if slots.len() != 2 {
                return Err(DiagramError::Invalid(format!("arc {label} appears {} times", slots.len())));
            }
            partner[slots[0].index()] = slots[1];
            partner[slots[1].index()] = slots[0];
        }
        Ok(partner)
    }

    /// Faces as cycles of corners; corner `(x, k)` lies between positions
    /// `k` and `k + 1` of crossing `x`.
    pub fn faces(&self) -> Result<Vec<Vec<Slot>>, DiagramError> {
        let partner = self.partners()?;
        let n = self.crossings.len();
        let mut face_of = vec![usize::MAX; 4 * n];
        let mut faces = Vec::new();
        for start in 0..4 * n {
            if face_of[start] != usize::MAX {
                continue;
            }
            let mut face = Vec::new();
            let mut cur = Slot::new(start / 4, start % 4);
            while face_of[cur.index()] == usize::MAX {
                face_of[cur.index()] = faces.len();
                face.push(cur);
                cur = partner[cur.next_ccw().index()];
            }
            if cur.index() != start {
                return Err(DiagramError::Invalid("face trace does not close".into()));
            }
            faces.push(face);
        }
        Ok(faces)
    }

    /// Connected pieces of the underlying shadow, counting crossingless circles.
    pub fn shadow_pieces(&self) -> Result<usize, DiagramError> {
        let partner = self.partners()?;
        let n = self.crossings.len();
        let mut uf = UnionFind::new(n);
        for s in 0..4 * n {
            uf.union(s / 4, partner[s].crossing);
        }
        Ok(uf.count() + self.unknots as usize)
    }

    pub fn validate(&self) -> Result<(), DiagramError> {
        let faces = self.faces()?;
        let n = self.crossings.len();
        if n == 0 {
            return Ok(());
        }
        let pieces = self.shadow_pieces()? - self.unknots as usize;
        // Euler: V - E + F = 1 + pieces, with V = n, E = 2n
        if faces.len() != n + 1 + pieces {
            return Err(DiagramError::Invalid(format!(
                "{} faces for {n} crossings in {pieces} pieces; diagram is not planar",
                faces.len()
            )));
        }
        self.orientation().map(|_| ())
    }

    /// Orients every strand; strands passing under somewhere follow the
    /// under-strand convention, all-over strands follow consecutive labels.
    pub fn orientation(&self) -> Result<Orientation, DiagramError> {
        let partner = self.partners()?;
        let n = self.crossings.len();
        let mut over_entry = vec![0u8; n];
        let mut visited = vec![false; 4 * n];
        let mut strands = Vec::new();
        let walk = |start: Slot, visited: &mut Vec<bool>, over_entry: &mut Vec<u8>| {
            let mut seq = Vec::new();
            let mut cur = start;
            while !visited[cur.index()] {
                visited[cur.index()] = true;
                visited[cur.opposite().index()] = true;
                match cur.pos {
                    0 => {}
                    2 => {
                        return Err(DiagramError::Invalid(format!(
                            "strand enters crossing {} against the under-strand direction",
                            cur.crossing
                        )))
                    }
                    k => over_entry[cur.crossing] = k,
                }
                seq.push(cur);
                cur = partner[cur.opposite().index()];
            }
            if cur != start {
                return Err(DiagramError::Invalid("strand does not close".into()));
            }
            Ok(seq)
        };
        for x in 0..n {
            let s = Slot::new(x, 0);
            if !visited[s.index()] {
                strands.push(walk(s, &mut visited, &mut over_entry)?);
            }
        }
        for x in 0..n {
            if visited[Slot::new(x, 1).index()] {
                continue;
            }
            let [_, b, _, d] = self.crossings[x];
            let d_to_b = b == d + 1 || d > b + 1;
            let start = Slot::new(x, if d_to_b { 3 } else { 1 });
            strands.push(walk(start, &mut visited, &mut over_entry)?);
        }
        Ok(Orientation { over_entry, strands })
    }

    pub fn components(&self) -> Result<usize, DiagramError> {
        Ok(self.orientation()?.strands.len() + self.unknots as usize)
    }

    pub fn crossing_signs(&self) -> Result<Vec<i8>, DiagramError> {
        let o = self.orientation()?;
        Ok((0..self.crossings.len()).map(|x| o.sign(x)).collect())
    }

    pub fn writhe(&self) -> Result<i64, DiagramError> {
        Ok(self.crossing_signs()?.iter().map(|&s| s as i64).sum())
    }

    /// Switches every crossing.
    pub fn mirror(&self) -> Result<PDCode, DiagramError> {
        let o = self.orientation()?;
        let crossings = self
            .crossings
            .iter()
            .enumerate()
            .map(|(x, c)| {
                let k = o.over_entry[x] as usize;
                [c[k % 4], c[(k + 1) % 4], c[(k + 2) % 4], c[(k + 3) % 4]]
            })
            .collect();
        Ok(PDCode { crossings, unknots: self.unknots })
    }

    /// Disjoint union.
    pub fn disjoint_union(&self, other: &PDCode) -> PDCode {
        let offset = self.crossings.iter().flatten().copied().max().unwrap_or(0);
        let mut crossings = self.crossings.clone();
        crossings.extend(other.crossings.iter().map(|c| c.map(|l| l + offset)));
        PDCode { crossings, unknots: self.unknots + other.unknots }
    }

    /// Relabels arcs 1..2n in order of first appearance.
    pub fn relabeled(&self) -> PDCode {
        let mut map = HashMap::new();
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                c.map(|l| {
                    let next = map.len() as u32 + 1;
                    *map.entry(l).or_insert(next)
                })
            })
            .collect();
        PDCode { crossings, unknots: self.unknots }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("PD serializes")
    }

    /// Reads either the JSON form or a flat list `X(a,b,c,d) ...`.
    pub fn parse(text: &str) -> Result<PDCode, DiagramError> {
        let trimmed = text.trim();
        if trimmed.starts_with('{') {
            let pd: PDCode = serde_json::from_str(trimmed).map_err(|e| DiagramError::Parse(e.to_string()))?;
            return Ok(pd);
        }
        let mut crossings = Vec::new();
        let mut rest = trimmed;
        while let Some(i) = rest.find(['X', 'x']) {
            rest = &rest[i + 1..];
            let open = rest.find(['(', '[']).ok_or_else(|| DiagramError::Parse("expected '('".into()))?;
            if !rest[..open].trim().is_empty() {
                return Err(DiagramError::Parse(format!("unexpected text {:?}", &rest[..open])));
            }
            let close = rest.find([')', ']']).ok_or_else(|| DiagramError::Parse("unclosed crossing".into()))?;
            let labels: Result<Vec<u32>, _> =
                rest[open + 1..close].split(',').map(|s| s.trim().parse::<u32>()).collect();
            let labels = labels.map_err(|e| DiagramError::Parse(e.to_string()))?;
            let tuple: [u32; 4] =
                labels.try_into().map_err(|_| DiagramError::Parse("a crossing needs four labels".into()))?;
            crossings.push(tuple);
            rest = &rest[close + 1..];
        }
        if crossings.is_empty() {
            return Err(DiagramError::Parse("no crossings found".into()));
        }
        Ok(PDCode { crossings, unknots: 0 })
    }
}

impl fmt::Display for PDCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.crossings.iter().map(|[a, b, c, d]| format!("X({a},{b},{c},{d})")).collect();
        write!(f, "{}", parts.join(" "))?;
        if self.unknots > 0 {
            if !parts.is_empty() {
                write!(f, " ")?;
            }
            write!(f, "O^{}", self.unknots)?;
        }
        Ok(())
    }
}

impl FromStr for PDCode {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PDCode::parse(s)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    sets: usize,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), sets: n }
    }
    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.sets -= 1;
        true
    }
    pub(crate) fn count(&self) -> usize {
        self.sets
    }
}

/// Which color class of the checkerboard coloring is black.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Shading {
    /// The face at the A-corner `(3, 0)` of crossing 0 is black.
    Primary,
    Secondary,
}

impl Shading {
    pub const BOTH: [Shading; 2] = [Shading::Primary, Shading::Secondary];
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShadedRegions {
    pub shading: Shading,
    /// Each region as its cycle of corners `(crossing, pos)`.
    pub regions: Vec<Vec<(usize, u8)>>,
    pub black: Vec<bool>,
}

impl ShadedRegions {
    pub fn black_count(&self) -> usize {
        self.black.iter().filter(|&&b| b).count()
    }
}

/// Both checkerboard colorings of a connected diagram.
pub fn checkerboard(pd: &PDCode) -> Result<[ShadedRegions; 2], DiagramError> {
    pd.validate()?;
    if pd.crossings.is_empty() {
        if pd.unknots != 1 {
            return Err(DiagramError::Split);
        }
        let make = |shading, black: bool| ShadedRegions {
            shading,
            regions: vec![Vec::new(), Vec::new()],
            black: vec![black, !black],
        };
        return Ok([make(Shading::Primary, true), make(Shading::Secondary, false)]);
    }
    if pd.unknots > 0 || pd.shadow_pieces()? != 1 {
        return Err(DiagramError::Split);
    }
    let faces = pd.faces()?;
    let n = pd.crossings.len();
    let mut face_of = vec![0usize; 4 * n];
    for (f, face) in faces.iter().enumerate() {
        for s in face {
            face_of[s.index()] = f;
        }
    }
    let mut color: Vec<Option<bool>> = vec![None; faces.len()];
    let mut stack = vec![(face_of[Slot::new(0, 3).index()], true)];
    while let Some((f, c)) = stack.pop() {
        match color[f] {
            Some(old) if old != c => return Err(DiagramError::Invalid("regions are not 2-colorable".into())),
            Some(_) => continue,
            None => color[f] = Some(c),
        }
        for s in &faces[f] {
            stack.push((face_of[s.next_ccw().index()], !c));
        }
    }
    let primary: Vec<bool> = color.iter().map(|c| c.expect("connected diagram")).collect();
    let regions: Vec<Vec<(usize, u8)>> =
        faces.iter().map(|f| f.iter().map(|s| (s.crossing, s.pos)).collect()).collect();
    Ok([
        ShadedRegions { shading: Shading::Primary, regions: regions.clone(), black: primary.clone() },
        ShadedRegions { shading: Shading::Secondary, regions, black: primary.iter().map(|b| !b).collect() },
    ])
}

/// One end of an edge: `end == 0` is the first endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HalfEdge {
    pub edge: usize,
    pub end: u8,
}

impl HalfEdge {
    pub fn new(edge: usize, end: u8) -> Self {
        HalfEdge { edge, end }
    }
    pub fn reversed(self) -> HalfEdge {
        HalfEdge { edge: self.edge, end: 1 - self.end }
    }
}

/// A plane multigraph given by a counterclockwise rotation system, with a
/// Tait sign on every edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PlaneGraph {
    pub ends: Vec<[usize; 2]>,
    pub signs: Vec<i8>,
    pub rotation: Vec<Vec<HalfEdge>>,
}

impl PlaneGraph {
    pub fn with_vertices(n: usize) -> Self {
        PlaneGraph { ends: Vec::new(), signs: Vec::new(), rotation: vec![Vec::new(); n] }
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn add_vertex(&mut self) -> usize {
        self.rotation.push(Vec::new());
        self.rotation.len() - 1
    }

    /// Adds an edge without touching the rotation system.
    pub fn add_edge(&mut self, u: usize, v: usize, sign: i8) -> usize {
        self.ends.push([u, v]);
        self.signs.push(sign);
        self.ends.len() - 1
    }

    pub fn vertex_of(&self, h: HalfEdge) -> usize {
        self.ends[h.edge][h.end as usize]
    }

    /// Checks that the rotation lists every half-edge exactly once at its vertex.
    pub fn check(&self) -> Result<(), DiagramError> {
        let mut seen = vec![[false; 2]; self.ends.len()];
        for (v, rot) in self.rotation.iter().enumerate() {
            for h in rot {
                if h.edge >= self.ends.len() || self.vertex_of(*h) != v {
                    return Err(DiagramError::Invalid(format!("half-edge {h:?} misplaced at {v}")));
                }
                if std::mem::replace(&mut seen[h.edge][h.end as usize], true) {
                    return Err(DiagramError::Invalid(format!("half-edge {h:?} repeated")));
                }
            }
        }
        if seen.iter().flatten().any(|s| !s) {
            return Err(DiagramError::Invalid("rotation misses a half-edge".into()));
        }
        Ok(())
    }

    /// Contracts a non-loop edge, merging its endpoints.
    pub fn contract(&self, e: usize) -> PlaneGraph {
        let [u, v] = self.ends[e];
        assert_ne!(u, v, "cannot contract a loop");
        let after = |rot: &[HalfEdge], h: HalfEdge| -> Vec<HalfEdge> {
            let i = rot.iter().position(|&x| x == h).expect("half-edge in rotation");
            (1..rot.len()).map(|k| rot[(i + k) % rot.len()]).collect()
        };
        let mut merged = after(&self.rotation[u], HalfEdge::new(e, 0));
        merged.extend(after(&self.rotation[v], HalfEdge::new(e, 1)));
        let vmap = |x: usize| -> usize {
            let x = if x == v { u } else { x };
            if x > v {
                x - 1
            } else {
                x
            }
        };
        let emap = |x: usize| if x > e { x - 1 } else { x };
        let mut out = PlaneGraph::with_vertices(self.rotation.len() - 1);
        for (i, (&[a, b], &s)) in self.ends.iter().zip(&self.signs).enumerate() {
            if i != e {
                out.add_edge(vmap(a), vmap(b), s);
            }
        }
        for (x, rot) in self.rotation.iter().enumerate() {
            if x == v {
                continue;
            }
            let src = if x == u { &merged } else { rot };
            out.rotation[vmap(x)] = src.iter().map(|h| HalfEdge::new(emap(h.edge), h.end)).collect();
        }
        out
    }

    /// Faces as cycles of half-edges (each half-edge leaves the vertex it is at).
    pub fn faces(&self) -> Vec<Vec<HalfEdge>> {
        let mut pos: HashMap<HalfEdge, usize> = HashMap::new();
        for rot in &self.rotation {
            for (i, h) in rot.iter().enumerate() {
                pos.insert(*h, i);
            }
        }
        let mut done: HashMap<HalfEdge, bool> = HashMap::new();
        let mut faces = Vec::new();
        for rot in &self.rotation {
            for &start in rot {
                if done.contains_key(&start) {
                    continue;
                }
                let mut face = Vec::new();
                let mut cur = start;
                while done.insert(cur, true).is_none() {
                    face.push(cur);
                    let back = cur.reversed();
                    let rot = &self.rotation[self.vertex_of(back)];
                    cur = rot[(pos[&back] + 1) % rot.len()];
                }
                faces.push(face);
            }
        }
        faces
    }

    /// The plane dual: a vertex per face, edge `e` of the dual crosses edge
    /// `e`, and its sign is negated.
    pub fn dual(&self) -> PlaneGraph {
        let faces = self.faces();
        let mut face_of: HashMap<HalfEdge, usize> = HashMap::new();
        for (f, face) in faces.iter().enumerate() {
            for h in face {
                face_of.insert(*h, f);
            }
        }
        let mut out = PlaneGraph::with_vertices(faces.len().max(1));
        for e in 0..self.ends.len() {
            out.add_edge(face_of[&HalfEdge::new(e, 0)], face_of[&HalfEdge::new(e, 1)], -self.signs[e]);
        }
        for (f, face) in faces.iter().enumerate() {
            out.rotation[f] = face.iter().rev().copied().collect();
        }
        out
    }

    /// The medial diagram: a crossing per edge, over/under chosen by the sign.
    ///
    /// Around the crossing of edge `(u, v)` the four strand ends are, in
    /// counterclockwise order, 0 and 3 next to `u`, 1 and 2 next to `v`.
    /// Sign `+1` runs the under-strand through 0 and 2.
    pub fn medial_pd(&self) -> Result<PDCode, DiagramError> {
        self.check()?;
        let n = self.ends.len();
        if n == 0 {
            let circles = self.rotation.len() as u32;
            return Ok(PDCode { crossings: Vec::new(), unknots: circles });
        }
        let left = |h: HalfEdge| Slot::new(h.edge, if h.end == 0 { 3 } else { 1 });
        let right = |h: HalfEdge| Slot::new(h.edge, if h.end == 0 { 0 } else { 2 });
        let mut partner = vec![Slot { crossing: usize::MAX, pos: 0 }; 4 * n];
        let mut isolated = 0u32;
        for rot in &self.rotation {
            if rot.is_empty() {
                isolated += 1;
                continue;
            }
            for i in 0..rot.len() {
                let a = left(rot[i]);
                let b = right(rot[(i + 1) % rot.len()]);
                partner[a.index()] = b;
                partner[b.index()] = a;
            }
        }
        // Walk each strand, numbering arcs as we go.
        let mut label = vec![0u32; 4 * n];
        let mut under_entry: Vec<Option<usize>> = vec![None; n];
        let mut next_label = 1u32;
        for s in 0..4 * n {
            if label[s] != 0 {
                continue;
            }
            let start = Slot::new(s / 4, s % 4);
            let mut cur = start;
            loop {
                let x = cur.crossing;
                let under_pair = if self.signs[x] > 0 { 0 } else { 1 };
                if cur.pos as usize % 2 == under_pair {
                    under_entry[x] = Some(cur.pos as usize);
                }
                let exit = cur.opposite();
                let next = partner[exit.index()];
                label[exit.index()] = next_label;
                label[next.index()] = next_label;
                next_label += 1;
                cur = next;
                if cur == start {
                    break;
                }
            }
        }
        let crossings = (0..n)
            .map(|x| {
                let k = under_entry[x].expect("every crossing has an under-strand");
                [0, 1, 2, 3].map(|j| label[x * 4 + (k + j) % 4])
            })
            .collect();
        Ok(PDCode { crossings, unknots: isolated })
    }
}

/// Tait graph of a connected diagram: vertex per black region, edge `i`
/// for crossing `i`, sign `+1` when the A-smoothing joins the black regions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaitGraph {
    pub shading: Shading,
    pub graph: PlaneGraph,
    /// Region index (into the face list) of each vertex.
    pub region_of_vertex: Vec<usize>,
}

pub fn tait_graph(pd: &PDCode, shading: Shading) -> Result<TaitGraph, DiagramError> {
    let [primary, secondary] = checkerboard(pd)?;
    let shaded = if shading == Shading::Primary { primary } else { secondary };
    if pd.crossings.is_empty() {
        let v = if shaded.black[0] { 0 } else { 1 };
        return Ok(TaitGraph { shading, graph: PlaneGraph::with_vertices(1), region_of_vertex: vec![v] });
    }
    let n = pd.crossings.len();
    let mut vertex_of_region = vec![usize::MAX; shaded.regions.len()];
    let mut region_of_vertex = Vec::new();
    for (f, &b) in shaded.black.iter().enumerate() {
        if b {
            vertex_of_region[f] = region_of_vertex.len();
            region_of_vertex.push(f);
        }
    }
    let mut corner_region = vec![0usize; 4 * n];
    for (f, region) in shaded.regions.iter().enumerate() {
        for &(x, k) in region {
            corner_region[x * 4 + k as usize] = f;
        }
    }
    let mut graph = PlaneGraph::with_vertices(region_of_vertex.len());
    for x in 0..n {
        // corners (3,0) and (1,2) are the A-corners
        let a_black = shaded.black[corner_region[x * 4 + 3]];
        let (k0, k1) = if a_black { (3, 1) } else { (0, 2) };
        let u = vertex_of_region[corner_region[x * 4 + k0]];
        let v = vertex_of_region[corner_region[x * 4 + k1]];
        graph.add_edge(u, v, if a_black { 1 } else { -1 });
    }
    for (vtx, &f) in region_of_vertex.iter().enumerate() {
        // region walks run clockwise around the region
        graph.rotation[vtx] = shaded.regions[f]
            .iter()
            .rev()
            .map(|&(x, k)| HalfEdge::new(x, if k == 0 || k == 3 { 0 } else { 1 }))
            .collect();
    }
    graph.check()?;
    Ok(TaitGraph { shading, graph, region_of_vertex })
}

/// Which Tait sign a positive twist label receives on a tree edge; rims get
/// the opposite sign. Fixed by matching the double twist bracket formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TemplateConvention {
    /// Positive spoke labels are Tait sign -1.
    Standard,
    /// Positive spoke labels are Tait sign +1.
    Flipped,
}

impl TemplateConvention {
    fn spoke_sign(self, label: i64) -> i8 {
        let s = if self == TemplateConvention::Standard { -1 } else { 1 };
        s * label.signum() as i8
    }
    fn rim_sign(self, label: i64) -> i8 {
        -self.spoke_sign(label)
    }
}

/// Adds a chain of `len` edges from `from` to a fresh vertex (or to `from`
/// itself when `len == 0`), returning the far vertex and the first/last edges.
fn chain(g: &mut PlaneGraph, from: usize, len: u64, sign: i8) -> (usize, Option<(usize, usize)>) {
    if len == 0 {
        return (from, None);
    }
    let mut prev = from;
    let mut first = None;
    let mut last = 0;
    for _ in 0..len {
        let w = g.add_vertex();
        let e = g.add_edge(prev, w, sign);
        if prev != from {
            g.rotation[prev].push(HalfEdge::new(e, 0));
        }
        g.rotation[w].push(HalfEdge::new(e, 1));
        first.get_or_insert(e);
        last = e;
        prev = w;
    }
    (prev, Some((first.unwrap(), last)))
}

/// Plane graph of the girth-2 template: a chain of `|p|` tree edges and a
/// bundle of `|q|` parallel edges between the same two vertices.
pub fn double_twist_graph(p: i64, q: i64, conv: TemplateConvention) -> PlaneGraph {
    let mut g = PlaneGraph::with_vertices(1);
    let (end, path) = chain(&mut g, 0, p.unsigned_abs(), conv.spoke_sign(p));
    let k = q.unsigned_abs() as usize;
    let rims: Vec<usize> = (0..k).map(|_| g.add_edge(0, end, conv.rim_sign(q))).collect();
    match path {
        Some((first, last)) => {
            g.rotation[0].push(HalfEdge::new(first, 0));
            g.rotation[0].extend(rims.iter().map(|&e| HalfEdge::new(e, 0)));
            // the last chain vertex already holds the chain edge
            g.rotation[end].extend(rims.iter().rev().map(|&e| HalfEdge::new(e, 1)));
            let _ = last;
        }
        None => {
            for &e in &rims {
                g.rotation[0].push(HalfEdge::new(e, 0));
                g.rotation[0].push(HalfEdge::new(e, 1));
            }
        }
    }
    g
}

/// Plane graph of the single twist `K(p)`: a cycle of `|p|` edges.
pub fn single_twist_graph(p: i64, conv: TemplateConvention) -> PlaneGraph {
    let n = p.unsigned_abs() as usize;
    if n == 0 {
        // two unlinked circles
        return PlaneGraph::with_vertices(2);
    }
    let mut g = PlaneGraph::with_vertices(n);
    for i in 0..n {
        g.add_edge(i, (i + 1) % n, conv.spoke_sign(p));
    }
    for i in 0..n {
        g.rotation[i].push(HalfEdge::new(i, 0));
        g.rotation[i].push(HalfEdge::new((i + n - 1) % n, 1));
    }
    g
}

/// Plane graph of the girth-3 template: a center joined to three leaves by
/// chains `p, q, r` (counterclockwise), and parallel bundles `a` between the
/// `p`- and `q`-leaves, `b` between `q` and `r`, `c` between `r` and `p`.
pub fn girth3_graph(rep: &Girth3Rep, conv: TemplateConvention) -> PlaneGraph {
    let mut g = PlaneGraph::with_vertices(1);
    let mut leaves = [0usize; 3];
    let mut spoke_end = [HalfEdge::new(0, 0); 3];
    let mut to_contract = Vec::new();
    for i in 0..3 {
        let label = rep.top[i];
        let len = label.unsigned_abs().max(1);
        let (leaf, path) = chain(&mut g, 0, len, conv.spoke_sign(label));
        let (first, last) = path.expect("nonempty chain");
        g.rotation[0].push(HalfEdge::new(first, 0));
        if label == 0 {
            to_contract.push(first);
        }
        leaves[i] = leaf;
        spoke_end[i] = HalfEdge::new(last, 1);
    }
    // rim bundle i joins leaf i to leaf i+1
    let mut bundles: Vec<Vec<usize>> = Vec::new();
    for i in 0..3 {
        let label = rep.bottom[i];
        let (x, y) = (leaves[i], leaves[(i + 1) % 3]);
        bundles.push((0..label.unsigned_abs()).map(|_| g.add_edge(x, y, conv.rim_sign(label))).collect());
    }
    for i in 0..3 {
        // leaf i, counterclockwise: bundle to leaf i+1, spoke, bundle from leaf i-1
        let leaf = leaves[i];
        let mut rot = Vec::new();
        rot.extend(bundles[i].iter().map(|&e| HalfEdge::new(e, 0)));
        rot.push(spoke_end[i]);
        rot.extend(bundles[(i + 2) % 3].iter().rev().map(|&e| HalfEdge::new(e, 1)));
        g.rotation[leaf] = rot;
    }
    // contract zero spokes, highest edge index first so indices stay valid
    to_contract.sort_unstable_by(|a, b| b.cmp(a));
    for e in to_contract {
        g = g.contract(e);
    }
    g
}

/// Plane graph of the `(p, q, r)` pretzel diagram: three chains of tree-type
/// edges between two vertices.
pub fn pretzel_graph(labels: &[i64], conv: TemplateConvention) -> PlaneGraph {
    let mut g = PlaneGraph::with_vertices(2);
    let mut halves = Vec::new();
    for &label in labels {
        let sign = conv.spoke_sign(label);
        let n = label.unsigned_abs();
        if n == 0 {
            halves.push(None);
            continue;
        }
        let mut prev = 0;
        let mut first = 0;
        for i in 0..n {
            let w = if i + 1 == n { 1 } else { g.add_vertex() };
            let e = g.add_edge(prev, w, sign);
            if i == 0 {
                first = e;
            } else {
                g.rotation[prev].push(HalfEdge::new(e, 0));
            }
            if w != 1 {
                g.rotation[w].push(HalfEdge::new(e, 1));
            } else {
                halves.push(Some((first, e)));
            }
            prev = w;
        }
    }
    let present: Vec<(usize, usize)> = halves.iter().flatten().copied().collect();
    g.rotation[0] = present.iter().map(|&(f, _)| HalfEdge::new(f, 0)).collect();
    g.rotation[1] = present.iter().rev().map(|&(_, l)| HalfEdge::new(l, 1)).collect();
    if halves.iter().any(|h| h.is_none()) {
        // a zero column identifies the two end vertices
        let bridge = g.add_edge(0, 1, 1);
        g.rotation[0].insert(0, HalfEdge::new(bridge, 0));
        g.rotation[1].push(HalfEdge::new(bridge, 1));
        g = g.contract(bridge);
    }
    g
}

/// Standard diagram of a pretzel link with the given twist columns.
pub fn pretzel_pd(labels: &[i64]) -> PDCode {
    pretzel_graph(labels, TemplateConvention::Standard).medial_pd().expect("pretzel graph is valid")
}

pub fn plane_graph_of_rep(r: &Rep, conv: TemplateConvention) -> Result<PlaneGraph, DiagramError> {
    match r {
        Rep::Girth1(Girth1Rep { p }) => Ok(single_twist_graph(*p, conv)),
        Rep::Girth2(Girth2Rep { p, q }) => Ok(double_twist_graph(*p, *q, conv)),
        Rep::Girth3(g3) => Ok(girth3_graph(g3, conv)),
        Rep::General(_) => Err(DiagramError::NoTemplate(r.to_string())),
    }
}

pub fn pd_from_rep_with(r: &Rep, conv: TemplateConvention) -> Result<PDCode, DiagramError> {
    plane_graph_of_rep(r, conv)?.medial_pd()
}

/// Diagram of a girth-1, girth-2 or girth-3 representation.
pub fn pd_from_rep(r: &Rep) -> Result<PDCode, DiagramError> {
    pd_from_rep_with(r, TemplateConvention::Standard)
}

/// Counts region sizes, handy for quick structural checks.
pub fn region_size_histogram(regions: &ShadedRegions) -> BTreeMap<usize, usize> {
    let mut h = BTreeMap::new();
    for r in &regions.regions {
        *h.entry(r.len()).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> PDCode {
        "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]".parse().unwrap()
    }

    #[test]
    fn parse_forms() {
        let pd = trefoil();
        assert_eq!(pd.crossing_count(), 3);
        let json = pd.to_json();
        assert_eq!(json, r#"{"crossings":[[1,4,2,5],[3,6,4,1],[5,2,6,3]]}"#);
        assert_eq!(PDCode::parse(&json).unwrap(), pd);
        assert_eq!(PDCode::parse(&pd.to_string()).unwrap(), pd);
        assert!(PDCode::parse("X(1,2,3)").is_err());
        assert!(PDCode::parse("nothing").is_err());
    }

    #[test]
    fn invalid_codes() {
        let pd = PDCode { crossings: vec![[1, 2, 3, 4]], unknots: 0 };
        assert!(matches!(pd.validate(), Err(DiagramError::Invalid(_))));
    }

    #[test]
    fn trefoil_regions() {
        let pd = trefoil();
        pd.validate().unwrap();
        assert_eq!(pd.components().unwrap(), 1);
        assert_eq!(pd.writhe().unwrap().abs(), 3);
        let [a, b] = checkerboard(&pd).unwrap();
        assert_eq!(a.regions.len(), 5);
        let mut split = [a.black_count(), b.black_count()];
        split.sort();
        assert_eq!(split, [2, 3]);
    }

    #[test]
    fn unknot_regions() {
        let [a, _] = checkerboard(&PDCode::unknot()).unwrap();
        assert_eq!(a.regions.len(), 2);
    }

    #[test]
    fn trefoil_tait_graphs() {
        let pd = trefoil();
        let mut sizes: Vec<(usize, usize)> = Shading::BOTH
            .iter()
            .map(|&s| {
                let t = tait_graph(&pd, s).unwrap();
                (t.graph.vertex_count(), t.graph.edge_count())
            })
            .collect();
        sizes.sort();
        assert_eq!(sizes, vec![(2, 3), (3, 3)]);
        for s in Shading::BOTH {
            let t = tait_graph(&pd, s).unwrap();
            assert!(t.graph.signs.iter().all(|&x| x == t.graph.signs[0]));
        }
    }

    #[test]
    fn mirror_negates_writhe() {
        let pd = trefoil();
        assert_eq!(pd.mirror().unwrap().writhe().unwrap(), -pd.writhe().unwrap());
    }

    #[test]
    fn template_sizes() {
        let pd = pd_from_rep(&Rep::Girth2(Girth2Rep { p: 3, q: -2 })).unwrap();
        assert_eq!(pd.crossing_count(), 5);
        pd.validate().unwrap();
        let pd = pd_from_rep(&Rep::Girth2(Girth2Rep { p: 0, q: 0 })).unwrap();
        assert_eq!((pd.crossing_count(), pd.unknots), (0, 1));
        let r = Girth3Rep::new([0, 2, 2], [0, -1, -1]);
        let pd = pd_from_rep(&r.into()).unwrap();
        assert_eq!(pd.crossing_count(), 6);
        pd.validate().unwrap();
    }

    #[test]
    fn components_by_parity() {
        let count = |r: Rep| pd_from_rep(&r).unwrap().components().unwrap();
        assert_eq!(count(Girth2Rep { p: 2, q: 2 }.into()), 1);
        assert_eq!(count(Girth1Rep { p: 2 }.into()), 2);
        assert_eq!(count(Girth1Rep { p: 3 }.into()), 1);
        assert_eq!(count(Girth1Rep { p: 0 }.into()), 2);
        assert_eq!(count(Girth3Rep::new([2, 2, 2], [2, 2, 2]).into()), 1);
        assert_eq!(count(Girth3Rep::new([-1, -1, -1], [1, 1, 1]).into()), 3);
    }

    #[test]
    fn contraction_keeps_planarity() {
        for top in [[0, 0, 0], [0, 1, 2], [2, 0, 0], [1, 1, 0]] {
            let r = Girth3Rep::new(top, [1, -2, 1]);
            let g = girth3_graph(&r, TemplateConvention::Standard);
            g.check().unwrap();
            let v = g.vertex_count() as i64;
            let e = g.edge_count() as i64;
            assert_eq!(v - e + g.faces().len() as i64, 2, "{r}");
            g.medial_pd().unwrap().validate().unwrap();
        }
    }

    #[test]
    fn dual_of_dual_has_same_shape() {
        let g = girth3_graph(&Girth3Rep::new([1, 2, 3], [1, 1, 2]), TemplateConvention::Standard);
        let dd = g.dual().dual();
        assert_eq!(dd.vertex_count(), g.vertex_count());
        assert_eq!(dd.signs, g.signs);
    }

    #[test]
    fn tait_graph_round_trip() {
        let pd = pd_from_rep(&Girth3Rep::new([1, -2, 3], [2, 1, -1]).into()).unwrap();
        for s in Shading::BOTH {
            let t = tait_graph(&pd, s).unwrap();
            let again = t.graph.medial_pd().unwrap();
            assert_eq!(again.crossing_count(), pd.crossing_count());
            assert_eq!(again.writhe().unwrap(), pd.writhe().unwrap());
        }
    }
}

/// How the loose ends of a braid are joined up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BraidClosure {
    /// Column `i` at the top joins column `i` at the bottom.
    Standard,
    /// Columns `2j` and `2j+1` are capped at the top and at the bottom.
    Plat,
}

/// Diagram of a closed braid. Each letter `(i, e)` is a crossing between
/// columns `i` and `i+1`, read top to bottom; `e > 0` puts the strand from
/// the upper left over.
pub fn braid_pd(width: usize, word: &[(usize, i8)], closure: BraidClosure) -> Result<PDCode, DiagramError> {
    if closure == BraidClosure::Plat && !width.is_multiple_of(2) {
        return Err(DiagramError::Invalid("plat closure needs an even width".into()));
    }
    if let Some(&(i, _)) = word.iter().find(|(i, _)| i + 1 >= width) {
        return Err(DiagramError::Invalid(format!("generator {i} out of range for width {width}")));
    }
    // end slots of crossing k, counterclockwise: NE, NW, SW, SE
    let mut ends: Vec<[usize; 4]> = Vec::with_capacity(word.len());
    let top: Vec<usize> = (0..width).collect();
    let mut current = top.clone();
    let mut next_arc = width;
    for &(i, _) in word {
        let (sw, se) = (next_arc, next_arc + 1);
        next_arc += 2;
        ends.push([current[i + 1], current[i], sw, se]);
        current[i] = sw;
        current[i + 1] = se;
    }
    let mut uf = UnionFind::new(next_arc);
    match closure {
        BraidClosure::Standard => (0..width).for_each(|c| {
            uf.union(top[c], current[c]);
        }),
        BraidClosure::Plat => (0..width).step_by(2).for_each(|c| {
            uf.union(top[c], top[c + 1]);
            uf.union(current[c], current[c + 1]);
        }),
    }
    let arc: Vec<[usize; 4]> = ends.iter().map(|e| e.map(|a| uf.find(a))).collect();
    let mut slots_of: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
    for (k, e) in arc.iter().enumerate() {
        for (j, &a) in e.iter().enumerate() {
            slots_of.entry(a).or_default().push((k, j));
        }
    }
    if slots_of.values().any(|s| s.len() != 2) {
        return Err(DiagramError::Invalid("closure leaves a crossingless strand".into()));
    }
    // orient each component and record where it enters each under-strand
    let under_start = |e: i8| if e > 0 { 0 } else { 1 };
    let mut entry: Vec<Option<usize>> = vec![None; word.len()];
    let mut visited = vec![[false; 4]; word.len()];
    for k0 in 0..word.len() {
        for j0 in 0..4 {
            if visited[k0][j0] {
                continue;
            }
            let (mut k, mut j) = (k0, j0);
            while !visited[k][j] {
                let exit = (j + 2) % 4;
                visited[k][j] = true;
                visited[k][exit] = true;
                if j % 2 == under_start(word[k].1) {
                    entry[k] = Some(j);
                }
                let a = arc[k][exit];
                let &(nk, nj) = slots_of[&a].iter().find(|&&s| s != (k, exit)).expect("arc has two ends");
                (k, j) = (nk, nj);
            }
        }
    }
    let crossings = (0..word.len())
        .map(|k| {
            let s = entry[k].expect("every under-strand is traversed");
            [0, 1, 2, 3].map(|d| arc[k][(s + d) % 4] as u32)
        })
        .collect();
    let pd = PDCode { crossings, unknots: 0 }.relabeled();
    pd.validate()?;
    Ok(pd)
}

/// Two-bridge knot or link from Conway notation `[a1 a2 ... an]`, drawn as a
/// four-plat.
pub fn rational_pd(notation: &[i64]) -> Result<PDCode, DiagramError> {
    let mut terms = notation.to_vec();
    if terms.is_empty() {
        return Err(DiagramError::Invalid("empty Conway notation".into()));
    }
    if terms.len().is_multiple_of(2) {
        // [.., a] = [.., a - 1, 1]
        *terms.last_mut().unwrap() -= 1;
        terms.push(1);
    }
    let mut word = Vec::new();
    for (idx, &a) in terms.iter().enumerate() {
        let (column, sign) = if idx % 2 == 0 { (1, 1) } else { (0, -1) };
        let e = if a >= 0 { sign } else { -sign };
        word.extend(std::iter::repeat_n((column, e), a.unsigned_abs() as usize));
    }
    braid_pd(4, &word, BraidClosure::Plat)
}
