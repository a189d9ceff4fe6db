//! Heegaard decompositions of a diagram along spanning trees of its Tait
//! graph, their girth, and the tree-pair representation they carry.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{tait_graph, DiagramError, HalfEdge, PDCode, PlaneGraph, Shading, UnionFind};
use crate::repr::{Girth2Rep, Girth3Rep, PlaneTree, Rep, TreePairRep};

/// Default crossing budget for exhaustive spanning-tree search.
pub const TREE_BUDGET: usize = 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GirthError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("edge set is not a spanning tree: {0}")]
    NotSpanning(String),
    #[error("diagram is not reduced: the {0:?} Tait graph has a valence-1 vertex")]
    NotReduced(Shading),
    #[error("{crossings} crossings exceeds the budget of {budget} (about {estimate} spanning trees)")]
    OverBudget { crossings: usize, budget: usize, estimate: f64 },
    #[error("cannot read a representation off this decomposition: {0}")]
    Shape(String),
}

/// Dashed-line ends between two consecutive tree edges at one vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sector {
    pub vertex: usize,
    /// Crossings whose non-tree edge ends here, in rotation order.
    pub dashed: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TaitDecomposition {
    pub shading: Shading,
    /// Crossings on tree edges, sorted.
    pub tree: Vec<usize>,
    /// Crossings on the dual tree, sorted.
    pub dual_tree: Vec<usize>,
    /// Nonempty sectors on the tree side in boundary order (the A blocks).
    pub blocks: Vec<Sector>,
    /// Nonempty sectors on the dual side in boundary order (the B blocks).
    pub dual_blocks: Vec<Sector>,
    pub reduced: PlaneTree,
    pub reduced_dual: PlaneTree,
    pub girth: usize,
    pub dual_girth: usize,
    /// Some merged twist region mixes crossing signs.
    pub mixed_signs: bool,
    #[serde(skip)]
    graph: PlaneGraph,
    #[serde(skip)]
    sector_of: BTreeMap<HalfEdge, usize>,
}

impl TaitDecomposition {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("decomposition serializes")
    }
}

/// Walks the boundary of a neighborhood of the tree, returning every sector
/// (empty ones too) in boundary order.
fn sectors_of(g: &PlaneGraph, in_tree: &[bool]) -> Vec<(usize, Vec<HalfEdge>)> {
    let tree_edges = in_tree.iter().filter(|&&t| t).count();
    if tree_edges == 0 {
        return vec![(0, g.rotation.first().cloned().unwrap_or_default())];
    }
    let start_vertex =
        (0..g.vertex_count()).find(|&v| g.rotation[v].iter().any(|h| in_tree[h.edge])).expect("tree edge");
    let rot = &g.rotation[start_vertex];
    let i0 = rot.iter().position(|h| in_tree[h.edge]).expect("tree edge");
    let pos = |v: usize, h: HalfEdge| g.rotation[v].iter().position(|&x| x == h).expect("half-edge");
    let mut sectors = Vec::with_capacity(2 * tree_edges);
    let (mut v, mut i) = (start_vertex, i0);
    for _ in 0..2 * tree_edges {
        let rot = &g.rotation[v];
        let mut dashed = Vec::new();
        let mut k = (i + 1) % rot.len();
        while !in_tree[rot[k].edge] {
            dashed.push(rot[k]);
            k = (k + 1) % rot.len();
        }
        sectors.push((v, dashed));
        let back = rot[k].reversed();
        v = g.vertex_of(back);
        i = pos(v, back);
    }
    sectors
}

/// Reduced labeled tree: suppress valence-2 vertices without dashed lines
/// and add the labels along each merged chain.
fn reduce(g: &PlaneGraph, in_tree: &[bool], has_dashed: &[bool], label_of: impl Fn(usize) -> i64) -> (PlaneTree, bool) {
    let n = g.vertex_count();
    let tree_rot: Vec<Vec<HalfEdge>> =
        g.rotation.iter().map(|rot| rot.iter().copied().filter(|h| in_tree[h.edge]).collect()).collect();
    let kept: Vec<bool> = (0..n).map(|v| tree_rot[v].len() != 2 || has_dashed[v]).collect();
    let mut new_index = vec![usize::MAX; n];
    let mut count = 0;
    for v in 0..n {
        if kept[v] && !tree_rot[v].is_empty() {
            new_index[v] = count;
            count += 1;
        }
    }
    if count == 0 {
        return (PlaneTree::single_vertex(), false);
    }
    let mut edges = Vec::new();
    let mut rotation = vec![Vec::new(); count];
    let mut chain_of: BTreeMap<HalfEdge, usize> = BTreeMap::new();
    let mut mixed = false;
    for v in 0..n {
        if new_index[v] == usize::MAX {
            continue;
        }
        for &h in &tree_rot[v] {
            if let Some(&e) = chain_of.get(&h) {
                rotation[new_index[v]].push(e);
                continue;
            }
            let mut cur = h;
            let mut label = 0;
            let mut signs = Vec::new();
            loop {
                label += label_of(cur.edge);
                signs.push(g.signs[cur.edge]);
                let w = g.vertex_of(cur.reversed());
                if kept[w] {
                    let e = edges.len();
                    edges.push((new_index[v], new_index[w], label));
                    chain_of.insert(cur.reversed(), e);
                    rotation[new_index[v]].push(e);
                    break;
                }
                cur = *tree_rot[w].iter().find(|&&x| x != cur.reversed()).expect("valence 2");
            }
            if signs.iter().any(|&s| s != signs[0]) {
                mixed = true;
            }
        }
    }
    (PlaneTree { edges, rotation }, mixed)
}

fn check_spanning(g: &PlaneGraph, tree: &[usize]) -> Result<(), GirthError> {
    let mut uf = UnionFind::new(g.vertex_count());
    for &e in tree {
        if e >= g.edge_count() {
            return Err(GirthError::NotSpanning(format!("no edge {e}")));
        }
        let [u, v] = g.ends[e];
        if !uf.union(u, v) {
            return Err(GirthError::NotSpanning(format!("edge {e} closes a cycle")));
        }
    }
    if uf.count() != 1 {
        return Err(GirthError::NotSpanning("tree does not reach every vertex".into()));
    }
    Ok(())
}

fn check_reduced(g: &PlaneGraph, shading: Shading) -> Result<(), GirthError> {
    if g.rotation.iter().any(|r| r.len() == 1) || g.ends.iter().any(|[u, v]| u == v) {
        return Err(GirthError::NotReduced(shading));
    }
    Ok(())
}

fn decompose_graph(g: &PlaneGraph, shading: Shading, tree: &[usize]) -> Result<TaitDecomposition, GirthError> {
    check_spanning(g, tree)?;
    let m = g.edge_count();
    let mut in_tree = vec![false; m];
    for &e in tree {
        in_tree[e] = true;
    }
    let dual = g.dual();
    let in_dual: Vec<bool> = in_tree.iter().map(|t| !t).collect();
    check_spanning(&dual, &(0..m).filter(|&e| in_dual[e]).collect::<Vec<_>>())?;

    let side = |graph: &PlaneGraph, member: &[bool]| {
        let all = sectors_of(graph, member);
        let mut has_dashed = vec![false; graph.vertex_count()];
        let mut sector_of = BTreeMap::new();
        let mut blocks = Vec::new();
        for (v, dashed) in all {
            if dashed.is_empty() {
                continue;
            }
            has_dashed[v] = true;
            for h in &dashed {
                sector_of.insert(*h, blocks.len());
            }
            blocks.push(Sector { vertex: v, dashed: dashed.iter().map(|h| h.edge).collect() });
        }
        (blocks, has_dashed, sector_of)
    };
    let (blocks, has_dashed, sector_of) = side(g, &in_tree);
    let (dual_blocks, dual_has_dashed, _) = side(&dual, &in_dual);
    // tree edges count -sign, dual tree edges count the sign in this shading
    let (reduced, mixed_t) = reduce(g, &in_tree, &has_dashed, |e| -(g.signs[e] as i64));
    let (reduced_dual, mixed_d) = reduce(&dual, &in_dual, &dual_has_dashed, |e| g.signs[e] as i64);
    let mut tree: Vec<usize> = tree.to_vec();
    tree.sort_unstable();
    Ok(TaitDecomposition {
        shading,
        dual_tree: (0..m).filter(|&e| in_dual[e]).collect(),
        tree,
        girth: blocks.len(),
        dual_girth: dual_blocks.len(),
        blocks,
        dual_blocks,
        reduced,
        reduced_dual,
        mixed_signs: mixed_t || mixed_d,
        graph: g.clone(),
        sector_of,
    })
}

/// Heegaard decomposition of `pd` along the spanning tree `tree` (crossing
/// indices) of the Tait graph in the given shading.
pub fn decompose(pd: &PDCode, shading: Shading, tree: &[usize]) -> Result<TaitDecomposition, GirthError> {
    let g = tait_graph(pd, shading)?.graph;
    check_reduced(&g, shading)?;
    decompose_graph(&g, shading, tree)
}

/// All spanning trees of a multigraph, by including or excluding each edge.
pub fn spanning_trees(g: &PlaneGraph) -> Vec<Vec<usize>> {
    fn connected(g: &PlaneGraph, allowed: impl Fn(usize) -> bool) -> bool {
        let mut uf = UnionFind::new(g.vertex_count());
        for (e, &[u, v]) in g.ends.iter().enumerate() {
            if allowed(e) {
                uf.union(u, v);
            }
        }
        uf.count() == 1
    }
    fn rec(g: &PlaneGraph, e: usize, chosen: &mut Vec<usize>, excluded: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if chosen.len() + 1 == g.vertex_count() {
            out.push(chosen.clone());
            return;
        }
        if e == g.edge_count() {
            return;
        }
        let [u, v] = g.ends[e];
        let mut uf = UnionFind::new(g.vertex_count());
        for &c in chosen.iter() {
            let [a, b] = g.ends[c];
            uf.union(a, b);
        }
        if uf.find(u) != uf.find(v) {
            chosen.push(e);
            rec(g, e + 1, chosen, excluded, out);
            chosen.pop();
        }
        excluded[e] = true;
        if connected(g, |x| !excluded[x]) {
            rec(g, e + 1, chosen, excluded, out);
        }
        excluded[e] = false;
    }
    let mut out = Vec::new();
    if g.vertex_count() == 0 || !connected(g, |_| true) {
        return out;
    }
    rec(g, 0, &mut Vec::new(), &mut vec![false; g.edge_count()], &mut out);
    out
}

/// Number of spanning trees by the matrix-tree theorem, as a float estimate.
pub fn spanning_tree_estimate(g: &PlaneGraph) -> f64 {
    let n = g.vertex_count();
    if n <= 1 {
        return 1.0;
    }
    let mut lap = vec![vec![0f64; n]; n];
    for &[u, v] in &g.ends {
        if u != v {
            lap[u][u] += 1.0;
            lap[v][v] += 1.0;
            lap[u][v] -= 1.0;
            lap[v][u] -= 1.0;
        }
    }
    let mut m: Vec<Vec<f64>> = lap[1..].iter().map(|r| r[1..].to_vec()).collect();
    let k = n - 1;
    let mut det = 1.0;
    for c in 0..k {
        let p = (c..k).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs())).unwrap();
        if m[p][c].abs() < 1e-12 {
            return 0.0;
        }
        m.swap(p, c);
        if p != c {
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..k {
            let f = m[r][c] / m[c][c];
            for j in c..k {
                m[r][j] -= f * m[c][j];
            }
        }
    }
    det.abs().round()
}

/// Every decomposition of the diagram over both shadings, within the budget.
pub fn all_decompositions(pd: &PDCode, budget: usize) -> Result<Vec<TaitDecomposition>, GirthError> {
    let n = pd.crossing_count();
    let graphs: Vec<(Shading, PlaneGraph)> =
        Shading::BOTH.iter().map(|&s| Ok((s, tait_graph(pd, s)?.graph))).collect::<Result<_, GirthError>>()?;
    if n > budget {
        let estimate = graphs.iter().map(|(_, g)| spanning_tree_estimate(g)).sum();
        return Err(GirthError::OverBudget { crossings: n, budget, estimate });
    }
    for (s, g) in &graphs {
        check_reduced(g, *s)?;
    }
    let jobs: Vec<(Shading, &PlaneGraph, Vec<usize>)> =
        graphs.iter().flat_map(|(s, g)| spanning_trees(g).into_iter().map(move |t| (*s, g, t))).collect();
    jobs.into_par_iter().map(|(s, g, t)| decompose_graph(g, s, &t)).collect()
}

/// Smallest girth over both shadings and all spanning trees. The witness is
/// the least `(shading, tree)` among the minima.
pub fn diagram_girth(pd: &PDCode, budget: usize) -> Result<(usize, TaitDecomposition), GirthError> {
    if pd.crossing_count() == 0 {
        pd.validate()?;
        return Ok((2, trivial_decomposition()));
    }
    let all = all_decompositions(pd, budget)?;
    let best = all
        .into_iter()
        .min_by(|a, b| (a.girth, a.shading, &a.tree).cmp(&(b.girth, b.shading, &b.tree)))
        .expect("a connected graph has a spanning tree");
    Ok((best.girth, best))
}

fn trivial_decomposition() -> TaitDecomposition {
    let pad = PlaneTree { edges: vec![(0, 1, 0)], rotation: vec![vec![0], vec![0]] };
    TaitDecomposition {
        shading: Shading::Primary,
        tree: Vec::new(),
        dual_tree: Vec::new(),
        blocks: Vec::new(),
        dual_blocks: Vec::new(),
        reduced: pad.clone(),
        reduced_dual: pad,
        girth: 2,
        dual_girth: 2,
        mixed_signs: false,
        graph: PlaneGraph::with_vertices(1),
        sector_of: BTreeMap::new(),
    }
}

/// Path between two vertices of a plane tree as a list of edge indices.
fn tree_path(t: &PlaneTree, from: usize, to: usize) -> Vec<usize> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; t.vertex_count()];
    let mut stack = vec![from];
    let mut seen = vec![false; t.vertex_count()];
    seen[from] = true;
    while let Some(v) = stack.pop() {
        for &e in &t.rotation[v] {
            let (a, b, _) = t.edges[e];
            let w = if a == v { b } else { a };
            if !seen[w] {
                seen[w] = true;
                prev[w] = Some((v, e));
                stack.push(w);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while cur != from {
        let (p, e) = prev[cur].expect("tree is connected");
        path.push(e);
        cur = p;
    }
    path.reverse();
    path
}

/// Reads the tree-pair representation carried by a decomposition.
pub fn rep_from_decomposition(d: &TaitDecomposition) -> Result<Rep, GirthError> {
    if d.girth != d.dual_girth {
        return Err(GirthError::Shape(format!("girth {} on one side, {} on the other", d.girth, d.dual_girth)));
    }
    let g = &d.graph;
    let rim_pair = |e: usize| -> Result<(usize, usize), GirthError> {
        let s0 = d.sector_of[&HalfEdge::new(e, 0)];
        let s1 = d.sector_of[&HalfEdge::new(e, 1)];
        if s0 == s1 {
            return Err(GirthError::Shape(format!("crossing {e} returns to its own sector")));
        }
        Ok((s0.min(s1), s0.max(s1)))
    };
    match d.girth {
        0 | 2 if d.tree.is_empty() && d.dual_tree.is_empty() => Ok(Rep::Girth2(Girth2Rep { p: 0, q: 0 })),
        2 => {
            let p = d.tree.iter().map(|&e| -(g.signs[e] as i64)).sum();
            let q = d.dual_tree.iter().map(|&e| g.signs[e] as i64).sum();
            Ok(Rep::Girth2(Girth2Rep { p, q }))
        }
        3 => {
            let t = &d.reduced;
            // vertex of the reduced tree holding each block
            let tree_vertex = |orig: usize| -> usize {
                // the reduced tree only keeps vertices with tree valence != 2 or dashed lines,
                // numbered in original order
                let mut idx = 0;
                for v in 0..orig {
                    if is_kept(g, &d.tree, v, &d.blocks) {
                        idx += 1;
                    }
                }
                idx
            };
            let xs: Vec<usize> = d.blocks.iter().map(|b| tree_vertex(b.vertex)).collect();
            let paths: Vec<Vec<usize>> = (0..3).map(|i| tree_path(t, xs[0], xs[i])).collect();
            // median of three vertices in a tree: the vertex where the paths from x0 split
            let common = paths[1].iter().zip(&paths[2]).take_while(|(a, b)| a == b).count();
            let median_path = &paths[1][..common];
            let mut m = xs[0];
            for &e in median_path {
                let (a, b, _) = t.edges[e];
                m = if a == m { b } else { a };
            }
            let spokes: Vec<Vec<usize>> = xs.iter().map(|&x| tree_path(t, m, x)).collect();
            let used: usize = spokes.iter().map(|s| s.len()).sum();
            if used != t.edges.len() {
                return Err(GirthError::Shape("reduced tree is not a Y".into()));
            }
            let top: Vec<i64> = spokes.iter().map(|s| s.iter().map(|&e| t.edges[e].2).sum()).collect();
            let mut bottom = [0i64; 3];
            for &e in &d.dual_tree {
                let slot = match rim_pair(e)? {
                    (0, 1) => 0,
                    (1, 2) => 1,
                    (0, 2) => 2,
                    other => return Err(GirthError::Shape(format!("unexpected sector pair {other:?}"))),
                };
                bottom[slot] += g.signs[e] as i64;
            }
            let mut dual_labels: Vec<i64> = d.reduced_dual.edges.iter().map(|e| e.2).filter(|&l| l != 0).collect();
            let mut rims: Vec<i64> = bottom.iter().copied().filter(|&l| l != 0).collect();
            dual_labels.sort_unstable();
            rims.sort_unstable();
            if dual_labels != rims {
                return Err(GirthError::Shape(format!("dual tree labels {dual_labels:?} differ from rims {rims:?}")));
            }
            Ok(Rep::Girth3(Girth3Rep::new([top[0], top[1], top[2]], bottom)))
        }
        g_ => Ok(Rep::General(TreePairRep {
            tree: d.reduced.pad_zero_exterior(),
            dual: d.reduced_dual.pad_zero_exterior(),
            girth: g_,
        })),
    }
}

fn is_kept(g: &PlaneGraph, tree: &[usize], v: usize, blocks: &[Sector]) -> bool {
    let deg = g.rotation[v].iter().filter(|h| tree.binary_search(&h.edge).is_ok()).count();
    deg != 0 && (deg != 2 || blocks.iter().any(|b| b.vertex == v))
}

/// Decompositions of a given girth whose representation satisfies `pred`.
pub fn find_decomposition(
    pd: &PDCode,
    budget: usize,
    girth: usize,
    pred: impl Fn(&Rep) -> bool + Sync,
) -> Result<Option<(TaitDecomposition, Rep)>, GirthError> {
    let all = all_decompositions(pd, budget)?;
    Ok(all
        .into_iter()
        .filter(|d| d.girth == girth)
        .filter_map(|d| rep_from_decomposition(&d).ok().map(|r| (d, r)))
        .find(|(_, r)| pred(r)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::pd_from_rep;
    use crate::repr::Girth1Rep;

    #[test]
    fn theta_graph_trees() {
        let pd = pd_from_rep(&Girth2Rep { p: 2, q: -2 }.into()).unwrap();
        for s in Shading::BOTH {
            let g = tait_graph(&pd, s).unwrap().graph;
            assert_eq!(spanning_trees(&g).len() as f64, spanning_tree_estimate(&g));
        }
    }

    #[test]
    fn double_twist_girth() {
        let pd = pd_from_rep(&Girth2Rep { p: 2, q: -2 }.into()).unwrap();
        let (g, w) = diagram_girth(&pd, TREE_BUDGET).unwrap();
        assert_eq!(g, 2);
        assert_eq!(w.girth, w.dual_girth);
    }

    #[test]
    fn single_twist_girth() {
        let pd = pd_from_rep(&Girth1Rep { p: 3 }.into()).unwrap();
        let (g, _) = diagram_girth(&pd, TREE_BUDGET).unwrap();
        assert_eq!(g, 2);
    }

    #[test]
    fn unreduced_rejected() {
        let pd = pd_from_rep(&Girth2Rep { p: 3, q: 0 }.into()).unwrap();
        assert!(matches!(diagram_girth(&pd, TREE_BUDGET), Err(GirthError::NotReduced(_))));
    }

    #[test]
    fn unknot_is_degenerate_girth_two() {
        let (g, w) = diagram_girth(&PDCode::unknot(), TREE_BUDGET).unwrap();
        assert_eq!(g, 2);
        assert_eq!(rep_from_decomposition(&w).unwrap(), Rep::Girth2(Girth2Rep { p: 0, q: 0 }));
    }

    #[test]
    fn not_spanning() {
        let pd = pd_from_rep(&Girth2Rep { p: 2, q: 2 }.into()).unwrap();
        assert!(matches!(decompose(&pd, Shading::Primary, &[]), Err(GirthError::NotSpanning(_))));
    }
}
