//! 0/1-polytopes given by their vertex families, and their 1-skeletons under
//! the unique-decomposition criterion: `e_A` and `e_B` are joined iff
//! `e_A + e_B` is a sum of two vertices in exactly one way.
//!
//! For stable set polytopes, Birkhoff polytopes of graphs and matroid
//! polytopes the criterion is exactly geometric adjacency. For
//! [`PolytopeKind::Raw`] families it is only the uniqueness predicate.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{GroundSet, SimpleGraph, Subset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolytopeKind {
    StableSet { graph: SimpleGraph },
    /// Maximum stable sets of `graph`, all of cardinality `rank`.
    Birkhoff { graph: SimpleGraph, rank: usize },
    MatroidIndependence,
    MatroidBases,
    Raw,
}

impl PolytopeKind {
    pub fn tag(&self) -> &'static str {
        match self {
            PolytopeKind::StableSet { .. } => "stable-set",
            PolytopeKind::Birkhoff { .. } => "birkhoff",
            PolytopeKind::MatroidIndependence => "matroid-independence",
            PolytopeKind::MatroidBases => "matroid-bases",
            PolytopeKind::Raw => "raw",
        }
    }

    pub fn graph(&self) -> Option<&SimpleGraph> {
        match self {
            PolytopeKind::StableSet { graph } | PolytopeKind::Birkhoff { graph, .. } => Some(graph),
            _ => None,
        }
    }

    /// Kinds for which the unique-decomposition criterion is geometric adjacency.
    pub fn criterion_is_adjacency(&self) -> bool {
        !matches!(self, PolytopeKind::Raw)
    }
}

/// Convex hull of the indicator vectors of a family of distinct subsets.
#[derive(Clone, Debug)]
pub struct ZeroOnePolytope {
    ground: GroundSet,
    vertices: Vec<Subset>,
    index: HashMap<Subset, usize>,
    kind: PolytopeKind,
}

impl PartialEq for ZeroOnePolytope {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.vertices == other.vertices && self.kind == other.kind
    }
}

impl ZeroOnePolytope {
    pub fn new(ground: GroundSet, vertices: Vec<Subset>, kind: PolytopeKind) -> Result<Self> {
        let full = ground.full();
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            if !v.is_subset(full) {
                return Err(Error::contract("vertex is not a subset of the ground set"));
            }
            if index.insert(v, i).is_some() {
                return Err(Error::contract(format!("duplicate vertex {}", ground.format_subset(v))));
            }
        }
        Ok(ZeroOnePolytope {
            ground,
            vertices,
            index,
            kind,
        })
    }

    pub fn raw(ground: GroundSet, vertices: Vec<Subset>) -> Result<Self> {
        Self::new(ground, vertices, PolytopeKind::Raw)
    }

    /// `SSP(G)`: vertices are all stable sets of `g`.
    pub fn stable_set(g: &SimpleGraph) -> Self {
        let vertices = g.enumerate_stable_sets();
        Self::new(g.ground().clone(), vertices, PolytopeKind::StableSet { graph: g.clone() })
            .expect("stable sets are distinct")
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn vertices(&self) -> &[Subset] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> Subset {
        self.vertices[i]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn kind(&self) -> &PolytopeKind {
        &self.kind
    }

    pub fn index_of(&self, s: Subset) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.index.contains_key(&s)
    }

    /// Largest vertex cardinality; the rank `r` in the diameter bounds.
    pub fn max_cardinality(&self) -> usize {
        self.vertices.iter().map(|v| v.len()).max().unwrap_or(0)
    }

    fn require_index(&self, s: Subset) -> Result<usize> {
        self.index_of(s)
            .ok_or_else(|| Error::contract(format!("{} is not a vertex", self.ground.format_subset(s))))
    }
}

/// Vertices of `BP(G)`: the stable sets of maximum cardinality.
pub fn birkhoff_restrict(g: &SimpleGraph) -> ZeroOnePolytope {
    let stable = g.enumerate_stable_sets();
    let rank = stable.last().map_or(0, |s| s.len());
    let vertices: Vec<Subset> = stable.into_iter().filter(|s| s.len() == rank).collect();
    ZeroOnePolytope::new(
        g.ground().clone(),
        vertices,
        PolytopeKind::Birkhoff {
            graph: g.clone(),
            rank,
        },
    )
    .expect("stable sets are distinct")
}

/// Every unordered pair `{c, d}` of vertex indices with `e_C + e_D = e_A + e_B`,
/// including `{a, b}` itself. Pairs are `(min, max)` and sorted.
pub fn decompositions(p: &ZeroOnePolytope, a: usize, b: usize) -> Vec<(usize, usize)> {
    decompositions_bounded(p, a, b, usize::MAX)
}

fn decompositions_bounded(p: &ZeroOnePolytope, a: usize, b: usize, limit: usize) -> Vec<(usize, usize)> {
    assert_ne!(a, b, "decompositions need two distinct vertices");
    let (sa, sb) = (p.vertices[a], p.vertices[b]);
    let inter = sa.intersection(sb);
    let sym = sa.symmetric_difference(sb);
    // C ∩ D = A ∩ B and C ∪ D = A ∪ B, so C is A ∩ B plus a part of A Δ B.
    // Fix the lowest element of A Δ B inside C to visit each pair once.
    let low = sym.first().expect("distinct vertices differ somewhere");
    let rest = sym.without(low);
    let mut out = Vec::new();
    let mut push = |c: Subset| -> bool {
        let d = inter.union(sym.difference(c));
        if let (Some(ci), Some(di)) = (p.index_of(c), p.index_of(d)) {
            out.push((ci.min(di), ci.max(di)));
        }
        out.len() < limit
    };
    if rest.len() < 63 && (1usize << rest.len()) <= p.vertex_count() {
        for s in rest.submasks() {
            if !push(inter.union(s).with(low)) {
                break;
            }
        }
    } else {
        let union = sa.union(sb);
        for &c in &p.vertices {
            if inter.is_subset(c) && c.is_subset(union) && c.contains(low) && !push(c) {
                break;
            }
        }
    }
    out.sort_unstable();
    out
}

/// Unique-decomposition test for the pair `(a, b)`; stops at a second decomposition.
pub fn is_edge_e(p: &ZeroOnePolytope, a: usize, b: usize) -> bool {
    decompositions_bounded(p, a, b, 2).len() == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Provenance {
    #[serde(rename = "condition-E")]
    ConditionE,
    #[serde(rename = "oracle")]
    Oracle,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::ConditionE => "condition-E",
            Provenance::Oracle => "oracle",
        })
    }
}

/// Undirected graph on vertex indices; edges `(i, j)` with `i < j`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Skeleton {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    provenance: Provenance,
}

impl Skeleton {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>, provenance: Provenance) -> Result<Self> {
        let mut norm = Vec::with_capacity(edges.len());
        for (i, j) in edges {
            if i == j || i >= vertex_count || j >= vertex_count {
                return Err(Error::contract(format!("invalid skeleton edge ({i},{j})")));
            }
            norm.push((i.min(j), i.max(j)));
        }
        norm.sort_unstable();
        norm.dedup();
        Ok(Skeleton {
            vertex_count,
            edges: norm,
            provenance,
        })
    }

    /// All-pairs evaluation of `is_edge`, parallel over rows, in deterministic order.
    pub fn from_pair_test<F>(vertex_count: usize, provenance: Provenance, is_edge: F) -> Self
    where
        F: Fn(usize, usize) -> bool + Sync,
    {
        let edges: Vec<(usize, usize)> = (0..vertex_count)
            .into_par_iter()
            .flat_map_iter(|i| {
                let is_edge = &is_edge;
                (i + 1..vertex_count).filter(move |&j| is_edge(i, j)).map(move |j| (i, j))
            })
            .collect();
        Skeleton {
            vertex_count,
            edges,
            provenance,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.binary_search(&(i.min(j), i.max(j))).is_ok()
    }

    /// Same vertex count and edge set, ignoring provenance.
    pub fn same_edges(&self, other: &Skeleton) -> bool {
        self.vertex_count == other.vertex_count && self.edges == other.edges
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    /// BFS distances from `source`; `None` marks unreachable vertices.
    pub fn distances_from(&self, source: usize) -> Vec<Option<usize>> {
        bfs(&self.adjacency(), source)
    }

    /// Largest shortest-path distance, or `None` if the skeleton is disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let adj = self.adjacency();
        let mut best = 0;
        for s in 0..self.vertex_count {
            for d in bfs(&adj, s) {
                best = best.max(d?);
            }
        }
        Some(best)
    }
}

fn bfs(adj: &[Vec<usize>], source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices have a distance");
        for &v in &adj[u] {
            if dist[v].is_none() {
                dist[v] = Some(du + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

pub fn build_skeleton_e(p: &ZeroOnePolytope) -> Skeleton {
    Skeleton::from_pair_test(p.vertex_count(), Provenance::ConditionE, |i, j| is_edge_e(p, i, j))
}

/// Exchange step for a family of equal-size sets: returns `(E, F)` with
/// `E ⊆ a∖b`, `F ⊆ b∖a`, `|E| = |F|`, `i ∈ E`, `(a∖E)∪F` in the family and
/// `e_a + e_{(a∖E)∪F}` uniquely decomposable.
pub fn quasimatroid_exchange(family: &ZeroOnePolytope, a: Subset, b: Subset, i: usize) -> Result<(Subset, Subset)> {
    let ai = family.require_index(a)?;
    family.require_index(b)?;
    if !a.difference(b).contains(i) {
        return Err(Error::contract("the pivot element must lie in a∖b"));
    }
    let k = a.len();
    if family.vertices.iter().any(|v| v.len() != k) {
        return Err(Error::contract("family members must share one cardinality"));
    }
    let mut target = b;
    loop {
        let ti = family.index_of(target).expect("targets are family members");
        let alternative = decompositions(family, ai, ti)
            .into_iter()
            .find(|&pair| pair != (ai.min(ti), ai.max(ti)));
        let Some((m, n)) = alternative else {
            return Ok((a.difference(target), target.difference(a)));
        };
        // i occurs once in a ⊎ target, so exactly one of the pair holds it;
        // continue with the one that does not. |a ∩ target| strictly grows.
        let (sm, sn) = (family.vertex(m), family.vertex(n));
        target = if sm.contains(i) { sn } else { sm };
    }
}

/// Walk from `a` to `b` along criterion edges of an equal-cardinality family
/// (e.g. `BP(G)` or matroid bases), each step growing the overlap with `b`.
pub fn bp_path(p: &ZeroOnePolytope, a: Subset, b: Subset) -> Result<Vec<Subset>> {
    p.require_index(a)?;
    p.require_index(b)?;
    let mut path = vec![a];
    let mut cur = a;
    while cur != b {
        let i = cur.difference(b).first().expect("equal sizes and cur != b");
        let (e, f) = quasimatroid_exchange(p, cur, b, i)?;
        cur = cur.difference(e).union(f);
        path.push(cur);
    }
    Ok(path)
}

fn require_downward_closed_kind(p: &ZeroOnePolytope) -> Result<()> {
    match p.kind {
        PolytopeKind::StableSet { .. } | PolytopeKind::MatroidIndependence => Ok(()),
        _ => Err(Error::contract(format!(
            "operation needs a stable-set or matroid-independence polytope, got {}",
            p.kind.tag()
        ))),
    }
}

/// A vertex `C` with `{a, C}` a criterion edge, `a∩b ⊆ C ⊆ a∪b` and `C ∩ (b∖a) ≠ ∅`.
pub fn base_change(p: &ZeroOnePolytope, a: Subset, b: Subset) -> Result<Subset> {
    require_downward_closed_kind(p)?;
    let ai = p.require_index(a)?;
    p.require_index(b)?;
    if b.difference(a).is_empty() {
        return Err(Error::contract("base change needs b∖a to be nonempty"));
    }
    let mut cur = b;
    loop {
        let ci = p.index_of(cur).expect("candidates are vertices");
        let alternative = decompositions(p, ai, ci)
            .into_iter()
            .find(|&pair| pair != (ai.min(ci), ai.max(ci)));
        let Some((m, n)) = alternative else {
            return Ok(cur);
        };
        let (sm, sn) = (p.vertex(m), p.vertex(n));
        if let Some(big) = [sm, sn].into_iter().find(|s| a.is_subset(*s)) {
            // big ⊋ a; adding one of its new elements keeps the set stable.
            let x = big.difference(a).first().expect("big strictly contains a");
            return Ok(a.with(x));
        }
        let new_side = cur.difference(a);
        let old_side = a.difference(cur);
        cur = [sm, sn]
            .into_iter()
            .find(|s| !s.intersection(new_side).is_empty() && !s.intersection(old_side).is_empty())
            .expect("one side of an alternative decomposition meets both a∖cur and cur∖a");
    }
}

/// Criterion-edge path from `a` to `b` in `SSP(G)` (or a matroid independence
/// polytope) of length at most the largest vertex cardinality.
pub fn ssp_path(p: &ZeroOnePolytope, a: Subset, b: Subset) -> Result<Vec<Subset>> {
    require_downward_closed_kind(p)?;
    p.require_index(a)?;
    p.require_index(b)?;
    let r = p.max_cardinality();
    let mut path = vec![a];
    if a == b {
        return Ok(path);
    }
    if a.len() + b.len() <= r {
        let mut cur = a;
        for x in a.iter() {
            cur.remove(x);
            path.push(cur);
        }
        for x in b.iter() {
            cur.insert(x);
            path.push(cur);
        }
        return Ok(path);
    }
    let mut cur = a;
    while !b.is_subset(cur) {
        cur = base_change(p, cur, b)?;
        path.push(cur);
    }
    for x in cur.difference(b).iter() {
        cur.remove(x);
        path.push(cur);
    }
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_bell_graph, build_complete_graph, build_empty_graph, build_rook_graph};
    use crate::graphs::Label;

    fn bell3() -> ZeroOnePolytope {
        ZeroOnePolytope::stable_set(&build_bell_graph(3).unwrap())
    }

    fn arcs(p: &ZeroOnePolytope, arcs: &[(i64, i64)]) -> Subset {
        p.ground().subset(arcs.iter().map(|&a| Label::from(a))).unwrap()
    }

    /// Brute-force decompositions over all member pairs.
    fn brute_decompositions(p: &ZeroOnePolytope, a: usize, b: usize) -> Vec<(usize, usize)> {
        let target = |s: Subset| p.ground().indicator(s);
        let sum = |x: Subset, y: Subset| {
            let (ex, ey) = (target(x), target(y));
            ex.entries().iter().zip(ey.entries()).map(|(u, v)| u + v).collect::<Vec<_>>()
        };
        let goal = sum(p.vertex(a), p.vertex(b));
        let mut out = Vec::new();
        for c in 0..p.vertex_count() {
            for d in c + 1..p.vertex_count() {
                if sum(p.vertex(c), p.vertex(d)) == goal {
                    out.push((c, d));
                }
            }
        }
        out
    }

    #[test]
    fn bell3_decompositions_match_brute_force() {
        let p = bell3();
        for a in 0..p.vertex_count() {
            for b in 0..p.vertex_count() {
                if a != b {
                    assert_eq!(decompositions(&p, a, b), brute_decompositions(&p, a, b));
                }
            }
        }
        let a = p.index_of(arcs(&p, &[(1, 2)])).unwrap();
        let b = p.index_of(arcs(&p, &[(2, 3)])).unwrap();
        assert_eq!(decompositions(&p, a, b).len(), 2);
        assert!(!is_edge_e(&p, a, b));
        let z = p.index_of(Subset::EMPTY).unwrap();
        assert_eq!(decompositions(&p, z, a), vec![(z.min(a), z.max(a))]);
        let c = p.index_of(arcs(&p, &[(1, 3)])).unwrap();
        let d = p.index_of(arcs(&p, &[(1, 2), (2, 3)])).unwrap();
        assert!(is_edge_e(&p, c, d));
    }

    #[test]
    fn skeleton_examples() {
        let p = bell3();
        let s = build_skeleton_e(&p);
        assert_eq!(s.edge_count(), 8);
        let z = p.index_of(Subset::EMPTY).unwrap();
        let top = p.index_of(arcs(&p, &[(1, 2), (2, 3)])).unwrap();
        assert!(!s.has_edge(z, top));
        assert_eq!(s.diameter(), Some(2));

        let cube = build_skeleton_e(&ZeroOnePolytope::stable_set(&build_empty_graph(3).unwrap()));
        assert_eq!(cube.edge_count(), 12);
        assert_eq!(cube.diameter(), Some(3));

        let simplex = build_skeleton_e(&ZeroOnePolytope::stable_set(&build_complete_graph(3).unwrap()));
        assert_eq!(simplex.edge_count(), 6);
    }

    #[test]
    fn diameter_edge_cases() {
        let single = Skeleton::new(1, vec![], Provenance::ConditionE).unwrap();
        assert_eq!(single.diameter(), Some(0));
        let split = Skeleton::new(2, vec![], Provenance::ConditionE).unwrap();
        assert_eq!(split.diameter(), None);
        assert!(Skeleton::new(2, vec![(1, 1)], Provenance::Oracle).is_err());
    }

    #[test]
    fn birkhoff_examples() {
        let rook = birkhoff_restrict(&build_rook_graph(3).unwrap());
        assert_eq!(rook.vertex_count(), 6);
        assert!(matches!(rook.kind(), PolytopeKind::Birkhoff { rank: 3, .. }));
        let k4 = birkhoff_restrict(&build_complete_graph(4).unwrap());
        assert_eq!(k4.vertex_count(), 4);
        let path = SimpleGraph::from_label_edges(GroundSet::range(3), [(1, 2), (2, 3)]).unwrap();
        let bp = birkhoff_restrict(&path);
        assert_eq!(bp.vertices(), &[Subset::from_indices([0, 2])]);
    }

    fn two_subsets(n: usize) -> ZeroOnePolytope {
        let vertices: Vec<Subset> = Subset::full(n).submasks().filter(|s| s.len() == 2).collect();
        ZeroOnePolytope::raw(GroundSet::range(n), vertices).unwrap()
    }

    #[test]
    fn quasimatroid_exchange_contract() {
        let fam = two_subsets(4);
        let a = Subset::from_indices([0, 1]);
        let b = Subset::from_indices([2, 3]);
        let (e, f) = quasimatroid_exchange(&fam, a, b, 0).unwrap();
        assert_eq!(e.len(), f.len());
        assert!(e.contains(0) && e.is_subset(a.difference(b)) && f.is_subset(b.difference(a)));
        let next = a.difference(e).union(f);
        assert!(fam.contains(next));
        assert!(is_edge_e(&fam, fam.index_of(a).unwrap(), fam.index_of(next).unwrap()));

        // |a ∩ b| = k - 1: the direct exchange
        let c = Subset::from_indices([0, 2]);
        assert_eq!(
            quasimatroid_exchange(&fam, a, c, 1).unwrap(),
            (Subset::from_indices([1]), Subset::from_indices([2]))
        );
        assert!(quasimatroid_exchange(&fam, a, a, 0).is_err());
    }

    #[test]
    fn bp_paths() {
        let rook = birkhoff_restrict(&build_rook_graph(3).unwrap());
        let g = rook.ground();
        let id = g.subset([(1, 1), (2, 2), (3, 3)]).unwrap();
        let cyc = g.subset([(1, 2), (2, 3), (3, 1)]).unwrap();
        let path = bp_path(&rook, id, cyc).unwrap();
        assert!(path.len() - 1 <= 3);
        for w in path.windows(2) {
            assert!(is_edge_e(&rook, rook.index_of(w[0]).unwrap(), rook.index_of(w[1]).unwrap()));
        }
        assert_eq!(bp_path(&rook, id, id).unwrap(), vec![id]);
    }

    #[test]
    fn base_change_examples() {
        let p = bell3();
        let a = arcs(&p, &[(1, 2)]);
        let b = arcs(&p, &[(2, 3)]);
        assert_eq!(base_change(&p, a, b).unwrap(), arcs(&p, &[(1, 2), (2, 3)]));
        let c = arcs(&p, &[(1, 3)]);
        // ({(1,3)}, {(1,2),(2,3)}) is already an edge
        assert_eq!(base_change(&p, c, arcs(&p, &[(1, 2), (2, 3)])).unwrap(), arcs(&p, &[(1, 2), (2, 3)]));
        let from_empty = base_change(&p, Subset::EMPTY, arcs(&p, &[(1, 2), (2, 3)])).unwrap();
        assert_eq!(from_empty.len(), 1);
        assert!(base_change(&p, b, b).is_err());
    }

    #[test]
    fn ssp_paths() {
        let path_graph = SimpleGraph::from_label_edges(GroundSet::range(3), [(1, 2), (2, 3)]).unwrap();
        let p = ZeroOnePolytope::stable_set(&path_graph);
        let path = ssp_path(&p, Subset::singleton(0), Subset::singleton(2)).unwrap();
        assert!(path.len() - 1 <= 2);
        let cube = ZeroOnePolytope::stable_set(&build_empty_graph(3).unwrap());
        let path = ssp_path(&cube, Subset::EMPTY, Subset::full(3)).unwrap();
        assert_eq!(path.len() - 1, 3);
        assert_eq!(ssp_path(&cube, Subset::EMPTY, Subset::EMPTY).unwrap().len(), 1);
    }
}
