//! Graph constructions whose stable set polytopes are the named families
//! (cube, chain polytopes, Bell, nonnesting, noncrossing, rook placements),
//! plus the set-partition encoding of arc sets.

use std::fmt;

use crate::error::{Error, Result};
use crate::graphs::{GroundSet, Label, SimpleGraph, Subset};

/// A set partition of `{1..n}`; blocks sorted internally and by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::contract("empty block in set partition"));
            }
            for &x in b {
                if x == 0 || x > n || seen[x] {
                    return Err(Error::contract(format!("element {x} is out of range or repeated")));
                }
                seen[x] = true;
            }
        }
        if seen[1..].iter().any(|s| !s) {
            return Err(Error::contract("blocks do not cover 1..n"));
        }
        blocks.sort();
        Ok(SetPartition { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Arcs between consecutive elements of each block.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut arcs: Vec<(usize, usize)> = self
            .blocks
            .iter()
            .flat_map(|b| b.windows(2).map(|w| (w[0], w[1])))
            .collect();
        arcs.sort_unstable();
        arcs
    }

    pub fn is_noncrossing(&self) -> bool {
        let arcs = self.arcs();
        !arcs
            .iter()
            .any(|&(i, j)| arcs.iter().any(|&(k, l)| i < k && k < j && j < l))
    }

    pub fn is_nonnesting(&self) -> bool {
        let arcs = self.arcs();
        !arcs
            .iter()
            .any(|&(i, j)| arcs.iter().any(|&(k, l)| i < k && l < j))
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All set partitions of `{1..n}` via restricted growth strings.
pub fn all_set_partitions(n: usize) -> Vec<SetPartition> {
    fn rec(n: usize, rgs: &mut Vec<usize>, max: usize, out: &mut Vec<SetPartition>) {
        if rgs.len() == n {
            let mut blocks = vec![Vec::new(); max];
            for (x, &b) in rgs.iter().enumerate() {
                blocks[b].push(x + 1);
            }
            out.push(SetPartition::new(n, blocks).expect("restricted growth string is a partition"));
            return;
        }
        for b in 0..=max {
            rgs.push(b);
            rec(n, rgs, max.max(b + 1), out);
            rgs.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::with_capacity(n), 0, &mut out);
    out
}

/// Strict partial order on a ground set, stored as per-element up-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    elements: GroundSet,
    above: Vec<Subset>,
}

impl Poset {
    /// Builds the transitive closure of `pairs` (each `(x, y)` meaning `x < y`).
    /// Fails if the closure is not irreflexive.
    pub fn from_relations<L: Into<Label>, I: IntoIterator<Item = (L, L)>>(elements: GroundSet, pairs: I) -> Result<Self> {
        let n = elements.len();
        let mut above = vec![Subset::EMPTY; n];
        for (x, y) in pairs {
            let (x, y) = (elements.index_of(&x.into())?, elements.index_of(&y.into())?);
            above[x].insert(y);
        }
        // Warshall over bitsets
        for k in 0..n {
            for i in 0..n {
                if above[i].contains(k) {
                    above[i] = above[i].union(above[k]);
                }
            }
        }
        if let Some(x) = (0..n).find(|&x| above[x].contains(x)) {
            return Err(Error::contract(format!(
                "relation has a cycle through {}",
                elements.label(x)
            )));
        }
        Ok(Poset { elements, above })
    }

    pub fn elements(&self) -> &GroundSet {
        &self.elements
    }

    pub fn less_than(&self, x: usize, y: usize) -> bool {
        self.above[x].contains(y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.less_than(x, y) || self.less_than(y, x)
    }

    /// Strict order as position pairs, lexicographic.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        (0..self.elements.len())
            .flat_map(|x| self.above[x].iter().map(move |y| (x, y)))
            .collect()
    }

    /// Maximal chains by extending from minimal elements through cover relations.
    pub fn maximal_chains(&self) -> Vec<Subset> {
        let n = self.elements.len();
        let covers = |x: usize| -> Vec<usize> {
            self.above[x]
                .iter()
                .filter(|&y| !self.above[x].iter().any(|z| self.above[z].contains(y)))
                .collect()
        };
        let minimal: Vec<usize> = (0..n).filter(|&y| !(0..n).any(|x| self.above[x].contains(y))).collect();
        let mut out = Vec::new();
        let mut stack: Vec<(usize, Subset)> = minimal.into_iter().map(|m| (m, Subset::singleton(m))).collect();
        while let Some((top, chain)) = stack.pop() {
            let up = covers(top);
            if up.is_empty() {
                out.push(chain);
            }
            for y in up {
                stack.push((y, chain.with(y)));
            }
        }
        out.sort();
        out
    }
}

/// `n` isolated vertices labelled `1..n`.
pub fn build_empty_graph(n: usize) -> Result<SimpleGraph> {
    SimpleGraph::from_index_edges(checked_range(n)?, [])
}

pub fn build_complete_graph(n: usize) -> Result<SimpleGraph> {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    SimpleGraph::from_index_edges(checked_range(n)?, edges)
}

fn checked_range(n: usize) -> Result<GroundSet> {
    if n > 64 {
        return Err(Error::GroundTooLarge(n));
    }
    Ok(GroundSet::range(n))
}

/// Symmetrised relation graph; loops are dropped.
pub fn build_relation_graph(ground: GroundSet, pairs: &[(Label, Label)]) -> Result<SimpleGraph> {
    SimpleGraph::from_label_edges(ground, pairs.iter().cloned())
}

pub fn build_comparability_graph(p: &Poset) -> SimpleGraph {
    SimpleGraph::from_index_edges(p.elements.clone(), p.relations()).expect("relations index the poset")
}

/// Labels `(i, j)` with `1 <= i < j <= n`, lexicographic.
pub fn arc_ground(n: usize) -> Result<GroundSet> {
    GroundSet::new(arc_pairs(n).into_iter().map(Label::from))
}

fn arc_pairs(n: usize) -> Vec<(i64, i64)> {
    let n = n as i64;
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

fn pair_graph(n: usize, adjacent: impl Fn((i64, i64), (i64, i64)) -> bool) -> Result<SimpleGraph> {
    let pairs = arc_pairs(n);
    let ground = arc_ground(n)?;
    let mut edges = Vec::new();
    for (u, &p) in pairs.iter().enumerate() {
        for (v, &q) in pairs.iter().enumerate().skip(u + 1) {
            if adjacent(p, q) || adjacent(q, p) {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::from_index_edges(ground, edges)
}

fn same_row_or_column((i, j): (i64, i64), (k, l): (i64, i64)) -> bool {
    (i == k && j != l) || (i != k && j == l)
}

/// Graph whose stable sets are the set partitions of `[n]`.
pub fn build_bell_graph(n: usize) -> Result<SimpleGraph> {
    pair_graph(n, same_row_or_column)
}

/// Root poset of type A on the arcs of `[n]`: `(i,j) <= (k,l)` iff `k <= i < j <= l`.
pub fn root_poset(n: usize) -> Result<Poset> {
    let pairs = arc_pairs(n);
    let mut rel = Vec::new();
    for &(i, j) in &pairs {
        for &(k, l) in &pairs {
            if (i, j) != (k, l) && k <= i && j <= l {
                rel.push((Label::from((i, j)), Label::from((k, l))));
            }
        }
    }
    Poset::from_relations(arc_ground(n)?, rel)
}

/// Comparability graph of the type-A root poset; stable sets are nonnesting partitions.
pub fn build_nonnesting_graph(n: usize) -> Result<SimpleGraph> {
    Ok(build_comparability_graph(&root_poset(n)?))
}

/// Stable sets are the noncrossing partitions.
pub fn build_noncrossing_graph(n: usize) -> Result<SimpleGraph> {
    pair_graph(n, |p, q| {
        let ((i, j), (k, l)) = (p, q);
        same_row_or_column(p, q) || (i < k && k < j && j < l)
    })
}

/// Rook graph on the `n x n` board: cells in a common row or column are adjacent.
pub fn build_rook_graph(n: usize) -> Result<SimpleGraph> {
    let m = n as i64;
    let cells: Vec<(i64, i64)> = (1..=m).flat_map(|i| (1..=m).map(move |j| (i, j))).collect();
    let ground = GroundSet::new(cells.iter().copied().map(Label::from))?;
    let mut edges = Vec::new();
    for (u, &(i, j)) in cells.iter().enumerate() {
        for (v, &(k, l)) in cells.iter().enumerate().skip(u + 1) {
            if i == k || j == l {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::from_index_edges(ground, edges)
}

/// Arcs `(i, j)` named by the pair labels of `a`.
pub fn subset_arcs(ground: &GroundSet, a: Subset) -> Result<Vec<(usize, usize)>> {
    a.iter()
        .map(|x| match *ground.label(x) {
            Label::Pair(i, j) if i >= 1 && i < j => Ok((i as usize, j as usize)),
            ref other => Err(Error::contract(format!("{other} is not an arc label"))),
        })
        .collect()
}

/// Joins `i` and `j` in one block for every arc; untouched elements stay singletons.
/// The arcs must use each left end and each right end at most once.
pub fn arcs_to_partition(n: usize, arcs: &[(usize, usize)]) -> Result<SetPartition> {
    let mut next = vec![None; n + 1];
    let mut has_prev = vec![false; n + 1];
    for &(i, j) in arcs {
        if !(1 <= i && i < j && j <= n) {
            return Err(Error::contract(format!("arc ({i},{j}) is not in 1..{n}")));
        }
        if next[i].is_some() || has_prev[j] {
            return Err(Error::contract(format!(
                "arc ({i},{j}) repeats a row or column; the arc set is not stable"
            )));
        }
        next[i] = Some(j);
        has_prev[j] = true;
    }
    let mut blocks = Vec::new();
    for start in (1..=n).filter(|&x| !has_prev[x]) {
        let mut block = vec![start];
        let mut cur = start;
        while let Some(j) = next[cur] {
            block.push(j);
            cur = j;
        }
        blocks.push(block);
    }
    SetPartition::new(n, blocks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(n: usize, blocks: &[&[usize]]) -> SetPartition {
        SetPartition::new(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    #[test]
    fn empty_graph_counts() {
        assert_eq!(build_empty_graph(0).unwrap().vertex_count(), 0);
        assert_eq!(build_empty_graph(3).unwrap().enumerate_stable_sets().len(), 8);
    }

    #[test]
    fn relation_graph_examples() {
        let g = build_relation_graph(
            GroundSet::range(3),
            &[(Label::Int(1), Label::Int(2)), (Label::Int(2), Label::Int(3))],
        )
        .unwrap();
        assert_eq!(g.enumerate_stable_sets().len(), 5);
        let loops = build_relation_graph(GroundSet::range(3), &[(Label::Int(1), Label::Int(1))]).unwrap();
        assert_eq!(loops.edge_count(), 0);
        assert!(build_relation_graph(GroundSet::range(3), &[(Label::Int(1), Label::Int(9))]).is_err());
    }

    #[test]
    fn comparability_examples() {
        let chain = Poset::from_relations(GroundSet::new(["a", "b"]).unwrap(), [("a", "b")]).unwrap();
        let g = build_comparability_graph(&chain);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.enumerate_stable_sets().len(), 3);
        let anti = Poset::from_relations(GroundSet::new(["a", "b"]).unwrap(), Vec::<(&str, &str)>::new()).unwrap();
        assert_eq!(build_comparability_graph(&anti).edge_count(), 0);
        let cyc = Poset::from_relations(GroundSet::new(["a", "b"]).unwrap(), [("a", "b"), ("b", "a")]);
        assert!(cyc.is_err());
    }

    #[test]
    fn example_graph_for_three() {
        let g = build_bell_graph(3).unwrap();
        let edges: Vec<String> = g
            .edges()
            .into_iter()
            .map(|(u, v)| format!("{}-{}", g.ground().label(u), g.ground().label(v)))
            .collect();
        assert_eq!(edges, ["(1,2)-(1,3)", "(1,3)-(2,3)"]);
        assert_eq!(g.enumerate_stable_sets().len(), 5);
        assert_eq!(build_nonnesting_graph(3).unwrap(), g);
        assert_eq!(build_noncrossing_graph(3).unwrap(), g);
    }

    #[test]
    fn pair_graph_edges() {
        let nn = build_nonnesting_graph(4).unwrap();
        let i14 = nn.ground().index_of(&Label::Pair(1, 4)).unwrap();
        let i23 = nn.ground().index_of(&Label::Pair(2, 3)).unwrap();
        assert!(nn.has_edge(i14, i23));
        let nc = build_noncrossing_graph(4).unwrap();
        let i13 = nc.ground().index_of(&Label::Pair(1, 3)).unwrap();
        let i24 = nc.ground().index_of(&Label::Pair(2, 4)).unwrap();
        assert!(nc.has_edge(i13, i24));
        assert!(!build_bell_graph(4).unwrap().has_edge(i13, i24));
    }

    #[test]
    fn family_counts() {
        assert_eq!(build_bell_graph(4).unwrap().enumerate_stable_sets().len(), 15);
        assert_eq!(build_nonnesting_graph(5).unwrap().enumerate_stable_sets().len(), 42);
        assert_eq!(build_noncrossing_graph(6).unwrap().enumerate_stable_sets().len(), 132);
    }

    #[test]
    fn rook_graph_examples() {
        let g = build_rook_graph(2).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
        assert_eq!(g.enumerate_stable_sets().len(), 7);
        let g3 = build_rook_graph(3).unwrap();
        assert_eq!(g3.enumerate_stable_sets().iter().filter(|s| s.len() == 3).count(), 6);
        assert_eq!(build_rook_graph(1).unwrap().enumerate_stable_sets().len(), 2);
    }

    #[test]
    fn arcs_to_partition_examples() {
        assert_eq!(arcs_to_partition(3, &[(1, 2), (2, 3)]).unwrap(), part(3, &[&[1, 2, 3]]));
        assert_eq!(arcs_to_partition(3, &[]).unwrap(), part(3, &[&[1], &[2], &[3]]));
        assert_eq!(arcs_to_partition(4, &[(1, 2), (3, 4)]).unwrap(), part(4, &[&[1, 2], &[3, 4]]));
        assert!(arcs_to_partition(3, &[(1, 2), (1, 3)]).is_err());
    }

    #[test]
    fn crossing_and_nesting() {
        let crossing = part(4, &[&[1, 3], &[2, 4]]);
        assert!(!crossing.is_noncrossing());
        assert!(crossing.is_nonnesting());
        let nesting = part(4, &[&[1, 4], &[2, 3]]);
        assert!(nesting.is_noncrossing());
        assert!(!nesting.is_nonnesting());
        let one = part(3, &[&[1, 2, 3]]);
        assert!(one.is_noncrossing() && one.is_nonnesting());
    }

    #[test]
    fn root_poset_chains_are_cliques() {
        let p = root_poset(5).unwrap();
        let g = build_comparability_graph(&p);
        assert_eq!(g.enumerate_max_cliques(), p.maximal_chains());
    }

    #[test]
    fn set_partition_enumeration() {
        let counts: Vec<usize> = (0..=6).map(|n| all_set_partitions(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 15, 52, 203]);
    }
}
