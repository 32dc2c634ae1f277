//! Ground sets, subsets as bitsets, and simple graphs over them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QVector;

/// Element label: an integer, an integer pair such as the arc `(i, j)`, or a name.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Pair(i64, i64),
    Name(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Pair(i, j) => write!(f, "({i},{j})"),
            Label::Name(s) => write!(f, "{s}"),
        }
    }
}

impl From<i64> for Label {
    fn from(i: i64) -> Self {
        Label::Int(i)
    }
}

impl From<(i64, i64)> for Label {
    fn from((i, j): (i64, i64)) -> Self {
        Label::Pair(i, j)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::Name(s.to_string())
    }
}

/// Ordered label universe; position `i` is coordinate `i` of every vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<Label>,
    index_of: HashMap<Label, usize>,
}

impl GroundSet {
    pub fn new<L: Into<Label>, I: IntoIterator<Item = L>>(labels: I) -> Result<Self> {
        let labels: Vec<Label> = labels.into_iter().map(Into::into).collect();
        if labels.len() > 64 {
            return Err(Error::GroundTooLarge(labels.len()));
        }
        let mut index_of = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index_of.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet { labels, index_of })
    }

    /// Labels `1..=n`.
    pub fn range(n: usize) -> Self {
        GroundSet::new((1..=n as i64).map(Label::Int)).expect("distinct integer labels")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i]
    }

    pub fn index_of(&self, l: &Label) -> Result<usize> {
        self.index_of.get(l).copied().ok_or_else(|| Error::UnknownLabel(l.clone()))
    }

    pub fn subset<L: Into<Label>, I: IntoIterator<Item = L>>(&self, labels: I) -> Result<Subset> {
        let mut s = Subset::EMPTY;
        for l in labels {
            s.insert(self.index_of(&l.into())?);
        }
        Ok(s)
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn labels_of(&self, s: Subset) -> Vec<Label> {
        s.iter().map(|i| self.labels[i].clone()).collect()
    }

    /// Indicator vector `e_A` in the coordinate order of this ground set.
    pub fn indicator(&self, s: Subset) -> QVector {
        QVector::from_ints((0..self.len()).map(|i| i64::from(s.contains(i))))
    }

    pub fn format_subset(&self, s: Subset) -> String {
        let parts: Vec<String> = s.iter().map(|i| self.labels[i].to_string()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// A subset of a ground set of at most 64 elements; doubles as the
/// indicator vector `e_A`.
///
/// Ordering is by cardinality, then lexicographic on the sorted positions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub fn full(n: usize) -> Self {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = Subset::EMPTY;
        for i in it {
            s.insert(i);
        }
        s
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    pub fn union(self, o: Subset) -> Self {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Subset) -> Self {
        Subset(self.0 & o.0)
    }

    pub fn difference(self, o: Subset) -> Self {
        Subset(self.0 & !o.0)
    }

    pub fn symmetric_difference(self, o: Subset) -> Self {
        Subset(self.0 ^ o.0)
    }

    pub fn is_subset(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    /// All subsets of `self`, starting from the empty set.
    pub fn submasks(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(Subset(cur))
        })
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct SubsetIter(u64);

impl Iterator for SubsetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Loopless undirected graph over a ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    ground: GroundSet,
    adj: Vec<Subset>,
}

impl SimpleGraph {
    /// Builds a graph from position pairs. Loops are discarded.
    pub fn from_index_edges<I: IntoIterator<Item = (usize, usize)>>(ground: GroundSet, edges: I) -> Result<Self> {
        let n = ground.len();
        let mut adj = vec![Subset::EMPTY; n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::contract(format!("edge ({u},{v}) outside a ground set of size {n}")));
            }
            if u != v {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
        Ok(SimpleGraph { ground, adj })
    }

    pub fn from_label_edges<L: Into<Label>, I: IntoIterator<Item = (L, L)>>(ground: GroundSet, edges: I) -> Result<Self> {
        let mut idx = Vec::new();
        for (a, b) in edges {
            idx.push((ground.index_of(&a.into())?, ground.index_of(&b.into())?));
        }
        Self::from_index_edges(ground, idx)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn vertex_count(&self) -> usize {
        self.ground.len()
    }

    pub fn neighbors(&self, v: usize) -> Subset {
        self.adj[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    /// Edges as position pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count() {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn is_stable(&self, a: Subset) -> bool {
        a.iter().all(|v| self.adj[v].intersection(a).is_empty())
    }

    pub fn is_clique(&self, a: Subset) -> bool {
        a.iter().all(|v| a.without(v).is_subset(self.adj[v]))
    }

    /// Every stable set exactly once, in [`Subset`] order.
    pub fn enumerate_stable_sets(&self) -> Vec<Subset> {
        let mut out = Vec::new();
        self.stable_rec(0, Subset::EMPTY, self.ground.full(), &mut out);
        out.sort();
        out
    }

    fn stable_rec(&self, v: usize, current: Subset, allowed: Subset, out: &mut Vec<Subset>) {
        if v == self.vertex_count() {
            out.push(current);
            return;
        }
        self.stable_rec(v + 1, current, allowed, out);
        if allowed.contains(v) {
            self.stable_rec(v + 1, current.with(v), allowed.difference(self.adj[v]), out);
        }
    }

    /// Size of a largest stable set.
    pub fn stability_number(&self) -> usize {
        self.enumerate_stable_sets().last().map_or(0, |s| s.len())
    }

    /// Inclusion-maximal cliques (Bron-Kerbosch with pivoting), in [`Subset`] order.
    pub fn enumerate_max_cliques(&self) -> Vec<Subset> {
        let mut out = Vec::new();
        if self.vertex_count() > 0 {
            self.bron_kerbosch(Subset::EMPTY, self.ground.full(), Subset::EMPTY, &mut out);
        }
        out.sort();
        out
    }

    fn bron_kerbosch(&self, r: Subset, p: Subset, x: Subset, out: &mut Vec<Subset>) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r);
            }
            return;
        }
        let pivot = p
            .union(x)
            .iter()
            .max_by_key(|&u| p.intersection(self.adj[u]).len())
            .expect("p is nonempty");
        let mut p = p;
        let mut x = x;
        for v in p.difference(self.adj[pivot]).iter() {
            let nv = self.adj[v];
            self.bron_kerbosch(r.with(v), p.intersection(nv), x.intersection(nv), out);
            p.remove(v);
            x.insert(v);
        }
    }

    /// Connected components as vertex subsets, ordered by smallest member.
    pub fn components(&self) -> Vec<Subset> {
        let mut seen = Subset::EMPTY;
        let mut out = Vec::new();
        for v in 0..self.vertex_count() {
            if seen.contains(v) {
                continue;
            }
            let mut comp = Subset::singleton(v);
            let mut frontier = comp;
            while let Some(u) = frontier.first() {
                frontier.remove(u);
                let fresh = self.adj[u].difference(comp);
                comp = comp.union(fresh);
                frontier = frontier.union(fresh);
            }
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    /// True iff every connected component is a complete graph.
    pub fn is_union_of_complete_graphs(&self) -> bool {
        self.components().into_iter().all(|c| self.is_clique(c))
    }

    /// Whether `a` is stable, after checking that it lives on this ground set.
    pub fn check_stable(&self, a: Subset) -> Result<bool> {
        if !a.is_subset(self.ground.full()) {
            return Err(Error::contract("subset is not over the graph's ground set"));
        }
        Ok(self.is_stable(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> SimpleGraph {
        SimpleGraph::from_label_edges(GroundSet::range(3), [(1, 2), (2, 3)]).unwrap()
    }

    fn complete(n: usize) -> SimpleGraph {
        let mut e = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                e.push((u, v));
            }
        }
        SimpleGraph::from_index_edges(GroundSet::range(n), e).unwrap()
    }

    #[test]
    fn stability_checks() {
        let g = path3();
        let s = |v: &[i64]| g.ground().subset(v.iter().copied()).unwrap();
        assert!(g.is_stable(s(&[1, 3])));
        assert!(!g.is_stable(s(&[1, 2])));
        assert!(g.is_stable(Subset::EMPTY));
        assert!(g.check_stable(Subset::singleton(5)).is_err());
    }

    #[test]
    fn stable_sets_of_path() {
        let g = path3();
        let names: Vec<String> = g
            .enumerate_stable_sets()
            .into_iter()
            .map(|s| g.ground().format_subset(s))
            .collect();
        assert_eq!(names, ["{}", "{1}", "{2}", "{3}", "{1,3}"]);
    }

    #[test]
    fn stable_sets_of_empty_graph() {
        let g = SimpleGraph::from_index_edges(GroundSet::range(4), []).unwrap();
        assert_eq!(g.enumerate_stable_sets().len(), 16);
    }

    #[test]
    fn cliques() {
        let g = path3();
        let c: Vec<String> = g.enumerate_max_cliques().into_iter().map(|s| g.ground().format_subset(s)).collect();
        assert_eq!(c, ["{1,2}", "{2,3}"]);
        assert_eq!(complete(4).enumerate_max_cliques(), vec![Subset::full(4)]);
        let empty = SimpleGraph::from_index_edges(GroundSet::range(2), []).unwrap();
        assert_eq!(empty.enumerate_max_cliques().len(), 2);
    }

    #[test]
    fn complete_unions() {
        // K2 + K3 on 5 vertices
        let g = SimpleGraph::from_index_edges(GroundSet::range(5), [(0, 1), (2, 3), (3, 4), (2, 4)]).unwrap();
        assert!(g.is_union_of_complete_graphs());
        assert!(!path3().is_union_of_complete_graphs());
        assert!(SimpleGraph::from_index_edges(GroundSet::range(1), []).unwrap().is_union_of_complete_graphs());
    }

    #[test]
    fn loops_are_dropped_and_labels_checked() {
        let g = SimpleGraph::from_label_edges(GroundSet::range(2), [(1, 1)]).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert!(SimpleGraph::from_label_edges(GroundSet::range(2), [(1, 7)]).is_err());
        assert!(matches!(GroundSet::new([1, 1]), Err(Error::DuplicateLabel(_))));
    }

    #[test]
    fn subset_order_and_submasks() {
        let a = Subset::from_indices([0, 2]);
        let b = Subset::from_indices([1]);
        assert!(b < a);
        assert!(Subset::from_indices([0, 2]) < Subset::from_indices([1, 2]));
        assert_eq!(a.submasks().count(), 4);
        assert_eq!(Subset::EMPTY.submasks().count(), 1);
    }
}
