//! Matroids stored by their full independence family.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graphs::{GroundSet, Label, Subset};
use crate::skeleton::{PolytopeKind, ZeroOnePolytope};

/// First violated independence axiom, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// (I1): the empty set is missing.
    MissingEmpty,
    /// (I2): `set` is present but its subset `subset` is not.
    NotDownwardClosed { set: Subset, subset: Subset },
    /// (I3): no element of `larger ∖ smaller` extends `smaller`.
    Exchange { smaller: Subset, larger: Subset },
}

impl AxiomViolation {
    pub fn axiom(&self) -> &'static str {
        match self {
            AxiomViolation::MissingEmpty => "I1",
            AxiomViolation::NotDownwardClosed { .. } => "I2",
            AxiomViolation::Exchange { .. } => "I3",
        }
    }
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomViolation::MissingEmpty => write!(f, "(I1) empty set missing"),
            AxiomViolation::NotDownwardClosed { set, subset } => {
                write!(f, "(I2) positions {} present but subset {} missing", positions(*set), positions(*subset))
            }
            AxiomViolation::Exchange { smaller, larger } => {
                write!(f, "(I3) positions {} cannot be extended from {}", positions(*smaller), positions(*larger))
            }
        }
    }
}

fn positions(s: Subset) -> String {
    format!("{:?}", s.iter().collect::<Vec<_>>())
}

/// Brute-force check of (I1), (I2), (I3) in that order. Pairs are scanned in
/// [`Subset`] order, so the witness is deterministic.
pub fn check_matroid_axioms(family: &[Subset]) -> std::result::Result<(), AxiomViolation> {
    let mut sorted: Vec<Subset> = family.to_vec();
    sorted.sort();
    sorted.dedup();
    let members: HashSet<Subset> = sorted.iter().copied().collect();
    if !members.contains(&Subset::EMPTY) {
        return Err(AxiomViolation::MissingEmpty);
    }
    for &s in &sorted {
        for x in s.iter() {
            if !members.contains(&s.without(x)) {
                return Err(AxiomViolation::NotDownwardClosed {
                    set: s,
                    subset: s.without(x),
                });
            }
        }
    }
    for &a in &sorted {
        for &b in sorted.iter().filter(|b| b.len() > a.len()) {
            if !b.difference(a).iter().any(|x| members.contains(&a.with(x))) {
                return Err(AxiomViolation::Exchange { smaller: a, larger: b });
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    ground: GroundSet,
    independents: Vec<Subset>,
    rank: usize,
}

impl Matroid {
    /// Validates the axioms; duplicates in `family` are ignored.
    pub fn new(ground: GroundSet, family: Vec<Subset>) -> Result<Self> {
        let full = ground.full();
        if family.iter().any(|s| !s.is_subset(full)) {
            return Err(Error::contract("independent set outside the ground set"));
        }
        check_matroid_axioms(&family).map_err(Error::Axiom)?;
        let mut independents = family;
        independents.sort();
        independents.dedup();
        let rank = independents.last().map_or(0, |s| s.len());
        Ok(Matroid {
            ground,
            independents,
            rank,
        })
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn independents(&self) -> &[Subset] {
        &self.independents
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> Vec<Subset> {
        self.independents.iter().copied().filter(|s| s.len() == self.rank).collect()
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.independents.binary_search(&s).is_ok()
    }

    pub fn is_basis(&self, s: Subset) -> bool {
        s.len() == self.rank && self.is_independent(s)
    }
}

/// `U_{k,n}`: all subsets of `{1..n}` of size at most `k`.
pub fn build_uniform(n: usize, k: usize) -> Result<Matroid> {
    if k > n {
        return Err(Error::contract(format!("uniform matroid needs k <= n, got k={k}, n={n}")));
    }
    if n > 64 {
        return Err(Error::GroundTooLarge(n));
    }
    let family = Subset::full(n).submasks().filter(|s| s.len() <= k).collect();
    Matroid::new(GroundSet::range(n), family)
}

/// Direct sum of `U_{1,s}` over the block sizes; ground `1..sum` in block order.
pub fn build_partition(block_sizes: &[usize]) -> Result<Matroid> {
    if block_sizes.contains(&0) {
        return Err(Error::contract("partition blocks must be nonempty"));
    }
    let n: usize = block_sizes.iter().sum();
    if n > 64 {
        return Err(Error::GroundTooLarge(n));
    }
    let mut blocks = Vec::new();
    let mut start = 0;
    for &s in block_sizes {
        blocks.push(Subset::from_indices(start..start + s));
        start += s;
    }
    let family = Subset::full(n)
        .submasks()
        .filter(|s| blocks.iter().all(|b| s.intersection(*b).len() <= 1))
        .collect();
    Matroid::new(GroundSet::range(n), family)
}

/// Forests of a simple graph; ground elements are the edges `(u, v)` in the given order.
pub fn build_graphic(edges: &[(i64, i64)]) -> Result<Matroid> {
    let ground = GroundSet::new(edges.iter().map(|&(u, v)| Label::Pair(u.min(v), u.max(v))))?;
    let mut verts: Vec<i64> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    verts.sort_unstable();
    verts.dedup();
    let pos = |x: i64| verts.binary_search(&x).expect("endpoint listed");
    let endpoints: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (pos(u), pos(v))).collect();
    if endpoints.iter().any(|&(u, v)| u == v) {
        return Err(Error::contract("graphic matroid edges must not be loops"));
    }
    let acyclic = |s: Subset| {
        let mut parent: Vec<usize> = (0..verts.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for e in s.iter() {
            let (u, v) = endpoints[e];
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return false;
            }
            parent[ru] = rv;
        }
        true
    };
    let family = Subset::full(edges.len()).submasks().filter(|&s| acyclic(s)).collect();
    Matroid::new(ground, family)
}

pub fn independence_polytope(m: &Matroid) -> ZeroOnePolytope {
    ZeroOnePolytope::new(m.ground.clone(), m.independents.clone(), PolytopeKind::MatroidIndependence)
        .expect("independent sets are distinct")
}

pub fn basis_polytope(m: &Matroid) -> ZeroOnePolytope {
    ZeroOnePolytope::new(m.ground.clone(), m.bases(), PolytopeKind::MatroidBases).expect("bases are distinct")
}

/// For bases `a`, `b` and `x ∈ a∖b`, the first `y ∈ b∖a` (ground order) with
/// both `a - x + y` and `b - y + x` bases.
pub fn strong_exchange(m: &Matroid, a: Subset, b: Subset, x: usize) -> Result<usize> {
    if !m.is_basis(a) || !m.is_basis(b) {
        return Err(Error::contract("strong exchange needs two bases"));
    }
    if !a.difference(b).contains(x) {
        return Err(Error::contract("exchanged element must lie in a∖b"));
    }
    b.difference(a)
        .iter()
        .find(|&y| m.is_independent(a.without(x).with(y)) && m.is_independent(b.without(y).with(x)))
        .ok_or_else(|| Error::Verification("strong exchange failed; the family is not a matroid".into()))
}

/// Classical basis-polytope adjacency: the bases differ by a single swap.
pub fn ggms_adjacent(a: Subset, b: Subset) -> bool {
    a.symmetric_difference(b).len() == 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::skeleton::is_edge_e;

    #[test]
    fn axiom_witnesses() {
        let path_stab = vec![
            Subset::EMPTY,
            Subset::from_indices([0]),
            Subset::from_indices([1]),
            Subset::from_indices([2]),
            Subset::from_indices([0, 2]),
        ];
        assert_eq!(
            check_matroid_axioms(&path_stab),
            Err(AxiomViolation::Exchange {
                smaller: Subset::from_indices([1]),
                larger: Subset::from_indices([0, 2]),
            })
        );
        assert!(check_matroid_axioms(build_uniform(3, 1).unwrap().independents()).is_ok());
        assert_eq!(
            check_matroid_axioms(&[Subset::from_indices([0])]),
            Err(AxiomViolation::MissingEmpty)
        );
        let not_closed = [Subset::EMPTY, Subset::from_indices([0, 1])];
        assert_eq!(check_matroid_axioms(&not_closed).unwrap_err().axiom(), "I2");
    }

    #[test]
    fn builder_counts() {
        let u24 = build_uniform(4, 2).unwrap();
        assert_eq!((u24.independents().len(), u24.rank()), (11, 2));
        assert_eq!(build_partition(&[2, 3]).unwrap().independents().len(), 12);
        let k4 = build_graphic(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        assert_eq!(k4.bases().len(), 16);
        assert!(build_uniform(2, 3).is_err());
    }

    #[test]
    fn polytopes() {
        assert_eq!(basis_polytope(&build_uniform(4, 2).unwrap()).vertex_count(), 6);
        let k3 = build_graphic(&[(1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(basis_polytope(&k3).vertex_count(), 3);
        assert_eq!(independence_polytope(&build_uniform(3, 1).unwrap()).vertex_count(), 4);
    }

    #[test]
    fn exchange_examples() {
        let u = build_uniform(4, 2).unwrap();
        let a = Subset::from_indices([0, 1]);
        let b = Subset::from_indices([2, 3]);
        assert_eq!(strong_exchange(&u, a, b, 0).unwrap(), 2);
        assert!(strong_exchange(&u, a, a, 0).is_err());

        let k4 = build_graphic(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let bases = k4.bases();
        for &a in &bases {
            for &b in &bases {
                for x in a.difference(b).iter() {
                    let y = strong_exchange(&k4, a, b, x).unwrap();
                    assert!(k4.is_basis(a.without(x).with(y)) && k4.is_basis(b.without(y).with(x)));
                }
            }
        }
    }

    #[test]
    fn ggms_matches_criterion() {
        assert!(ggms_adjacent(Subset::from_indices([0, 1]), Subset::from_indices([0, 2])));
        assert!(!ggms_adjacent(Subset::from_indices([0, 1]), Subset::from_indices([2, 3])));
        for m in [
            build_uniform(4, 2).unwrap(),
            build_graphic(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap(),
        ] {
            let p = basis_polytope(&m);
            for i in 0..p.vertex_count() {
                for j in i + 1..p.vertex_count() {
                    assert_eq!(ggms_adjacent(p.vertex(i), p.vertex(j)), is_edge_e(&p, i, j));
                }
            }
        }
    }
}
