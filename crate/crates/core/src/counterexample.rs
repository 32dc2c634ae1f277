//! A 9-vertex graph whose inclusion-maximal stable sets give a 0/1-polytope
//! where the unique-decomposition criterion does not describe the edges,
//! and the truncated cube, which satisfies the criterion without being a
//! stable set polytope.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{build_skeleton_oracle, non_adjacency_certificate};
use crate::graphs::{GroundSet, SimpleGraph, Subset};
use crate::skeleton::{build_skeleton_e, decompositions, ZeroOnePolytope};

const REMARK_EDGES: [(i64, i64); 12] = [
    (1, 7),
    (1, 4),
    (2, 8),
    (2, 5),
    (3, 9),
    (3, 6),
    (7, 5),
    (7, 6),
    (8, 4),
    (8, 6),
    (9, 4),
    (9, 5),
];

/// The twelve maximal stable sets `A..L`, transcribed by hand.
pub const REMARK_SETS: [(&str, &[i64]); 12] = [
    ("A", &[1, 2, 3]),
    ("B", &[4, 5, 6]),
    ("C", &[7, 8, 9]),
    ("D", &[1, 5, 6]),
    ("E", &[2, 4, 6]),
    ("F", &[3, 4, 5]),
    ("G", &[1, 8, 9]),
    ("H", &[2, 7, 9]),
    ("I", &[3, 7, 8]),
    ("J", &[2, 3, 4, 7]),
    ("K", &[1, 3, 5, 8]),
    ("L", &[1, 2, 6, 9]),
];

pub fn remark_graph() -> SimpleGraph {
    SimpleGraph::from_label_edges(GroundSet::range(9), REMARK_EDGES).expect("fixture labels are 1..9")
}

/// Inclusion-maximal stable sets of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalStableFamily {
    pub graph: SimpleGraph,
    pub members: Vec<Subset>,
}

impl MaximalStableFamily {
    pub fn polytope(&self) -> ZeroOnePolytope {
        ZeroOnePolytope::raw(self.graph.ground().clone(), self.members.clone()).expect("members are distinct")
    }
}

pub fn maximal_stable_sets(g: &SimpleGraph) -> MaximalStableFamily {
    let members = g
        .enumerate_stable_sets()
        .into_iter()
        .filter(|&s| {
            (0..g.vertex_count())
                .filter(|&v| !s.contains(v))
                .all(|v| !g.neighbors(v).intersection(s).is_empty())
        })
        .collect();
    MaximalStableFamily {
        graph: g.clone(),
        members,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClauseResult {
    pub clause: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RemarkReport {
    pub family_size: usize,
    pub clauses: Vec<ClauseResult>,
    /// Oracle certificate over the members, as `(set, gamma)` for nonzero `gamma`.
    pub oracle_certificate: Vec<(String, String)>,
}

impl RemarkReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }
}

/// Checks the counterexample: the fixture matches the derived family,
/// `{A, B}` is not an edge, the explicit certificate holds, and `{A, B}` is the
/// only decomposition of `e_A + e_B`. Any failed clause is an error.
pub fn verify_remark() -> Result<RemarkReport> {
    let g = remark_graph();
    let ground = g.ground().clone();
    let fam = maximal_stable_sets(&g);
    let named = |name: &str| -> Subset {
        let (_, labels) = REMARK_SETS.iter().find(|(n, _)| *n == name).expect("fixture name");
        ground.subset(labels.iter().copied()).expect("fixture labels")
    };
    let mut fixture: Vec<Subset> = REMARK_SETS.iter().map(|(n, _)| named(n)).collect();
    fixture.sort();

    let mut clauses = Vec::new();
    clauses.push(ClauseResult {
        clause: "fixture",
        passed: fixture == fam.members,
        detail: format!("{} derived maximal stable sets, {} transcribed", fam.members.len(), fixture.len()),
    });

    let p = fam.polytope();
    let (a, b) = (named("A"), named("B"));
    let (ai, bi) = (
        p.index_of(a).ok_or_else(|| Error::Verification("A is not a member".into()))?,
        p.index_of(b).ok_or_else(|| Error::Verification("B is not a member".into()))?,
    );
    let cert = non_adjacency_certificate(&p, ai, bi);
    clauses.push(ClauseResult {
        clause: "(i) oracle non-adjacency",
        passed: cert.is_some(),
        detail: format!("oracle_is_edge(A, B) = {}", cert.is_none()),
    });

    // e_A - e_B = (e_D - e_B) + (e_E - e_B) + (e_F - e_B), coordinatewise.
    let eb = ground.indicator(b);
    let lhs = ground.indicator(a).sub(&eb)?;
    let mut rhs = crate::linalg::QVector::zeros(ground.len());
    for name in ["D", "E", "F"] {
        let term = ground.indicator(named(name)).sub(&eb)?;
        rhs = crate::linalg::QVector::new(rhs.entries().iter().zip(term.entries()).map(|(x, y)| x + y).collect());
    }
    clauses.push(ClauseResult {
        clause: "(ii) certificate identity",
        passed: lhs == rhs,
        detail: format!("e_A - e_B = {lhs}; sum over D,E,F = {rhs}"),
    });

    let decomps = decompositions(&p, ai, bi);
    clauses.push(ClauseResult {
        clause: "(iii) unique decomposition",
        passed: decomps == vec![(ai.min(bi), ai.max(bi))],
        detail: format!(
            "decompositions: {}",
            decomps
                .iter()
                .map(|&(c, d)| format!("{{{}, {}}}", ground.format_subset(p.vertex(c)), ground.format_subset(p.vertex(d))))
                .collect::<Vec<_>>()
                .join(" ")
        ),
    });

    let oracle_certificate = cert
        .unwrap_or_default()
        .into_iter()
        .enumerate()
        .filter(|(_, g)| *g != num_traits::Zero::zero())
        .map(|(i, g)| (ground.format_subset(p.vertex(i)), g.to_string()))
        .collect();
    let report = RemarkReport {
        family_size: p.vertex_count(),
        clauses,
        oracle_certificate,
    };
    if !report.passed() {
        let failed: Vec<&str> = report.clauses.iter().filter(|c| !c.passed).map(|c| c.clause).collect();
        return Err(Error::Verification(format!("counterexample clauses failed: {}", failed.join(", "))));
    }
    Ok(report)
}

/// `conv(0, e1, e2, e3, e1+e2, e2+e3, e1+e3)`: the 3-cube without its top vertex.
pub fn truncated_cube() -> ZeroOnePolytope {
    let vertices = Subset::full(3).submasks().filter(|s| s.len() < 3).collect();
    ZeroOnePolytope::raw(GroundSet::range(3), vertices).expect("distinct subsets")
}

/// Whether `family` is exactly `Stab(G)` for some graph `G` on its ground set.
/// The only candidate graph joins the pairs missing from the family.
pub fn is_stable_set_family(ground: &GroundSet, family: &[Subset]) -> bool {
    let n = ground.len();
    let members: std::collections::HashSet<Subset> = family.iter().copied().collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !members.contains(&Subset::from_indices([u, v])) {
                edges.push((u, v));
            }
        }
    }
    let g = SimpleGraph::from_index_edges(ground.clone(), edges).expect("positions in range");
    let mut fam: Vec<Subset> = members.into_iter().collect();
    fam.sort();
    g.enumerate_stable_sets() == fam
}

#[derive(Clone, Debug, Serialize)]
pub struct InclusionWitness {
    pub truncated_cube_criterion_matches: bool,
    pub truncated_cube_is_stable_set_family: bool,
    pub remark_criterion_matches: bool,
}

impl InclusionWitness {
    pub fn passed(&self) -> bool {
        self.truncated_cube_criterion_matches && !self.truncated_cube_is_stable_set_family && !self.remark_criterion_matches
    }
}

/// Criterion-vs-oracle agreement on the truncated cube (holds) and on the
/// maximal-stable-set polytope (fails).
pub fn strict_inclusion_witness() -> InclusionWitness {
    let cube = truncated_cube();
    let remark = maximal_stable_sets(&remark_graph()).polytope();
    InclusionWitness {
        truncated_cube_criterion_matches: build_skeleton_e(&cube).same_edges(&build_skeleton_oracle(&cube)),
        truncated_cube_is_stable_set_family: is_stable_set_family(cube.ground(), cube.vertices()),
        remark_criterion_matches: build_skeleton_e(&remark).same_edges(&build_skeleton_oracle(&remark)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_complete_graph;
    use crate::skeleton::is_edge_e;

    #[test]
    fn remark_graph_shape() {
        let g = remark_graph();
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.edge_count(), 12);
        // counted from the edge list: 1, 2, 3 have degree 2, the rest degree 3
        let degrees: Vec<usize> = (0..9).map(|v| g.neighbors(v).len()).collect();
        assert_eq!(degrees, [2, 2, 2, 3, 3, 3, 3, 3, 3]);
    }

    #[test]
    fn maximal_sets() {
        let fam = maximal_stable_sets(&remark_graph());
        assert_eq!(fam.members.len(), 12);
        let k4 = maximal_stable_sets(&build_complete_graph(4).unwrap());
        assert_eq!(k4.members, (0..4).map(Subset::singleton).collect::<Vec<_>>());
        let path = SimpleGraph::from_label_edges(GroundSet::range(3), [(1, 2), (2, 3)]).unwrap();
        assert_eq!(
            maximal_stable_sets(&path).members,
            vec![Subset::singleton(1), Subset::from_indices([0, 2])]
        );
    }

    #[test]
    fn remark_verifies() {
        let report = verify_remark().unwrap();
        assert!(report.passed());
        assert_eq!(report.clauses.len(), 4);
        let p = maximal_stable_sets(&remark_graph()).polytope();
        let g = p.ground();
        let a = p.index_of(g.subset([1, 2, 3]).unwrap()).unwrap();
        let b = p.index_of(g.subset([4, 5, 6]).unwrap()).unwrap();
        assert!(is_edge_e(&p, a, b));
    }

    #[test]
    fn inclusion_witness() {
        let w = strict_inclusion_witness();
        assert!(w.passed(), "{w:?}");
    }
}
