//! JSON file formats and DOT export.
//!
//! * graph: `{"labels": [...], "edges": [[l, l], ...]}`
//! * relation: `{"labels": [...], "pairs": [[x, y], ...]}`
//! * poset: `{"elements": [...], "less_than": [[x, y], ...]}` (closed transitively on load)
//! * matroid: `{"ground": [...], "independents": [[...], ...]}` or one of
//!   `{"uniform": [n, k]}`, `{"partition": [sizes]}`, `{"graphic": [[u, v], ...]}`
//! * polytope: `{"ground", "kind", "rank"?, "graph"?, "vertices"}`
//! * skeleton: `{"vertices": [subsets], "edges": [[i, j], ...], "provenance": ...}`
//! * facets: `[{"coeffs": [ints], "rhs": int}, ...]`

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::Poset;
use crate::graphs::{GroundSet, Label, SimpleGraph, Subset};
use crate::matroids::{build_graphic, build_partition, build_uniform, Matroid};
use crate::skeleton::{birkhoff_restrict, PolytopeKind, Provenance, Skeleton, ZeroOnePolytope};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub labels: Vec<Label>,
    pub edges: Vec<(Label, Label)>,
}

impl GraphFile {
    pub fn from_graph(g: &SimpleGraph) -> Self {
        let gr = g.ground();
        GraphFile {
            labels: gr.labels().to_vec(),
            edges: g
                .edges()
                .into_iter()
                .map(|(u, v)| (gr.label(u).clone(), gr.label(v).clone()))
                .collect(),
        }
    }

    pub fn to_graph(&self) -> Result<SimpleGraph> {
        SimpleGraph::from_label_edges(GroundSet::new(self.labels.iter().cloned())?, self.edges.iter().cloned())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationFile {
    pub labels: Vec<Label>,
    pub pairs: Vec<(Label, Label)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<Label>,
    pub less_than: Vec<(Label, Label)>,
}

impl PosetFile {
    pub fn to_poset(&self) -> Result<Poset> {
        Poset::from_relations(GroundSet::new(self.elements.iter().cloned())?, self.less_than.iter().cloned())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MatroidFile {
    Explicit {
        ground: Vec<Label>,
        independents: Vec<Vec<Label>>,
    },
    Uniform {
        uniform: (usize, usize),
    },
    Partition {
        partition: Vec<usize>,
    },
    Graphic {
        graphic: Vec<(i64, i64)>,
    },
}

impl MatroidFile {
    pub fn to_matroid(&self) -> Result<Matroid> {
        match self {
            MatroidFile::Explicit { ground, independents } => {
                let g = GroundSet::new(ground.iter().cloned())?;
                let family = independents
                    .iter()
                    .map(|s| g.subset(s.iter().cloned()))
                    .collect::<Result<Vec<_>>>()?;
                Matroid::new(g, family)
            }
            MatroidFile::Uniform { uniform: (n, k) } => build_uniform(*n, *k),
            MatroidFile::Partition { partition } => build_partition(partition),
            MatroidFile::Graphic { graphic } => build_graphic(graphic),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeFile {
    pub ground: Vec<Label>,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphFile>,
    pub vertices: Vec<Vec<Label>>,
}

impl PolytopeFile {
    pub fn from_polytope(p: &ZeroOnePolytope) -> Self {
        let rank = match p.kind() {
            PolytopeKind::Birkhoff { rank, .. } => Some(*rank),
            _ => None,
        };
        PolytopeFile {
            ground: p.ground().labels().to_vec(),
            kind: p.kind().tag().to_string(),
            rank,
            graph: p.kind().graph().map(GraphFile::from_graph),
            vertices: p.vertices().iter().map(|&v| p.ground().labels_of(v)).collect(),
        }
    }

    /// Rebuilds the polytope, checking the kind's invariants against the graph.
    pub fn to_polytope(&self) -> Result<ZeroOnePolytope> {
        let ground = GroundSet::new(self.ground.iter().cloned())?;
        let vertices = self
            .vertices
            .iter()
            .map(|v| ground.subset(v.iter().cloned()))
            .collect::<Result<Vec<_>>>()?;
        let graph = || -> Result<SimpleGraph> {
            let g = self
                .graph
                .as_ref()
                .ok_or_else(|| Error::contract(format!("kind {} needs a graph", self.kind)))?
                .to_graph()?;
            if g.ground() != &ground {
                return Err(Error::contract("graph labels differ from the polytope ground set"));
            }
            Ok(g)
        };
        let kind = match self.kind.as_str() {
            "stable-set" => {
                let g = graph()?;
                let expected = ZeroOnePolytope::stable_set(&g);
                if expected.vertices() != vertices.as_slice() {
                    return Err(Error::contract("vertices are not the stable sets of the graph"));
                }
                PolytopeKind::StableSet { graph: g }
            }
            "birkhoff" => {
                let g = graph()?;
                let expected = birkhoff_restrict(&g);
                if expected.vertices() != vertices.as_slice() || self.rank != Some(expected.max_cardinality()) {
                    return Err(Error::contract("vertices/rank are not the maximum stable sets of the graph"));
                }
                expected.kind().clone()
            }
            "matroid-independence" => PolytopeKind::MatroidIndependence,
            "matroid-bases" => PolytopeKind::MatroidBases,
            "raw" => PolytopeKind::Raw,
            other => return Err(Error::contract(format!("unknown polytope kind {other:?}"))),
        };
        ZeroOnePolytope::new(ground, vertices, kind)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonFile {
    pub vertices: Vec<Vec<Label>>,
    pub edges: Vec<(usize, usize)>,
    pub provenance: Provenance,
}

impl SkeletonFile {
    pub fn new(p: &ZeroOnePolytope, s: &Skeleton) -> Self {
        SkeletonFile {
            vertices: p.vertices().iter().map(|&v| p.ground().labels_of(v)).collect(),
            edges: s.edges().to_vec(),
            provenance: s.provenance(),
        }
    }

    pub fn to_skeleton(&self) -> Result<Skeleton> {
        Skeleton::new(self.vertices.len(), self.edges.clone(), self.provenance)
    }
}

fn label_list(labels: &[Label]) -> String {
    let parts: Vec<String> = labels.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

/// Undirected DOT graph; nodes are vertex indices labelled by their subsets.
pub fn skeleton_dot(file: &SkeletonFile) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph skeleton {{");
    let _ = writeln!(out, "  // provenance: {}", file.provenance);
    for (i, v) in file.vertices.iter().enumerate() {
        let _ = writeln!(out, "  v{i} [label=\"{}\"];", label_list(v).replace('"', "\\\""));
    }
    for &(i, j) in &file.edges {
        let _ = writeln!(out, "  v{i} -- v{j};");
    }
    out.push_str("}\n");
    out
}

/// Parses a subset written as a JSON label list against `ground`.
pub fn parse_subset(ground: &GroundSet, json: &str) -> Result<Subset> {
    let labels: Vec<Label> = serde_json::from_str(json)?;
    ground.subset(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_bell_graph;
    use crate::skeleton::build_skeleton_e;

    #[test]
    fn polytope_round_trip() {
        let p = ZeroOnePolytope::stable_set(&build_bell_graph(3).unwrap());
        let json = serde_json::to_string(&PolytopeFile::from_polytope(&p)).unwrap();
        let back: PolytopeFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_polytope().unwrap(), p);
        assert!(json.contains("[[1,2],[1,3]]"));
    }

    #[test]
    fn tampered_stable_set_file_is_rejected() {
        let p = ZeroOnePolytope::stable_set(&build_bell_graph(3).unwrap());
        let mut f = PolytopeFile::from_polytope(&p);
        f.vertices.pop();
        assert!(f.to_polytope().is_err());
        f.kind = "cube".into();
        assert!(f.to_polytope().is_err());
    }

    #[test]
    fn matroid_shorthands() {
        let m: MatroidFile = serde_json::from_str(r#"{"uniform": [4, 2]}"#).unwrap();
        assert_eq!(m.to_matroid().unwrap().independents().len(), 11);
        let m: MatroidFile = serde_json::from_str(r#"{"partition": [2, 3]}"#).unwrap();
        assert_eq!(m.to_matroid().unwrap().independents().len(), 12);
        let m: MatroidFile = serde_json::from_str(r#"{"graphic": [[1,2],[2,3],[1,3]]}"#).unwrap();
        assert_eq!(m.to_matroid().unwrap().rank(), 2);
        let m: MatroidFile =
            serde_json::from_str(r#"{"ground": ["a","b"], "independents": [[], ["a"], ["b"]]}"#).unwrap();
        assert_eq!(m.to_matroid().unwrap().rank(), 1);
        let bad: MatroidFile = serde_json::from_str(r#"{"ground": ["a"], "independents": [["a"]]}"#).unwrap();
        assert!(bad.to_matroid().is_err());
    }

    #[test]
    fn dot_export() {
        let p = ZeroOnePolytope::stable_set(&build_bell_graph(3).unwrap());
        let dot = skeleton_dot(&SkeletonFile::new(&p, &build_skeleton_e(&p)));
        assert_eq!(dot.matches(" -- ").count(), 8);
        assert!(dot.starts_with("graph skeleton {"));
    }

    #[test]
    fn graph_file_labels() {
        let f: GraphFile = serde_json::from_str(r#"{"labels": ["a", "b", "c"], "edges": [["a", "b"]]}"#).unwrap();
        let g = f.to_graph().unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(GraphFile::from_graph(&g), f);
        let bad: GraphFile = serde_json::from_str(r#"{"labels": ["a"], "edges": [["a", "z"]]}"#).unwrap();
        assert!(bad.to_graph().is_err());
    }
}
