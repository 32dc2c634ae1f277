//! Stable set polytopes and related 0/1-polytopes.
//!
//! The crate builds the vertex families of stable set polytopes, Birkhoff
//! polytopes of graphs and matroid polytopes, computes their 1-skeletons with
//! the unique-decomposition criterion ("condition (E)"), and checks the
//! result against an exact LP adjacency oracle. Facet enumeration (double
//! description over exact integers) and diameter bounds are provided for
//! small instances.

pub mod counterexample;
pub mod error;
pub mod families;
pub mod geometry;
pub mod graphs;
pub mod io;
pub mod linalg;
pub mod matroids;
pub mod skeleton;
pub mod verify;

pub use crate::error::{Error, Result};
pub use crate::geometry::{FacetCaps, Inequality};
pub use crate::graphs::{GroundSet, Label, SimpleGraph, Subset};
pub use crate::linalg::{QMatrix, QVector, Rational};
pub use crate::matroids::Matroid;
pub use crate::skeleton::{PolytopeKind, Provenance, Skeleton, ZeroOnePolytope};
