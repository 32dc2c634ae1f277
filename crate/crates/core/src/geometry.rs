//! Ground-truth geometry for 0/1-polytopes: an LP adjacency oracle, inequality
//! validity and facet checks, and exact facet enumeration.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graphs::{SimpleGraph, Subset};
use crate::linalg::{affine_dim, lp_certificate, rat, rank, QMatrix, QVector, Rational};
use crate::skeleton::{PolytopeKind, Provenance, Skeleton, ZeroOnePolytope};

/// `coeffs · x <= rhs`. Nonnegativity `x_v >= 0` is stored as `-x_v <= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Inequality {
    pub coeffs: QVector,
    pub rhs: Rational,
}

impl Inequality {
    pub fn new(coeffs: QVector, rhs: Rational) -> Self {
        Inequality { coeffs, rhs }
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(coeffs: I, rhs: i64) -> Self {
        Inequality::new(QVector::from_ints(coeffs), rat(rhs))
    }

    /// `-x_v <= 0`.
    pub fn nonnegativity(dim: usize, v: usize) -> Self {
        Inequality::from_ints((0..dim).map(|i| if i == v { -1 } else { 0 }), 0)
    }

    /// `sum_{v in s} x_v <= rhs`.
    pub fn subset_sum(dim: usize, s: Subset, rhs: i64) -> Self {
        Inequality::from_ints((0..dim).map(|i| i64::from(s.contains(i))), rhs)
    }

    pub fn dim(&self) -> usize {
        self.coeffs.dim()
    }

    /// Left-hand side at the indicator vector of `s`.
    pub fn lhs_at(&self, s: Subset) -> Rational {
        s.iter().fold(Rational::zero(), |acc, i| acc + &self.coeffs[i])
    }

    pub fn holds_at(&self, s: Subset) -> bool {
        self.lhs_at(s) <= self.rhs
    }

    pub fn tight_at(&self, s: Subset) -> bool {
        self.lhs_at(s) == self.rhs
    }

    /// Integer coefficients with gcd 1, same half-space.
    pub fn normalized(&self) -> Inequality {
        let mut lcm = BigInt::one();
        for x in self.coeffs.entries().iter().chain(std::iter::once(&self.rhs)) {
            lcm = lcm.lcm(x.denom());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .entries()
            .iter()
            .chain(std::iter::once(&self.rhs))
            .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let g = if g.is_zero() { BigInt::one() } else { g };
        let mut scaled: Vec<Rational> = ints.into_iter().map(|x| Rational::from_integer(x / &g)).collect();
        let rhs = scaled.pop().expect("rhs present");
        Inequality::new(QVector::new(scaled), rhs)
    }

    /// Integer form of a normalized inequality, if every entry fits in `i64`.
    pub fn to_ints(&self) -> Option<(Vec<i64>, i64)> {
        let n = self.normalized();
        let coeffs = n
            .coeffs
            .entries()
            .iter()
            .map(|c| c.to_integer().to_i64())
            .collect::<Option<Vec<_>>>()?;
        Some((coeffs, n.rhs.to_integer().to_i64()?))
    }

    /// `Some(v)` if this is the nonnegativity inequality of coordinate `v`.
    pub fn as_nonnegativity(&self) -> Option<usize> {
        let (c, rhs) = self.to_ints()?;
        let support: Vec<usize> = (0..c.len()).filter(|&i| c[i] != 0).collect();
        (rhs == 0 && support.len() == 1 && c[support[0]] == -1).then(|| support[0])
    }

    /// `Some(S)` if this reads `sum_{v in S} x_v <= 1`.
    pub fn as_unit_sum(&self) -> Option<Subset> {
        let (c, rhs) = self.to_ints()?;
        if rhs != 1 || c.iter().any(|&x| x != 0 && x != 1) {
            return None;
        }
        Some(Subset::from_indices((0..c.len()).filter(|&i| c[i] == 1)))
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.entries().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let sep = if first { "" } else { " " };
            if mag.is_one() {
                write!(f, "{sep}{sign}x{i}")?;
            } else {
                write!(f, "{sep}{sign}{mag}*x{i}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " <= {}", self.rhs)
    }
}

/// JSON facet record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FacetRecord {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
}

/// `e_A` and `e_B` are *not* adjacent iff `e_A - e_B` is a nonnegative
/// combination of `v - e_B` over the other vertices `v`.
pub fn oracle_is_edge(p: &ZeroOnePolytope, a: usize, b: usize) -> bool {
    non_adjacency_certificate(p, a, b).is_none()
}

/// Coefficients `gamma` (one per vertex, zero at `a` and `b`) with
/// `sum gamma_i (v_i - e_B) = e_A - e_B`, when the pair is not an edge.
pub fn non_adjacency_certificate(p: &ZeroOnePolytope, a: usize, b: usize) -> Option<Vec<Rational>> {
    assert_ne!(a, b, "adjacency needs two distinct vertices");
    let g = p.ground();
    let eb = g.indicator(p.vertex(b));
    let others: Vec<usize> = (0..p.vertex_count()).filter(|&i| i != a && i != b).collect();
    let columns: Vec<QVector> = others
        .iter()
        .map(|&i| g.indicator(p.vertex(i)).sub(&eb).expect("same ground"))
        .collect();
    let lhs = QMatrix::from_columns(g.len(), &columns).expect("columns share the ground dimension");
    let rhs = g.indicator(p.vertex(a)).sub(&eb).expect("same ground");
    let x = lp_certificate(&lhs, &rhs).expect("dimensions agree")?;
    let mut gamma = vec![Rational::zero(); p.vertex_count()];
    for (k, &i) in others.iter().enumerate() {
        gamma[i] = x[k].clone();
    }
    Some(gamma)
}

pub fn build_skeleton_oracle(p: &ZeroOnePolytope) -> Skeleton {
    Skeleton::from_pair_test(p.vertex_count(), Provenance::Oracle, |i, j| oracle_is_edge(p, i, j))
}

pub fn is_valid(p: &ZeroOnePolytope, q: &Inequality) -> bool {
    p.vertices().iter().all(|&v| q.holds_at(v))
}

/// Affine dimension of the polytope; `|ground|` for stable set polytopes.
pub fn polytope_dim(p: &ZeroOnePolytope) -> usize {
    if let PolytopeKind::StableSet { .. } = p.kind() {
        return p.ground().len();
    }
    let pts: Vec<QVector> = p.vertices().iter().map(|&v| p.ground().indicator(v)).collect();
    affine_dim(&pts).expect("same ground").unwrap_or(0)
}

/// True iff the vertices tight at the valid inequality `q` span a face of
/// dimension `dim(p) - 1`.
pub fn is_facet(p: &ZeroOnePolytope, q: &Inequality) -> Result<bool> {
    if q.dim() != p.ground().len() {
        return Err(Error::DimensionMismatch {
            expected: p.ground().len(),
            found: q.dim(),
        });
    }
    if !is_valid(p, q) {
        return Err(Error::contract(format!("inequality {q} is not valid for the polytope")));
    }
    let dim = polytope_dim(p);
    let tight: Vec<QVector> = p
        .vertices()
        .iter()
        .filter(|&&v| q.tight_at(v))
        .map(|&v| p.ground().indicator(v))
        .collect();
    Ok(dim >= 1 && affine_dim(&tight)? == Some(dim - 1))
}

/// Nonnegativity for every vertex of `g` and `sum_{v in C} x_v <= 1` for every
/// maximal clique `C`.
pub fn always_facet_inequalities(g: &SimpleGraph) -> Vec<Inequality> {
    let n = g.vertex_count();
    let mut out: Vec<Inequality> = (0..n).map(|v| Inequality::nonnegativity(n, v)).collect();
    out.extend(g.enumerate_max_cliques().into_iter().map(|c| Inequality::subset_sum(n, c, 1)));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FacetCaps {
    pub max_vertices: usize,
    pub max_dim: usize,
}

impl Default for FacetCaps {
    fn default() -> Self {
        FacetCaps {
            max_vertices: 150,
            max_dim: 16,
        }
    }
}

#[derive(Clone, Debug)]
struct Ray {
    coords: Vec<BigInt>,
    tight: Vec<u64>,
}

fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn popcount(bits: &[u64]) -> usize {
    bits.iter().map(|w| w.count_ones() as usize).sum()
}

fn intersect(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn contains_all(sup: &[u64], sub: &[u64]) -> bool {
    sup.iter().zip(sub).all(|(x, y)| y & !x == 0)
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

/// Complete irredundant H-representation of a full-dimensional polytope by
/// the double description method over exact integers.
///
/// Works in the cone of pairs `(c, m)` with `c · v <= m` for every vertex `v`;
/// its extreme rays are the facets. Output is normalized (integer, gcd 1) and
/// sorted by right-hand side, then coefficients.
pub fn enumerate_facets(p: &ZeroOnePolytope, caps: FacetCaps) -> Result<Vec<Inequality>> {
    let d = p.ground().len();
    let nv = p.vertex_count();
    if nv > caps.max_vertices {
        return Err(Error::SizeLimit(format!(
            "{nv} vertices exceed the facet-enumeration cap of {}",
            caps.max_vertices
        )));
    }
    if d > caps.max_dim {
        return Err(Error::SizeLimit(format!(
            "dimension {d} exceeds the facet-enumeration cap of {}",
            caps.max_dim
        )));
    }
    let dim = polytope_dim(p);
    if dim != d || nv == 0 {
        return Err(Error::NotFullDimensional { dim, ambient: d });
    }
    if d == 0 {
        // a point in R^0 has no proper faces besides the empty one
        return Ok(Vec::new());
    }
    let width = d + 1;
    let words = nv.div_ceil(64).max(1);
    // Row for vertex v evaluates m - c·v.
    let row = |v: Subset| -> QVector {
        QVector::from_ints((0..width).map(|k| if k == d { 1 } else { -i64::from(v.contains(k)) }))
    };
    let eval = |v: Subset, r: &[BigInt]| -> BigInt {
        v.iter().fold(r[d].clone(), |acc, k| acc - &r[k])
    };

    // Initial simplex: d+1 affinely independent vertices.
    let mut basis_rows: Vec<QVector> = Vec::with_capacity(width);
    let mut basis_idx: Vec<usize> = Vec::with_capacity(width);
    for (i, &v) in p.vertices().iter().enumerate() {
        let mut trial = basis_rows.clone();
        trial.push(row(v));
        if rank(&QMatrix::from_rows(&trial)?) == trial.len() {
            basis_rows = trial;
            basis_idx.push(i);
            if basis_idx.len() == width {
                break;
            }
        }
    }
    debug_assert_eq!(basis_idx.len(), width);
    let inv = invert(&QMatrix::from_rows(&basis_rows)?);
    let mut rays: Vec<Ray> = (0..width)
        .map(|j| {
            let col: Vec<Rational> = (0..width).map(|i| inv.get(i, j).clone()).collect();
            let lcm = col.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
            let ints = col
                .iter()
                .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
                .collect();
            let mut tight = vec![0u64; words];
            for (k, &bi) in basis_idx.iter().enumerate() {
                if k != j {
                    bit_set(&mut tight, bi);
                }
            }
            Ray {
                coords: primitive(ints),
                tight,
            }
        })
        .collect();

    let mut in_basis = vec![false; nv];
    for &i in &basis_idx {
        in_basis[i] = true;
    }
    for (vi, &v) in p.vertices().iter().enumerate() {
        if in_basis[vi] {
            continue;
        }
        let values: Vec<BigInt> = rays.iter().map(|r| eval(v, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();
        if neg.is_empty() {
            for (k, r) in rays.iter_mut().enumerate() {
                if values[k].is_zero() {
                    bit_set(&mut r.tight, vi);
                }
            }
            continue;
        }
        let mut fresh: Vec<Ray> = Vec::new();
        for &pi in &pos {
            for &ni in &neg {
                let common = intersect(&rays[pi].tight, &rays[ni].tight);
                if popcount(&common) + 2 < width {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != pi && k != ni && contains_all(&r.tight, &common));
                if blocked {
                    continue;
                }
                let (vp, vn) = (&values[pi], &values[ni]);
                let coords: Vec<BigInt> = rays[pi]
                    .coords
                    .iter()
                    .zip(&rays[ni].coords)
                    .map(|(xp, xn)| vp * xn - vn * xp)
                    .collect();
                let mut tight = common;
                bit_set(&mut tight, vi);
                fresh.push(Ray {
                    coords: primitive(coords),
                    tight,
                });
            }
        }
        let mut kept: Vec<Ray> = Vec::with_capacity(rays.len() - neg.len() + fresh.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if values[k].is_negative() {
                continue;
            }
            if values[k].is_zero() {
                bit_set(&mut r.tight, vi);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }

    let mut facets: Vec<(BigInt, Vec<BigInt>)> = rays
        .into_iter()
        .map(|r| {
            let mut c = r.coords;
            let m = c.pop().expect("width >= 1");
            (m, c)
        })
        .collect();
    facets.sort();
    facets.dedup();
    Ok(facets
        .into_iter()
        .map(|(m, c)| {
            Inequality::new(
                QVector::new(c.into_iter().map(Rational::from_integer).collect()),
                Rational::from_integer(m),
            )
        })
        .collect())
}

/// Gauss-Jordan inverse of a nonsingular square matrix.
fn invert(m: &QMatrix) -> QMatrix {
    let n = m.rows();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut r: Vec<Rational> = (0..n).map(|j| m.get(i, j).clone()).collect();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).expect("matrix is nonsingular");
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        let prow = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let f = row[col].clone();
                for k in 0..2 * n {
                    row[k] -= &f * &prow[k];
                }
            }
        }
    }
    let mut out = QMatrix::zeros(n, n);
    for (i, row) in a.iter().enumerate() {
        for j in 0..n {
            out.set(i, j, row[n + j].clone());
        }
    }
    out
}

/// Facet list as JSON records; fails if a coefficient does not fit in `i64`.
pub fn facet_records(facets: &[Inequality]) -> Result<Vec<FacetRecord>> {
    facets
        .iter()
        .map(|f| {
            f.to_ints()
                .map(|(coeffs, rhs)| FacetRecord { coeffs, rhs })
                .ok_or_else(|| Error::contract("facet coefficient exceeds i64"))
        })
        .collect()
}
