//! Exact rational linear algebra: rank, affine dimension and LP feasibility.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QVector(Vec<Rational>);

impl QVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        QVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        QVector(vec![Rational::zero(); dim])
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(it: I) -> Self {
        QVector(it.into_iter().map(rat).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &QVector) -> Result<Rational> {
        check_dim(self.dim(), other.dim())?;
        Ok(self
            .0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b))
    }

    pub fn sub(&self, other: &QVector) -> Result<QVector> {
        check_dim(self.dim(), other.dim())?;
        Ok(QVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

impl Index<usize> for QVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl fmt::Display for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: &[QVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, QVector::dim);
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            check_dim(cols, r.dim())?;
            entries.extend(r.0.iter().cloned());
        }
        Ok(QMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    /// Builds a matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[QVector]) -> Result<Self> {
        let mut m = QMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            check_dim(rows, c.dim())?;
            for i in 0..rows {
                m.entries[i * m.cols + j] = c.0[i].clone();
            }
        }
        Ok(m)
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<QVector> = rows.iter().map(|r| QVector::from_ints(r.iter().copied())).collect();
        Self::from_rows(&rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, x: &QVector) -> Result<QVector> {
        check_dim(self.cols, x.dim())?;
        Ok(QVector(
            (0..self.rows)
                .map(|i| {
                    (0..self.cols).fold(Rational::zero(), |acc, j| acc + self.get(i, j) * &x.0[j])
                })
                .collect(),
        ))
    }

    fn row_vec(&self, i: usize) -> Vec<Rational> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Rank over the rationals by fraction-exact Gaussian elimination.
pub fn rank(m: &QMatrix) -> usize {
    let mut rows: Vec<Vec<Rational>> = (0..m.rows).map(|i| m.row_vec(i)).collect();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let prow = &head[rank];
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] / &prow[col];
            for k in col..m.cols {
                let delta = &factor * &prow[k];
                row[k] -= delta;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Dimension of the affine span of `points`; `None` for an empty input.
pub fn affine_dim(points: &[QVector]) -> Result<Option<usize>> {
    let Some(first) = points.first() else {
        return Ok(None);
    };
    let diffs = points[1..]
        .iter()
        .map(|p| p.sub(first))
        .collect::<Result<Vec<_>>>()?;
    if diffs.is_empty() {
        return Ok(Some(0));
    }
    Ok(Some(rank(&QMatrix::from_rows(&diffs)?)))
}

/// Decides whether `{x >= 0 : lhs * x = rhs}` is nonempty.
pub fn lp_feasible(lhs: &QMatrix, rhs: &QVector) -> Result<bool> {
    Ok(lp_certificate(lhs, rhs)?.is_some())
}

/// Returns a nonnegative `x` with `lhs * x = rhs`, or `None` when none exists.
///
/// Columns forced to zero by a sign-definite row with zero right-hand side are
/// removed first; the rest is decided by phase-one simplex with Bland's rule.
pub fn lp_certificate(lhs: &QMatrix, rhs: &QVector) -> Result<Option<QVector>> {
    check_dim(lhs.rows, rhs.dim())?;
    let (m, n) = (lhs.rows, lhs.cols);

    let mut live_rows: Vec<bool> = vec![true; m];
    let mut live_cols: Vec<bool> = vec![true; n];
    loop {
        let mut changed = false;
        for i in 0..m {
            if !live_rows[i] {
                continue;
            }
            let mut pos = false;
            let mut neg = false;
            for j in (0..n).filter(|&j| live_cols[j]) {
                let v = lhs.get(i, j);
                pos |= v.is_positive();
                neg |= v.is_negative();
            }
            let b = &rhs[i];
            if !pos && !neg {
                if !b.is_zero() {
                    return Ok(None);
                }
                live_rows[i] = false;
                changed = true;
            } else if b.is_zero() && !(pos && neg) {
                // sum of same-sign terms is zero: every contributing column is 0
                for (j, live) in live_cols.iter_mut().enumerate() {
                    if *live && !lhs.get(i, j).is_zero() {
                        *live = false;
                    }
                }
                live_rows[i] = false;
                changed = true;
            } else if (b.is_positive() && !pos) || (b.is_negative() && !neg) {
                return Ok(None);
            }
        }
        if !changed {
            break;
        }
    }

    let rows: Vec<usize> = (0..m).filter(|&i| live_rows[i]).collect();
    let cols: Vec<usize> = (0..n).filter(|&j| live_cols[j]).collect();
    let reduced = phase_one(lhs, rhs, &rows, &cols);
    Ok(reduced.map(|vals| {
        let mut x = vec![Rational::zero(); n];
        for (k, &j) in cols.iter().enumerate() {
            x[j] = vals[k].clone();
        }
        QVector(x)
    }))
}

/// Phase-one simplex on the sub-system selected by `rows` x `cols`.
fn phase_one(lhs: &QMatrix, rhs: &QVector, rows: &[usize], cols: &[usize]) -> Option<Vec<Rational>> {
    let m = rows.len();
    let n = cols.len();
    if m == 0 {
        return Some(vec![Rational::zero(); n]);
    }
    // Tableau columns: n structural, m artificial, then rhs.
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (r, &i) in rows.iter().enumerate() {
        let flip = rhs[i].is_negative();
        let mut row = vec![Rational::zero(); width];
        for (k, &j) in cols.iter().enumerate() {
            let v = lhs.get(i, j).clone();
            row[k] = if flip { -v } else { v };
        }
        row[n + r] = Rational::one();
        row[width - 1] = if flip { -rhs[i].clone() } else { rhs[i].clone() };
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced-cost row for "maximize -(sum of artificials)"; a positive entry
    // on a structural column means that column improves the objective.
    let mut obj = vec![Rational::zero(); width];
    for row in &t {
        for k in 0..n {
            obj[k] += &row[k];
        }
        obj[width - 1] += &row[width - 1];
    }

    let cap = 50_000 + 100 * (n + m) * (n + m);
    let mut iterations = 0usize;
    while let Some(enter) = (0..n).find(|&k| obj[k].is_positive()) {
        let mut leave: Option<usize> = None;
        for r in 0..m {
            if !t[r][enter].is_positive() {
                continue;
            }
            leave = match leave {
                None => Some(r),
                Some(l) => {
                    let cur = &t[r][width - 1] / &t[r][enter];
                    let best = &t[l][width - 1] / &t[l][enter];
                    if cur < best || (cur == best && basis[r] < basis[l]) {
                        Some(r)
                    } else {
                        Some(l)
                    }
                }
            };
        }
        // The phase-one objective is bounded below by zero, so a positive
        // reduced cost always has a blocking row.
        let leave = leave.expect("phase-one simplex is bounded");
        pivot(&mut t, &mut obj, leave, enter);
        basis[leave] = enter;
        iterations += 1;
        assert!(
            iterations <= cap,
            "simplex exceeded {cap} pivots; Bland's rule should prevent cycling"
        );
    }

    if !obj[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = t[r][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Rational>], obj: &mut [Rational], leave: usize, enter: usize) {
    let width = obj.len();
    let p = t[leave][enter].clone();
    for v in t[leave].iter_mut() {
        *v /= &p;
    }
    let prow = t[leave].clone();
    for (r, row) in t.iter_mut().enumerate() {
        if r == leave || row[enter].is_zero() {
            continue;
        }
        let f = row[enter].clone();
        for k in 0..width {
            if !prow[k].is_zero() {
                row[k] -= &f * &prow[k];
            }
        }
    }
    if !obj[enter].is_zero() {
        let f = obj[enter].clone();
        for k in 0..width {
            if !prow[k].is_zero() {
                obj[k] -= &f * &prow[k];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_int_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), 3);
        assert_eq!(rank(&QMatrix::zeros(2, 4)), 0);
        assert_eq!(rank(&m(&[&[1, 0, 1], &[0, 1, 0], &[1, 1, 1]])), 2);
    }

    #[test]
    fn lp_examples() {
        assert!(lp_feasible(&m(&[&[1]]), &QVector::from_ints([1])).unwrap());
        assert!(!lp_feasible(&m(&[&[1]]), &QVector::from_ints([-1])).unwrap());
        // columns (1,0), (0,1), (1,1)
        let lhs = m(&[&[1, 0, 1], &[0, 1, 1]]);
        let rhs = QVector::from_ints([2, 1]);
        let x = lp_certificate(&lhs, &rhs).unwrap().unwrap();
        assert_eq!(lhs.mul_vec(&x).unwrap(), rhs);
        assert!(x.entries().iter().all(|v| !v.is_negative()));
    }

    #[test]
    fn lp_empty_system() {
        let lhs = QMatrix::zeros(2, 0);
        assert!(lp_feasible(&lhs, &QVector::zeros(2)).unwrap());
        assert!(!lp_feasible(&lhs, &QVector::from_ints([0, 1])).unwrap());
        assert!(lp_feasible(&QMatrix::zeros(0, 0), &QVector::zeros(0)).unwrap());
    }

    #[test]
    fn lp_dimension_mismatch() {
        assert!(matches!(
            lp_feasible(&m(&[&[1]]), &QVector::from_ints([1, 2])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn lp_needs_mixed_signs() {
        // x - y = 1, x + y = 3 -> x = 2, y = 1
        let lhs = m(&[&[1, -1], &[1, 1]]);
        let rhs = QVector::from_ints([1, 3]);
        let x = lp_certificate(&lhs, &rhs).unwrap().unwrap();
        assert_eq!(x, QVector::from_ints([2, 1]));
        // x - y = 1, x + y = -3 has no nonnegative solution
        assert!(!lp_feasible(&lhs, &QVector::from_ints([1, -3])).unwrap());
    }

    #[test]
    fn affine_dim_examples() {
        assert_eq!(affine_dim(&[]).unwrap(), None);
        assert_eq!(affine_dim(&[QVector::from_ints([1, 2])]).unwrap(), Some(0));
        let tri = [
            QVector::from_ints([0, 0, 0]),
            QVector::from_ints([1, 0, 0]),
            QVector::from_ints([0, 1, 0]),
        ];
        assert_eq!(affine_dim(&tri).unwrap(), Some(2));
        let mixed = [QVector::from_ints([0]), QVector::from_ints([0, 1])];
        assert!(affine_dim(&mixed).is_err());
    }
}
