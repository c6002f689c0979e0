//! Exact linear algebra over Q: echelon forms, kernels, particular solutions
//! and projections onto a fixed complement of a subspace.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::matrix::{is_zero_vec, RatMatrix, RationalVector};

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: RatMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Gauss-Jordan elimination; pivots are taken in column order, first nonzero
/// row at or below the current pivot row.
pub fn rref(m: &RatMatrix) -> Rref {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = a[(r, c)].recip();
        for j in c..cols {
            let v = &a[(r, j)] * &inv;
            a[(r, j)] = v;
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..cols {
                let v = &a[(i, j)] - &f * &a[(r, j)];
                a[(i, j)] = v;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, pivots }
}

pub fn rank(m: &RatMatrix) -> usize {
    rref(m).rank()
}

/// Basis of `{x : m·x = 0}`, one vector per free column, in column order.
pub fn kernel(m: &RatMatrix) -> Vec<RationalVector> {
    let Rref { matrix: r, pivots } = rref(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[(row, f)].clone();
            }
            v
        })
        .collect()
}

/// A particular solution of `m·x = b` with all free variables set to zero.
pub fn solve(m: &RatMatrix, b: &[BigRational]) -> Option<RationalVector> {
    assert_eq!(m.rows(), b.len(), "right-hand side length mismatch");
    let aug = m.hstack(&RatMatrix::from_columns(b.len(), &[b.to_vec()]));
    let Rref { matrix: r, pivots } = rref(&aug);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); m.cols()];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = r[(row, m.cols())].clone();
    }
    Some(x)
}

pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    assert!(m.is_square(), "inverse of a non-square matrix");
    let n = m.rows();
    let aug = m.hstack(&RatMatrix::identity(n));
    let Rref { matrix: r, pivots } = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let mut inv = RatMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv[(i, j)] = r[(i, n + j)].clone();
        }
    }
    Some(inv)
}

/// Indices of a maximal linearly independent subset, chosen greedily in
/// input order.
pub fn independent_subset(vectors: &[RationalVector]) -> Vec<usize> {
    let mut span = Subspace::zero(vectors.first().map_or(0, Vec::len));
    let mut chosen = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        if span.insert(v) {
            chosen.push(i);
        }
    }
    chosen
}

/// Coordinates of `v` in terms of `basis`, which must be linearly independent.
pub fn coordinates(basis: &[RationalVector], v: &[BigRational]) -> Option<RationalVector> {
    let m = RatMatrix::from_columns(v.len(), basis);
    solve(&m, v)
}

/// A subspace of Q^n held in reduced row echelon form.
///
/// [`Subspace::reduce`] projects along the subspace onto the complement spanned
/// by the standard basis vectors at non-pivot positions, so the projection of
/// `v` is zero exactly when `v` lies in the subspace.
#[derive(Clone, Debug)]
pub struct Subspace {
    dim: usize,
    rows: Vec<RationalVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(dim: usize) -> Self {
        Subspace {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by(dim: usize, vectors: &[RationalVector]) -> Self {
        let mut s = Self::zero(dim);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    /// Column space of `m`.
    pub fn column_space(m: &RatMatrix) -> Self {
        let cols: Vec<_> = (0..m.cols()).map(|j| m.column(j)).collect();
        Self::spanned_by(m.rows(), &cols)
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Echelon basis, sorted by pivot position.
    pub fn basis(&self) -> &[RationalVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Positions of the standard basis vectors spanning the fixed complement.
    pub fn complement_positions(&self) -> Vec<usize> {
        (0..self.dim).filter(|p| !self.pivots.contains(p)).collect()
    }

    /// `v` with the subspace components eliminated (zero at pivot positions).
    pub fn residual(&self, v: &[BigRational]) -> RationalVector {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut r = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p].is_zero() {
                continue;
            }
            let f = r[p].clone();
            for (x, y) in r.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
        r
    }

    /// Coordinates of the class of `v` in the quotient, on the fixed complement.
    pub fn reduce(&self, v: &[BigRational]) -> RationalVector {
        let r = self.residual(v);
        self.complement_positions()
            .into_iter()
            .map(|p| r[p].clone())
            .collect()
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        is_zero_vec(&self.residual(v))
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[BigRational]) -> bool {
        let mut r = self.residual(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&r) {
                *x -= &f * y;
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }
}
