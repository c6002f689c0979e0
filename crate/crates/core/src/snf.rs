//! Smith normal form over Z and integral solvability of linear systems.
//!
//! Pivoting always takes the nonzero entry of smallest absolute value in the
//! active submatrix, ties going to the lowest (row, column) index. The result
//! is therefore a deterministic function of the input.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::json::dec;
use crate::matrix::{IntMatrix, LatticeVector};
use crate::LatticeError;

/// `left · A · right = diagonal` with `left`, `right` unimodular.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
    /// The `min(rows, cols)` diagonal entries `d₁ | d₂ | …`, zeros last.
    pub divisors: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Nonzero invariant factors different from one (the torsion of the cokernel).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.divisors[..self.rank]
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

fn smallest_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if a[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn add_row_multiple(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    for j in 0..m.cols() {
        let v = &m[(dst, j)] + q * &m[(src, j)];
        m[(dst, j)] = v;
    }
}

fn add_col_multiple(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    for i in 0..m.rows() {
        let v = &m[(i, dst)] + q * &m[(i, src)];
        m[(i, dst)] = v;
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (rows, cols) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    let mut rank = 0;

    for t in 0..rows.min(cols) {
        while let Some((pi, pj)) = smallest_pivot(&d, t) {
            d.swap_rows(t, pi);
            left.swap_rows(t, pi);
            d.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let p = d[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, t)] / &p);
                add_row_multiple(&mut d, i, t, &q);
                add_row_multiple(&mut left, i, t, &q);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, j)] / &p);
                add_col_multiple(&mut d, j, t, &q);
                add_col_multiple(&mut right, j, t, &q);
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }
            // Row and column are clear; enforce divisibility of the remainder.
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&p))
            });
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    add_row_multiple(&mut d, t, i, &one);
                    add_row_multiple(&mut left, t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_zero() {
            break;
        }
        if d[(t, t)].is_negative() {
            for j in 0..cols {
                d[(t, j)] = -d[(t, j)].clone();
            }
            for j in 0..rows {
                left[(t, j)] = -left[(t, j)].clone();
            }
        }
        rank += 1;
    }

    let divisors = (0..rows.min(cols)).map(|i| d[(i, i)].clone()).collect();
    SmithForm {
        left,
        diagonal: d,
        right,
        divisors,
        rank,
    }
}

/// A basis, in row-echelon form, of the Z-module spanned by `vectors`.
///
/// Each vector is merged into the echelon rows with extended-gcd row
/// operations; entries right of a pivot are kept reduced modulo the pivots
/// below, which bounds coefficient growth.
pub fn lattice_basis(dim: usize, vectors: &[LatticeVector]) -> Vec<LatticeVector> {
    let mut rows: Vec<Option<LatticeVector>> = vec![None; dim];
    for v in vectors {
        assert_eq!(v.len(), dim, "vector length mismatch");
        let mut v = v.clone();
        for p in 0..dim {
            if v[p].is_zero() {
                continue;
            }
            match rows[p].take() {
                None => {
                    if v[p].is_negative() {
                        v.iter_mut().for_each(|x| *x = -x.clone());
                    }
                    rows[p] = Some(v);
                    break;
                }
                Some(b) => {
                    let e = b[p].extended_gcd(&v[p]);
                    let (bp, vp) = (&b[p] / &e.gcd, &v[p] / &e.gcd);
                    let mut top: LatticeVector =
                        b.iter().zip(&v).map(|(x, y)| &e.x * x + &e.y * y).collect();
                    if top[p].is_negative() {
                        top.iter_mut().for_each(|x| *x = -x.clone());
                    }
                    v = b.iter().zip(&v).map(|(x, y)| &vp * x - &bp * y).collect();
                    rows[p] = Some(top);
                }
            }
        }
        // Reduce above-pivot entries from the bottom up.
        for p in (0..dim).rev() {
            let Some(pivot_row) = rows[p].clone() else { continue };
            for row in rows[..p].iter_mut().flatten() {
                let q = row[p].div_floor(&pivot_row[p]);
                if !q.is_zero() {
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                }
            }
        }
    }
    rows.into_iter().flatten().collect()
}

/// Why `A·x = b` has no integral solution, in Smith coordinates `D·y = U·b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Obstruction {
    /// Row of the diagonal system that fails.
    pub index: usize,
    /// Diagonal entry at that row; zero for rows beyond the rank.
    #[serde(with = "dec")]
    pub divisor: BigInt,
    /// Transformed right-hand side entry it fails to divide.
    #[serde(with = "dec")]
    pub value: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solvability {
    Solution(LatticeVector),
    Obstructed(Obstruction),
}

impl Solvability {
    pub fn solution(self) -> Option<LatticeVector> {
        match self {
            Solvability::Solution(x) => Some(x),
            Solvability::Obstructed(_) => None,
        }
    }
}

/// Decides whether `A·x = b` has a solution over the integers.
pub fn integral_membership(a: &IntMatrix, b: &[BigInt]) -> Result<Solvability, LatticeError> {
    if a.rows() != b.len() {
        return Err(LatticeError::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let snf = smith_normal_form(a);
    Ok(solve_with(&snf, b))
}

/// Same as [`integral_membership`] with a precomputed Smith form of `A`.
pub fn solve_with(snf: &SmithForm, b: &[BigInt]) -> Solvability {
    let c = snf.left.mul_vec(b);
    let mut y = vec![BigInt::zero(); snf.right.rows()];
    for (i, ci) in c.iter().enumerate() {
        let di = if i < snf.rank {
            snf.divisors[i].clone()
        } else {
            BigInt::zero()
        };
        if di.is_zero() {
            if !ci.is_zero() {
                return Solvability::Obstructed(Obstruction {
                    index: i,
                    divisor: di,
                    value: ci.clone(),
                });
            }
        } else {
            let (q, r) = ci.div_rem(&di);
            if !r.is_zero() {
                return Solvability::Obstructed(Obstruction {
                    index: i,
                    divisor: di,
                    value: ci.clone(),
                });
            }
            y[i] = q;
        }
    }
    Solvability::Solution(snf.right.mul_vec(&y))
}
