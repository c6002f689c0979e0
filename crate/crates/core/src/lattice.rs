//! Integer lattices with a symmetric or alternating Gram matrix, transvections
//! and isometries.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::json::Dec;
use crate::matrix::{IntMatrix, LatticeVector};
use crate::LatticeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetry {
    Symmetric,
    Alternating,
}

/// A free module `Z^rank` with an integer bilinear form `⟨u, v⟩ = uᵀ·gram·v`.
///
/// Degenerate forms are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeJson", into = "LatticeJson")]
pub struct BilinearLattice {
    gram: IntMatrix,
    symmetry: Symmetry,
}

#[derive(Serialize, Deserialize)]
struct LatticeJson {
    rank: usize,
    symmetry: Symmetry,
    gram: IntMatrix,
}

impl TryFrom<LatticeJson> for BilinearLattice {
    type Error = LatticeError;

    fn try_from(j: LatticeJson) -> Result<Self, LatticeError> {
        // An empty gram array carries no column count.
        let gram = if j.rank == 0 && j.gram.rows() == 0 {
            IntMatrix::zeros(0, 0)
        } else {
            j.gram
        };
        if gram.rows() != j.rank {
            return Err(LatticeError::DimensionMismatch {
                expected: j.rank,
                found: gram.rows(),
            });
        }
        BilinearLattice::new(gram, j.symmetry)
    }
}

impl From<BilinearLattice> for LatticeJson {
    fn from(l: BilinearLattice) -> Self {
        LatticeJson {
            rank: l.rank(),
            symmetry: l.symmetry,
            gram: l.gram,
        }
    }
}

impl BilinearLattice {
    pub fn new(gram: IntMatrix, symmetry: Symmetry) -> Result<Self, LatticeError> {
        if !gram.is_square() {
            return Err(LatticeError::NotSquare {
                rows: gram.rows(),
                cols: gram.cols(),
            });
        }
        let n = gram.rows();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (&gram[(i, j)], &gram[(j, i)]);
                let ok = match symmetry {
                    Symmetry::Symmetric => a == b,
                    Symmetry::Alternating => *a == -b && (i != j || a.is_zero()),
                };
                if !ok {
                    return Err(LatticeError::FormViolation { symmetry, row: i, col: j });
                }
            }
        }
        Ok(BilinearLattice { gram, symmetry })
    }

    /// Orthogonal sum of `planes` hyperbolic planes `[[0, 1], [-1, 0]]`.
    pub fn hyperbolic(planes: usize) -> Self {
        let mut gram = IntMatrix::zeros(2 * planes, 2 * planes);
        for p in 0..planes {
            gram[(2 * p, 2 * p + 1)] = BigInt::one();
            gram[(2 * p + 1, 2 * p)] = -BigInt::one();
        }
        BilinearLattice {
            gram,
            symmetry: Symmetry::Alternating,
        }
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    pub fn determinant(&self) -> BigInt {
        self.gram.determinant()
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.determinant().is_zero()
    }

    pub fn is_unimodular(&self) -> bool {
        self.determinant().abs().is_one()
    }

    fn check_len(&self, v: &[BigInt]) -> Result<(), LatticeError> {
        if v.len() == self.rank() {
            Ok(())
        } else {
            Err(LatticeError::DimensionMismatch {
                expected: self.rank(),
                found: v.len(),
            })
        }
    }

    /// `uᵀ · gram · v`.
    pub fn pairing(&self, u: &[BigInt], v: &[BigInt]) -> Result<BigInt, LatticeError> {
        self.check_len(u)?;
        self.check_len(v)?;
        Ok(self.gram.bilinear(u, v))
    }

    pub(crate) fn pair(&self, u: &[BigInt], v: &[BigInt]) -> BigInt {
        self.gram.bilinear(u, v)
    }

    /// `T_v(x) = x − ⟨x, v⟩ v` applied to a single vector.
    pub fn apply_transvection(&self, v: &[BigInt], x: &[BigInt]) -> LatticeVector {
        let c = self.pair(x, v);
        x.iter().zip(v).map(|(xi, vi)| xi - &c * vi).collect()
    }

    /// `T_v⁻¹(x) = x + ⟨x, v⟩ v`; valid whenever `⟨v, v⟩ = 0`, in particular
    /// for every alternating form.
    pub fn apply_inverse_transvection(&self, v: &[BigInt], x: &[BigInt]) -> LatticeVector {
        let c = self.pair(x, v);
        x.iter().zip(v).map(|(xi, vi)| xi + &c * vi).collect()
    }

    pub fn transvection(&self, v: &[BigInt]) -> Result<Transvection, LatticeError> {
        self.check_len(v)?;
        let n = self.rank();
        // Column j is T_v(e_j) = e_j − ⟨e_j, v⟩ v with ⟨e_j, v⟩ = (gram·v)_j.
        let gv = self.gram.mul_vec(v);
        let mut m = IntMatrix::identity(n);
        for j in 0..n {
            for i in 0..n {
                let x = &m[(i, j)] - &gv[j] * &v[i];
                m[(i, j)] = x;
            }
        }
        let isometric = self.is_isometry(&m);
        Ok(Transvection {
            vector: v.to_vec(),
            matrix: m,
            isometric,
        })
    }

    /// `mᵀ · gram · m = gram` and `det m = ±1`.
    pub fn is_isometry(&self, m: &IntMatrix) -> bool {
        m.is_square()
            && m.rows() == self.rank()
            && (&(&m.transpose() * &self.gram) * m) == self.gram
            && m.determinant().abs().is_one()
    }

    pub fn isometry(&self, m: IntMatrix) -> Result<Isometry, LatticeError> {
        if self.is_isometry(&m) {
            Ok(Isometry(m))
        } else {
            Err(LatticeError::NotIsometry)
        }
    }
}

/// An element of the isometry group of some [`BilinearLattice`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Isometry(IntMatrix);

impl Isometry {
    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }
}

/// `T_v` as a matrix. `isometric` records whether it preserves the form; it
/// always does for alternating forms and for symmetric forms when `⟨v, v⟩ = 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transvection {
    pub vector: LatticeVector,
    pub matrix: IntMatrix,
    pub isometric: bool,
}

impl Transvection {
    pub fn isometry(&self) -> Option<Isometry> {
        self.isometric.then(|| Isometry(self.matrix.clone()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

/// Parity of the ambient dimension `d` and the sign `ε_d = (−1)^{d(d−1)/2}`
/// relating the intersection form to the pairing used by transvections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MonodromyFlavor {
    pub parity: Parity,
    pub epsilon: i8,
}

impl MonodromyFlavor {
    pub fn for_dimension(d: u64) -> Self {
        let parity = if d % 2 == 1 { Parity::Odd } else { Parity::Even };
        // d(d−1)/2 is even exactly when d ≡ 0, 1 (mod 4).
        let epsilon = match d % 4 {
            0 | 1 => 1,
            _ => -1,
        };
        MonodromyFlavor { parity, epsilon }
    }

    pub fn expected_symmetry(&self) -> Symmetry {
        match self.parity {
            Parity::Odd => Symmetry::Symmetric,
            Parity::Even => Symmetry::Alternating,
        }
    }

    /// Scales an intersection form by `ε_d`.
    pub fn sign_adjusted(&self, intersection: &IntMatrix) -> IntMatrix {
        intersection.scale(&BigInt::from(self.epsilon))
    }
}

/// Exact order of a transvection, as far as it can be certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TransvectionOrder {
    /// `T_v` is the identity.
    One,
    /// `T_v ≠ I` and `T_v² = I`.
    Two,
    /// `T_v = I + N` with `N ≠ 0` and `N² = 0`, so `T_vᵏ = I + kN ≠ I` for `k ≠ 0`.
    Infinite { nilpotent: IntMatrix },
    /// None of the above certificates applies.
    Undetermined,
}

pub fn picard_lefschetz_order(
    lattice: &BilinearLattice,
    v: &[BigInt],
    flavor: MonodromyFlavor,
) -> Result<TransvectionOrder, LatticeError> {
    if flavor.expected_symmetry() != lattice.symmetry() {
        return Err(LatticeError::FlavorMismatch {
            parity: flavor.parity,
            symmetry: lattice.symmetry(),
        });
    }
    let t = lattice.transvection(v)?.matrix;
    Ok(classify_order(&t))
}

pub(crate) fn classify_order(t: &IntMatrix) -> TransvectionOrder {
    if t.is_identity() {
        return TransvectionOrder::One;
    }
    if (t * t).is_identity() {
        return TransvectionOrder::Two;
    }
    let n = t - &IntMatrix::identity(t.rows());
    if (&n * &n).is_zero() {
        return TransvectionOrder::Infinite { nilpotent: n };
    }
    TransvectionOrder::Undetermined
}

/// Serializable view of an integer vector.
pub fn vector_json(v: &[BigInt]) -> Vec<Dec<BigInt>> {
    v.iter().cloned().map(Dec).collect()
}
