//! Exact first group cohomology of finitely presented groups acting on integer
//! lattices, restriction to cyclic subgroups, transvection groups and vanishing
//! lattices, plus certification pipelines for restriction-map injectivity.
//!
//! All arithmetic is exact: `BigInt` for lattice data, `BigRational` for
//! vectors in `V ⊗ Q`.

pub mod cohomology;
pub mod json;
pub mod lattice;
pub mod linalg;
pub mod matrix;
pub mod report;
pub mod representation;
pub mod snf;
pub mod vanishing;
pub mod verify;
pub mod words;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use cohomology::{Cocycle, CohomologySpaces, RestrictionClass};
pub use lattice::{BilinearLattice, Isometry, MonodromyFlavor, Parity, Symmetry};
pub use matrix::{IntMatrix, LatticeVector, RatMatrix, RationalVector};
pub use report::{Status, VerificationReport};
pub use representation::Representation;
pub use words::{FreeWord, Letter, Presentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("gram matrix is not {symmetry:?} at entry ({row}, {col})")]
    FormViolation {
        symmetry: Symmetry,
        row: usize,
        col: usize,
    },
    #[error("matrix is not an isometry of the lattice")]
    NotIsometry,
    #[error("{parity:?} flavor requires the other symmetry, lattice is {symmetry:?}")]
    FlavorMismatch { parity: Parity, symmetry: Symmetry },
    #[error("lattice must be alternating")]
    NotAlternating,
    #[error("seed {index} is the zero vector")]
    ZeroSeed { index: usize },
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("element does not act trivially on Hom(V, Z) / j(V)")]
    NotSpSharp,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("generator {generator} out of range (presentation has {generator_count})")]
    UnknownGenerator {
        generator: usize,
        generator_count: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentationError {
    #[error("expected {expected} generator images, found {found}")]
    WrongImageCount { expected: usize, found: usize },
    #[error("image of generator {generator} is {rows}x{cols}, expected {dim}x{dim}")]
    WrongShape {
        generator: usize,
        dim: usize,
        rows: usize,
        cols: usize,
    },
    #[error("image of generator {generator} is singular")]
    Singular { generator: usize },
    #[error("form_preserving requires a lattice")]
    MissingForm,
    #[error("image of generator {generator} does not preserve the form")]
    NotFormPreserving { generator: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("expected {expected} cocycle values, found {found}")]
    WrongValueCount { expected: usize, found: usize },
    #[error("cocycle value {generator} has length {found}, expected {expected}")]
    WrongValueLength {
        generator: usize,
        expected: usize,
        found: usize,
    },
    /// `(ρ(w) − I)·v = φ(w)` has no rational solution; `residual` is the
    /// nonzero class of `φ(w)` in `M / (ρ(w) − I)M`.
    #[error("no v with (rho({word}) - I) v = phi({word})")]
    Unsolvable {
        word: String,
        residual: RationalVector,
    },
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error("malformed instance: {0}")]
    Malformed(String),
    #[error("input is not a cocycle: relator {relator} extends to a nonzero vector")]
    NotCocycle { relator: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Representation(#[from] RepresentationError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
}

/// Search limits shared by orbit enumeration and certificate searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Maximal BFS depth.
    pub depth: usize,
    /// Maximal number of orbit elements.
    pub size: usize,
    /// Maximal exponent tried in power searches.
    pub exponent: u64,
    /// Maximal word length for enumerated test words.
    pub word_length: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            depth: 6,
            size: 5000,
            exponent: 64,
            word_length: 3,
        }
    }
}

/// Outcome of a bounded search: never a false negative, only "not found yet".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bounded<T> {
    Found(T),
    Inconclusive(String),
}

impl<T> Bounded<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Bounded::Found(t) => Some(t),
            Bounded::Inconclusive(_) => None,
        }
    }
}
