//! `φ(g_n ⋯ g_1) = Σ b_k e_k` for cocycles with `φ(g_i) = a_i e_i`, where each
//! `g_i` acts as `x ↦ x − ⟨x, e_i⟩ e_i`.

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::cohomology::{extend_cocycle, Cocycle};
use crate::lattice::BilinearLattice;
use crate::matrix::{to_rational_vec, vec_add, vec_scale, LatticeVector, RatMatrix, RationalVector};
use crate::report::VerificationReport;
use crate::representation::Representation;
use crate::words::{FreeWord, Presentation};
use crate::RepresentationError;

/// `b₁ = a₁`, `b_{k+1} = a_{k+1} − Σ_{i≤k} E_{i,k+1}·b_i` with `E_{ij} = ⟨e_i, e_j⟩`.
///
/// # Panics
/// If `e` is not `a.len()` square.
pub fn expand_product_coefficients(a: &[BigRational], e: &RatMatrix) -> Vec<BigRational> {
    assert!(
        e.rows() == a.len() && e.cols() == a.len(),
        "pairing matrix must be {0}x{0}",
        a.len()
    );
    let mut b: Vec<BigRational> = Vec::with_capacity(a.len());
    for (k, ak) in a.iter().enumerate() {
        let s: BigRational = b.iter().enumerate().map(|(i, bi)| &e[(i, k)] * bi).sum();
        b.push(ak - s);
    }
    b
}

/// `E_{ij} = ⟨e_i, e_j⟩`.
pub fn pairing_matrix(lattice: &BilinearLattice, vectors: &[LatticeVector]) -> RatMatrix {
    let n = vectors.len();
    let mut e = RatMatrix::zeros(n, n);
    for (i, u) in vectors.iter().enumerate() {
        for (j, v) in vectors.iter().enumerate() {
            e[(i, j)] = BigRational::from(lattice.pair(u, v));
        }
    }
    e
}

/// `Σ b_k·e_k`.
pub fn combination(vectors: &[LatticeVector], b: &[BigRational]) -> RationalVector {
    let dim = vectors.first().map_or(0, Vec::len);
    vectors
        .iter()
        .zip(b)
        .fold(vec![BigRational::zero(); dim], |acc, (v, s)| {
            vec_add(&acc, &vec_scale(s, &to_rational_vec(v)))
        })
}

/// Compares the recursion against direct cocycle extension over
/// `g_n ⋯ g_1` on the free group, for the zero cocycle and `trials` random
/// coefficient vectors `a` (numerators in `[−9, 9]`, denominators in `[1, 4]`).
pub fn verify_expand_lemma<R: Rng>(
    lattice: &BilinearLattice,
    vectors: &[LatticeVector],
    trials: usize,
    rng: &mut R,
) -> Result<VerificationReport, RepresentationError> {
    let n = vectors.len();
    let rep = Representation::from_transvections(Presentation::free(n), lattice.clone(), vectors)?;
    let e = pairing_matrix(lattice, vectors);
    let word = FreeWord::descending_product(&(0..n).collect::<Vec<_>>());
    let mut report = VerificationReport::new("expand_lemma");
    report.witness("generators", n).witness("trials", trials + 1);
    for t in 0..=trials {
        let a: Vec<BigRational> = if t == 0 {
            vec![BigRational::zero(); n]
        } else {
            (0..n)
                .map(|_| {
                    BigRational::new(rng.random_range(-9i64..=9).into(), rng.random_range(1i64..=4).into())
                })
                .collect()
        };
        let values = vectors
            .iter()
            .zip(&a)
            .map(|(v, ai)| vec_scale(ai, &to_rational_vec(v)))
            .collect();
        let c = Cocycle::new(&rep, values).expect("one value per generator");
        let direct = extend_cocycle(&rep, &c, &word);
        let b = expand_product_coefficients(&a, &e);
        if direct != combination(vectors, &b) {
            report.fail(serde_json::json!({
                "trial": t,
                "a": a.iter().map(ToString::to_string).collect::<Vec<_>>(),
            }));
            break;
        }
    }
    Ok(report)
}
