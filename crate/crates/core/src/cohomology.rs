//! `Z¹`, `B¹`, `H¹` of a represented group, restriction to cyclic subgroups and
//! coboundary adjustment.
//!
//! A cocycle is stored by its values on the generators. Its extension to a
//! word `w = l₁ l₂ ⋯ l_k` is `Σ_j ρ(l₁⋯l_{j−1})·φ(l_j)`, with
//! `φ(g⁻¹) = −ρ(g)⁻¹·φ(g)`. That sum is linear in the generator values, so
//! each relator contributes one block row `[F₀(r) | F₁(r) | …]` and `Z¹` is the
//! kernel of the stacked blocks.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::json::dec_vecs;
use crate::linalg::{kernel, solve, Subspace};
use crate::matrix::{is_zero_vec, vec_add, vec_scale, vec_sub, RatMatrix, RationalVector};
use crate::representation::Representation;
use crate::words::FreeWord;
use crate::CohomologyError;

/// A 1-cocycle given by its values `φ(g_i)`, one per generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cocycle {
    #[serde(with = "dec_vecs")]
    values: Vec<RationalVector>,
}

impl Cocycle {
    /// Checks that there is one value of the right length per generator. The
    /// relator conditions are not checked; see [`is_cocycle`].
    pub fn new(rep: &Representation, values: Vec<RationalVector>) -> Result<Self, CohomologyError> {
        if values.len() != rep.generator_count() {
            return Err(CohomologyError::WrongValueCount {
                expected: rep.generator_count(),
                found: values.len(),
            });
        }
        for (g, v) in values.iter().enumerate() {
            if v.len() != rep.dim() {
                return Err(CohomologyError::WrongValueLength {
                    generator: g,
                    expected: rep.dim(),
                    found: v.len(),
                });
            }
        }
        Ok(Cocycle { values })
    }

    pub fn zero(rep: &Representation) -> Self {
        Cocycle {
            values: vec![vec![BigRational::zero(); rep.dim()]; rep.generator_count()],
        }
    }

    pub fn values(&self) -> &[RationalVector] {
        &self.values
    }

    pub fn value(&self, g: usize) -> &RationalVector {
        &self.values[g]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| is_zero_vec(v))
    }

    /// All generator values concatenated.
    pub fn flatten(&self) -> RationalVector {
        self.values.concat()
    }

    pub fn from_flat(dim: usize, flat: &[BigRational]) -> Self {
        let values = if dim == 0 {
            Vec::new()
        } else {
            flat.chunks(dim).map(<[BigRational]>::to_vec).collect()
        };
        Cocycle { values }
    }

    pub fn add(&self, other: &Cocycle) -> Cocycle {
        Cocycle {
            values: self.values.iter().zip(&other.values).map(|(a, b)| vec_add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Cocycle) -> Cocycle {
        Cocycle {
            values: self.values.iter().zip(&other.values).map(|(a, b)| vec_sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, s: &BigRational) -> Cocycle {
        Cocycle {
            values: self.values.iter().map(|v| vec_scale(s, v)).collect(),
        }
    }
}

/// `∂x : g ↦ ρ(g)·x − x`.
pub fn coboundary(rep: &Representation, x: &[BigRational]) -> Cocycle {
    let values = rep
        .images()
        .iter()
        .map(|a| vec_sub(&a.mul_vec(x), x))
        .collect();
    Cocycle { values }
}

/// Value of the cocycle on an arbitrary word.
///
/// # Panics
/// If `w` mentions a generator the representation does not have.
pub fn extend_cocycle(rep: &Representation, c: &Cocycle, w: &FreeWord) -> RationalVector {
    // Right to left: φ(l·u) = φ(l) + ρ(l)·φ(u), so only matrix-vector
    // products are needed.
    let mut acc = vec![BigRational::zero(); rep.dim()];
    for l in w.letters().iter().rev() {
        let g = l.generator;
        assert!(g < rep.generator_count(), "word uses unknown generator {g}");
        let (step, value) = if l.exponent > 0 {
            (rep.image(g), c.values[g].clone())
        } else {
            let inv = rep.inverse_image(g);
            (inv, inv.mul_vec(&c.values[g]).into_iter().map(|x| -x).collect())
        };
        // φ(h^k) = (1 + h + ⋯ + h^{k−1})·φ(h).
        let mut power_sum = vec![BigRational::zero(); rep.dim()];
        let mut term = value;
        for _ in 0..l.exponent.unsigned_abs() {
            power_sum = vec_add(&power_sum, &term);
            term = step.mul_vec(&term);
            acc = step.mul_vec(&acc);
        }
        acc = vec_add(&power_sum, &acc);
    }
    acc
}

/// Matrices `F_i(w)` with `extend(c, w) = Σ_i F_i(w)·φ(g_i)` for every `c`.
pub fn fox_coefficients(rep: &Representation, w: &FreeWord) -> Vec<RatMatrix> {
    let n = rep.dim();
    let mut f = vec![RatMatrix::zeros(n, n); rep.generator_count()];
    let mut prefix = RatMatrix::identity(n);
    for l in w.letters() {
        let g = l.generator;
        assert!(g < rep.generator_count(), "word uses unknown generator {g}");
        for _ in 0..l.exponent.unsigned_abs() {
            if l.exponent > 0 {
                f[g] = &f[g] + &prefix;
                prefix = &prefix * rep.image(g);
            } else {
                prefix = &prefix * rep.inverse_image(g);
                f[g] = &f[g] - &prefix;
            }
        }
    }
    f
}

/// Rows `[F₀(r) | F₁(r) | …]` for every relator `r`, stacked.
pub fn relator_matrix(rep: &Representation) -> RatMatrix {
    let n = rep.dim();
    let cols = n * rep.generator_count();
    let mut m = RatMatrix::zeros(0, cols);
    for r in rep.presentation().relators() {
        let blocks = fox_coefficients(rep, r);
        let mut row = RatMatrix::zeros(n, 0);
        for b in &blocks {
            row = row.hstack(b);
        }
        if row.cols() == 0 {
            row = RatMatrix::zeros(n, cols);
        }
        m = m.vstack(&row);
    }
    m
}

/// The index of the first relator on which `c` does not extend to zero.
pub fn first_violated_relator(rep: &Representation, c: &Cocycle) -> Option<usize> {
    rep.presentation()
        .relators()
        .iter()
        .position(|r| !is_zero_vec(&extend_cocycle(rep, c, r)))
}

pub fn is_cocycle(rep: &Representation, c: &Cocycle) -> bool {
    first_violated_relator(rep, c).is_none()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologySpaces {
    pub z1_basis: Vec<Cocycle>,
    pub b1_basis: Vec<Cocycle>,
    /// Cocycles whose classes form a basis of `H¹`; they extend `b1_basis` to
    /// a basis of `Z¹`.
    pub h1_basis: Vec<Cocycle>,
    pub h1_dimension: usize,
}

impl CohomologySpaces {
    pub fn z1_dimension(&self) -> usize {
        self.z1_basis.len()
    }

    pub fn b1_dimension(&self) -> usize {
        self.b1_basis.len()
    }
}

/// Computes `Z¹`, `B¹` and a complement representing `H¹`. The relators are
/// assumed to hold in the representation.
pub fn cocycle_space(rep: &Representation) -> CohomologySpaces {
    let n = rep.dim();
    let total = n * rep.generator_count();
    let z1: Vec<RationalVector> = if rep.presentation().relators().is_empty() {
        (0..total)
            .map(|k| {
                let mut e = vec![BigRational::zero(); total];
                e[k] = BigRational::one();
                e
            })
            .collect()
    } else {
        kernel(&relator_matrix(rep))
    };

    let mut b1 = Subspace::zero(total);
    for k in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[k] = BigRational::one();
        b1.insert(&coboundary(rep, &e).flatten());
    }
    let b1_basis: Vec<Cocycle> = b1.basis().iter().map(|v| Cocycle::from_flat(n, v)).collect();

    let mut span = b1;
    let mut h1_basis = Vec::new();
    for z in &z1 {
        if span.insert(z) {
            h1_basis.push(Cocycle::from_flat(n, z));
        }
    }
    CohomologySpaces {
        z1_basis: z1.iter().map(|v| Cocycle::from_flat(n, v)).collect(),
        h1_dimension: h1_basis.len(),
        b1_basis,
        h1_basis,
    }
}

/// Stacked `ρ(g_i) − I`; its kernel is `M^G` and `∂x` is its product with `x`.
fn coboundary_matrix(rep: &Representation) -> RatMatrix {
    let id = RatMatrix::identity(rep.dim());
    let mut m = RatMatrix::zeros(0, rep.dim());
    for a in rep.images() {
        m = m.vstack(&(a - &id));
    }
    m
}

/// Some `x` with `c = ∂x`, if one exists.
pub fn is_coboundary(rep: &Representation, c: &Cocycle) -> Option<RationalVector> {
    solve(&coboundary_matrix(rep), &c.flatten())
}

/// `c(g_i) = ρ(g_i)·x − x` for every generator.
pub fn is_witness(rep: &Representation, c: &Cocycle, x: &[BigRational]) -> bool {
    coboundary(rep, x) == *c
}

/// The class of `φ(g)` in `H¹(⟨g⟩, M) ≅ M / (g − I)M` for `g = ρ(w)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionClass {
    pub element: FreeWord,
    #[serde(with = "crate::json::dec_vec")]
    pub value: RationalVector,
    #[serde(with = "crate::json::dec_vecs")]
    pub image_basis: Vec<RationalVector>,
    /// Coordinates on the fixed complement of `(g − I)M`.
    #[serde(with = "crate::json::dec_vec")]
    pub reduced: RationalVector,
}

impl RestrictionClass {
    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.reduced)
    }
}

fn image_of(rep: &Representation, w: &FreeWord) -> Subspace {
    let g = rep.evaluate_word(w);
    Subspace::column_space(&(&g - &RatMatrix::identity(rep.dim())))
}

pub fn restriction_to_cyclic(rep: &Representation, c: &Cocycle, w: &FreeWord) -> RestrictionClass {
    let image = image_of(rep, w);
    let value = extend_cocycle(rep, c, w);
    RestrictionClass {
        element: w.clone(),
        reduced: image.reduce(&value),
        image_basis: image.basis().to_vec(),
        value,
    }
}

/// Basis of the cocycles in `span(basis)` whose restriction vanishes at every
/// word of `words`.
///
/// Restriction is linear in the cocycle, so this is the kernel of the stacked
/// reduced-coordinate maps. Passing a `Z¹` basis gives the probe kernel
/// inside `Z¹`; passing `h1_basis` gives representatives of the restriction
/// kernel inside `H¹`.
pub fn probe_kernel(rep: &Representation, basis: &[Cocycle], words: &[FreeWord]) -> Vec<Cocycle> {
    let n = rep.dim();
    let mut rows: Vec<RationalVector> = Vec::new();
    for w in words {
        let image = image_of(rep, w);
        // One pass over the word serves the whole basis.
        let fox = fox_coefficients(rep, w);
        let reduced: Vec<RationalVector> = basis
            .iter()
            .map(|c| {
                let value = fox
                    .iter()
                    .zip(c.values())
                    .filter(|(_, v)| !is_zero_vec(v))
                    .fold(vec![BigRational::zero(); n], |acc, (f, v)| vec_add(&acc, &f.mul_vec(v)));
                image.reduce(&value)
            })
            .collect();
        let codim = n - image.dim();
        for k in 0..codim {
            rows.push(reduced.iter().map(|r| r[k].clone()).collect());
        }
    }
    let coeffs = if rows.is_empty() {
        (0..basis.len())
            .map(|k| {
                let mut e = vec![BigRational::zero(); basis.len()];
                e[k] = BigRational::one();
                e
            })
            .collect()
    } else {
        kernel(&RatMatrix::from_rows(&rows))
    };
    coeffs
        .iter()
        .map(|t| combine(rep, basis, t))
        .collect()
}

/// `Σ t_k·basis_k`.
pub fn combine(rep: &Representation, basis: &[Cocycle], t: &[BigRational]) -> Cocycle {
    basis
        .iter()
        .zip(t)
        .fold(Cocycle::zero(rep), |acc, (c, s)| acc.add(&c.scale(s)))
}

/// Representatives of a basis of the classes in `H¹` restricting to zero at
/// every test word.
pub fn restriction_kernel(
    rep: &Representation,
    spaces: &CohomologySpaces,
    words: &[FreeWord],
) -> Vec<Cocycle> {
    probe_kernel(rep, &spaces.h1_basis, words)
}

/// Subtracts `∂v` from `c`, where `(ρ(w) − I)·v = extend(c, w)`, so the result
/// vanishes on `w`. Returns the adjusted cocycle and `v`.
pub fn coboundary_adjust(
    rep: &Representation,
    c: &Cocycle,
    w: &FreeWord,
) -> Result<(Cocycle, RationalVector), CohomologyError> {
    rep.check_word(w)?;
    let value = extend_cocycle(rep, c, w);
    let a = &rep.evaluate_word(w) - &RatMatrix::identity(rep.dim());
    match solve(&a, &value) {
        Some(v) => Ok((c.sub(&coboundary(rep, &v)), v)),
        None => Err(CohomologyError::Unsolvable {
            word: w.to_string(),
            residual: Subspace::column_space(&a).reduce(&value),
        }),
    }
}
