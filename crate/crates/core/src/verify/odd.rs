//! Injectivity certificate for reflection groups: `g_i` acts as
//! `x ↦ x − ⟨x, e_i⟩ e_i` with `⟨e_i, e_i⟩ = 2` on a symmetric lattice.
//!
//! With `e_{i_1}, …, e_{i_p}` the greedy independent subset in input order and
//! `P = g_{i_p} ⋯ g_{i_1}`, the probes are every `g_i`, `P`, and `g_j·P` for
//! each dependent `j`. A cocycle whose restriction vanishes at all probes is
//! shown to be a coboundary by replaying the two-step argument exactly.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cohomology::{
    coboundary, coboundary_adjust, extend_cocycle, first_violated_relator, restriction_to_cyclic,
    Cocycle, RestrictionClass,
};
use crate::json::{dec, dec_vec};
use crate::lattice::{BilinearLattice, Symmetry};
use crate::linalg::{coordinates, independent_subset, solve};
use crate::matrix::{to_rational_vec, vec_scale, LatticeVector, RatMatrix, RationalVector};
use crate::representation::Representation;
use crate::verify::expand::{combination, expand_product_coefficients, pairing_matrix};
use crate::words::{FreeWord, Presentation};
use crate::CertifyError;

#[derive(Clone, Debug)]
pub struct OddInstance {
    lattice: BilinearLattice,
    vectors: Vec<LatticeVector>,
    rep: Representation,
}

impl OddInstance {
    /// Requires a symmetric lattice, `⟨e_i, e_i⟩ = 2`, one vector per
    /// generator, and relators that hold for the reflections.
    pub fn new(
        lattice: BilinearLattice,
        vectors: Vec<LatticeVector>,
        presentation: Presentation,
    ) -> Result<Self, CertifyError> {
        if lattice.symmetry() != Symmetry::Symmetric {
            return Err(CertifyError::Malformed("lattice must be symmetric".into()));
        }
        for (i, e) in vectors.iter().enumerate() {
            if lattice.pairing(e, e)? != 2.into() {
                return Err(CertifyError::Malformed(format!("<e_{i}, e_{i}> != 2")));
            }
        }
        let rep = Representation::from_transvections(presentation, lattice.clone(), &vectors)?;
        if let Some(case) = rep.verify_relators().failing_case {
            return Err(CertifyError::Malformed(format!("relator does not hold: {case}")));
        }
        Ok(OddInstance { lattice, vectors, rep })
    }

    pub fn lattice(&self) -> &BilinearLattice {
        &self.lattice
    }

    pub fn vectors(&self) -> &[LatticeVector] {
        &self.vectors
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddProbes {
    pub independent: Vec<usize>,
    pub dependent: Vec<usize>,
    /// `g_{i_p} ⋯ g_{i_1}`.
    pub prefix: FreeWord,
    /// All `g_i`, then the prefix, then `g_j·prefix` for each dependent `j`.
    pub words: Vec<FreeWord>,
}

pub fn odd_probe_words(inst: &OddInstance) -> OddProbes {
    let rational: Vec<RationalVector> = inst.vectors.iter().map(|v| to_rational_vec(v)).collect();
    let independent = independent_subset(&rational);
    let dependent: Vec<usize> = (0..inst.vectors.len())
        .filter(|i| !independent.contains(i))
        .collect();
    let prefix = FreeWord::descending_product(&independent);
    let mut words: Vec<FreeWord> = (0..inst.vectors.len()).map(FreeWord::generator).collect();
    words.push(prefix.clone());
    for &j in &dependent {
        words.push(&FreeWord::generator(j) * &prefix);
    }
    OddProbes {
        independent,
        dependent,
        prefix,
        words,
    }
}

/// The second step for one dependent generator `g_j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DependentStep {
    pub generator: usize,
    /// `e_j = Σ c_k e_{i_k}`.
    #[serde(with = "dec_vec")]
    pub c: RationalVector,
    /// `cᵀEc`, always 2.
    #[serde(with = "dec")]
    pub c_e_c: BigRational,
    /// `cᵀSc`, always 1.
    #[serde(with = "dec")]
    pub c_s_c: BigRational,
    /// `φ(g_j) = η·e_j` after the first step.
    #[serde(with = "dec")]
    pub eta: BigRational,
    #[serde(with = "dec_vec")]
    pub x: RationalVector,
    #[serde(with = "dec_vec")]
    pub y: RationalVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddCertificate {
    /// `c = ∂(witness)` on every generator.
    #[serde(with = "dec_vec")]
    pub witness: RationalVector,
    pub probes: OddProbes,
    /// Coefficients `a_k` with `φ(g_{i_k}) = a_k e_{i_k}` after the shift.
    #[serde(with = "dec_vec")]
    pub a: RationalVector,
    #[serde(with = "dec_vec")]
    pub b: RationalVector,
    pub dependents: Vec<DependentStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum OddOutcome {
    Coboundary(OddCertificate),
    /// The cocycle restricts nontrivially at a probe, so the hypothesis of the
    /// argument fails; no witness is emitted.
    Flagged(RestrictionClass),
}

/// `s` with `v = s·e`, if any.
fn multiple_of(v: &[BigRational], e: &[BigRational]) -> Option<BigRational> {
    let p = e.iter().position(|x| !x.is_zero())?;
    let s = &v[p] / &e[p];
    (vec_scale(&s, e) == v).then_some(s)
}

/// `S_{ij} = E_{ij}` below the diagonal, one on it, zero above.
pub fn lower_s_matrix(e: &RatMatrix) -> RatMatrix {
    let n = e.rows();
    let mut s = RatMatrix::zeros(n, n);
    for i in 0..n {
        s[(i, i)] = BigRational::one();
        for j in 0..i {
            s[(i, j)] = e[(i, j)].clone();
        }
    }
    s
}

fn malformed(msg: impl Into<String>) -> CertifyError {
    CertifyError::Malformed(msg.into())
}

pub fn certify_odd_injectivity(inst: &OddInstance, c: &Cocycle) -> Result<OddOutcome, CertifyError> {
    let rep = &inst.rep;
    let c = Cocycle::new(rep, c.values().to_vec())?;
    if let Some(relator) = first_violated_relator(rep, &c) {
        return Err(CertifyError::NotCocycle { relator });
    }
    let probes = odd_probe_words(inst);
    for w in &probes.words {
        let class = restriction_to_cyclic(rep, &c, w);
        if !class.is_zero() {
            return Ok(OddOutcome::Flagged(class));
        }
    }

    // Step 1: shift so that φ(P) = 0, then φ(g_{i_k}) = a_k e_{i_k}.
    let (phi, shift) = coboundary_adjust(rep, &c, &probes.prefix)?;
    let basis: Vec<LatticeVector> = probes.independent.iter().map(|&i| inst.vectors[i].clone()).collect();
    let basis_q: Vec<RationalVector> = basis.iter().map(|v| to_rational_vec(v)).collect();
    let mut a = Vec::with_capacity(basis.len());
    for (&i, e) in probes.independent.iter().zip(&basis_q) {
        let ai = multiple_of(phi.value(i), e)
            .ok_or_else(|| malformed(format!("phi(g_{i}) is not a multiple of e_{i}")))?;
        a.push(ai);
    }
    let e = pairing_matrix(&inst.lattice, &basis);
    let b = expand_product_coefficients(&a, &e);
    if extend_cocycle(rep, &phi, &probes.prefix) != combination(&basis, &b) {
        return Err(malformed("product expansion disagrees with the cocycle"));
    }
    if b.iter().any(|x| !x.is_zero()) || a.iter().any(|x| !x.is_zero()) {
        return Err(malformed("independent coefficients do not vanish"));
    }

    // Step 2: each dependent φ(g_j) = η e_j has η = cᵀx − cᵀSy = 0.
    let s = lower_s_matrix(&e);
    let gram = inst.lattice.gram().to_rational();
    let mut dependents = Vec::with_capacity(probes.dependent.len());
    for &j in &probes.dependent {
        let ej = to_rational_vec(&inst.vectors[j]);
        let cj = coordinates(&basis_q, &ej).ok_or_else(|| malformed(format!("e_{j} is not dependent")))?;
        let c_e_c = e.bilinear(&cj, &cj);
        let c_s_c = s.bilinear(&cj, &cj);
        if c_e_c != BigRational::from_integer(2.into()) || !c_s_c.is_one() {
            return Err(malformed(format!("coefficient identities fail for e_{j}")));
        }
        let eta = multiple_of(phi.value(j), &ej)
            .ok_or_else(|| malformed(format!("phi(g_{j}) is not a multiple of e_{j}")))?;
        let q = &FreeWord::generator(j) * &probes.prefix;
        let target = extend_cocycle(rep, &phi, &q);
        let shifted = &rep.evaluate_word(&q) - &RatMatrix::identity(rep.dim());
        let w = solve(&shifted, &target).ok_or_else(|| malformed("probe g_j P has no preimage"))?;
        let x: RationalVector = basis_q.iter().map(|ei| -gram.bilinear(&w, ei)).collect();
        let y = expand_product_coefficients(&x, &e);
        let ctx: BigRational = cj.iter().zip(&x).map(|(p, q)| p * q).sum();
        // η·c = (cᵀx)·c − y.
        let rhs: RationalVector = cj.iter().zip(&y).map(|(ck, yk)| &ctx * ck - yk).collect();
        if vec_scale(&eta, &cj) != rhs || s.mul_vec(&y) != x {
            return Err(malformed(format!("eta relation fails for e_{j}")));
        }
        if !eta.is_zero() {
            return Err(malformed(format!("eta = {eta} for e_{j}")));
        }
        dependents.push(DependentStep {
            generator: j,
            c: cj,
            c_e_c,
            c_s_c,
            eta,
            x,
            y,
        });
    }

    if !phi.is_zero() {
        return Err(malformed("shifted cocycle is not zero on every generator"));
    }
    if coboundary(rep, &shift) != c {
        return Err(malformed("witness does not reproduce the cocycle"));
    }
    Ok(OddOutcome::Coboundary(OddCertificate {
        witness: shift,
        probes,
        a,
        b,
        dependents,
    }))
}
