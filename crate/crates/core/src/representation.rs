//! Linear representations of finitely presented groups over Q.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::lattice::BilinearLattice;
use crate::linalg::inverse;
use crate::matrix::{to_rational_vec, RatMatrix, RationalVector};
use crate::report::VerificationReport;
use crate::words::{FreeWord, Presentation};
use crate::{RepresentationError, WordError};

/// Invertible rational matrices `ρ(g_i)`, one per generator of a presentation,
/// acting on column vectors of `Q^dim`.
///
/// The relators are not required to hold at construction time; see
/// [`Representation::verify_relators`].
#[derive(Clone, Debug)]
pub struct Representation {
    presentation: Presentation,
    dim: usize,
    lattice: Option<BilinearLattice>,
    images: Vec<RatMatrix>,
    inverses: Vec<RatMatrix>,
    form_preserving: bool,
}

impl Representation {
    /// A representation on a plain rational space with no invariant form.
    pub fn on_space(
        presentation: Presentation,
        dim: usize,
        images: Vec<RatMatrix>,
    ) -> Result<Self, RepresentationError> {
        Self::new(presentation, dim, None, images, false)
    }

    /// A representation on `lattice ⊗ Q`. With `form_preserving`, each image
    /// must satisfy `Aᵀ·gram·A = gram`.
    pub fn on_lattice(
        presentation: Presentation,
        lattice: BilinearLattice,
        images: Vec<RatMatrix>,
        form_preserving: bool,
    ) -> Result<Self, RepresentationError> {
        let dim = lattice.rank();
        Self::new(presentation, dim, Some(lattice), images, form_preserving)
    }

    /// `g_i ↦ T_{v_i}`.
    pub fn from_transvections(
        presentation: Presentation,
        lattice: BilinearLattice,
        vectors: &[Vec<BigInt>],
    ) -> Result<Self, RepresentationError> {
        let mut images = Vec::with_capacity(vectors.len());
        let mut isometric = true;
        for v in vectors {
            let t = lattice.transvection(v)?;
            isometric &= t.isometric;
            images.push(t.matrix.to_rational());
        }
        Self::on_lattice(presentation, lattice, images, isometric)
    }

    fn new(
        presentation: Presentation,
        dim: usize,
        lattice: Option<BilinearLattice>,
        images: Vec<RatMatrix>,
        form_preserving: bool,
    ) -> Result<Self, RepresentationError> {
        if images.len() != presentation.generator_count() {
            return Err(RepresentationError::WrongImageCount {
                expected: presentation.generator_count(),
                found: images.len(),
            });
        }
        let mut inverses = Vec::with_capacity(images.len());
        for (g, a) in images.iter().enumerate() {
            if a.rows() != dim || a.cols() != dim {
                return Err(RepresentationError::WrongShape {
                    generator: g,
                    dim,
                    rows: a.rows(),
                    cols: a.cols(),
                });
            }
            inverses.push(inverse(a).ok_or(RepresentationError::Singular { generator: g })?);
        }
        if form_preserving {
            let gram = lattice
                .as_ref()
                .ok_or(RepresentationError::MissingForm)?
                .gram()
                .to_rational();
            for (g, a) in images.iter().enumerate() {
                if &(&a.transpose() * &gram) * a != gram {
                    return Err(RepresentationError::NotFormPreserving { generator: g });
                }
            }
        }
        Ok(Representation {
            presentation,
            dim,
            lattice,
            images,
            inverses,
            form_preserving,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn generator_count(&self) -> usize {
        self.images.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn lattice(&self) -> Option<&BilinearLattice> {
        self.lattice.as_ref()
    }

    pub fn image(&self, g: usize) -> &RatMatrix {
        &self.images[g]
    }

    pub fn images(&self) -> &[RatMatrix] {
        &self.images
    }

    pub fn inverse_image(&self, g: usize) -> &RatMatrix {
        &self.inverses[g]
    }

    pub fn is_form_preserving(&self) -> bool {
        self.form_preserving
    }

    pub fn check_word(&self, w: &FreeWord) -> Result<(), WordError> {
        w.check_generators(self.generator_count())
    }

    /// `ρ(g_i)^{±1}` raised to the letter's exponent.
    pub(crate) fn letter_image(&self, g: usize, exponent: i64) -> RatMatrix {
        let base = if exponent < 0 {
            &self.inverses[g]
        } else {
            &self.images[g]
        };
        base.pow(exponent.unsigned_abs())
    }

    /// The product of generator images along `w`, in word order.
    ///
    /// # Panics
    /// If `w` mentions a generator the presentation does not have.
    pub fn evaluate_word(&self, w: &FreeWord) -> RatMatrix {
        let mut m = RatMatrix::identity(self.dim);
        for l in w.letters() {
            assert!(
                l.generator < self.generator_count(),
                "word uses generator {} of {}",
                l.generator,
                self.generator_count()
            );
            if l.exponent != 0 {
                m = &m * &self.letter_image(l.generator, l.exponent);
            }
        }
        m
    }

    pub fn act(&self, w: &FreeWord, v: &[BigInt]) -> RationalVector {
        self.evaluate_word(w).mul_vec(&to_rational_vec(v))
    }

    /// Passes iff every relator evaluates to the identity matrix.
    pub fn verify_relators(&self) -> VerificationReport {
        let mut report = VerificationReport::new("relators");
        report.witness("relator_count", self.presentation.relators().len());
        for (k, r) in self.presentation.relators().iter().enumerate() {
            if !self.evaluate_word(r).is_identity() {
                report.fail(serde_json::json!({ "relator": k, "word": r.to_string() }));
                break;
            }
        }
        report
    }

    pub fn to_json(&self) -> RepresentationJson {
        RepresentationJson {
            generators: Some(self.presentation.generator_count()),
            relators: Some(self.presentation.relators().to_vec()),
            dim: Some(self.dim),
            images: self.images.clone(),
            form_preserving: self.form_preserving,
        }
    }
}

/// `{"generators": n, "relators": [...], "images": [...], "form_preserving": bool}`.
///
/// `generators`/`relators` may be omitted when the presentation is supplied
/// separately; `dim` is only needed when there are no images to infer it from.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepresentationJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relators: Option<Vec<FreeWord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    pub images: Vec<RatMatrix>,
    #[serde(default)]
    pub form_preserving: bool,
}

impl RepresentationJson {
    /// Assembles a representation. An explicit `presentation` wins over the
    /// embedded `generators`/`relators`; with neither, the free group on the
    /// images is used.
    pub fn build(
        self,
        presentation: Option<Presentation>,
        lattice: Option<BilinearLattice>,
    ) -> Result<Representation, RepresentationError> {
        let presentation = match presentation {
            Some(p) => p,
            None => Presentation::new(
                self.generators.unwrap_or(self.images.len()),
                self.relators.unwrap_or_default(),
            )?,
        };
        let dim = self
            .images
            .first()
            .map(RatMatrix::rows)
            .or(self.dim)
            .or(lattice.as_ref().map(BilinearLattice::rank))
            .unwrap_or(0);
        match lattice {
            Some(l) => {
                if l.rank() != dim {
                    return Err(RepresentationError::WrongShape {
                        generator: 0,
                        dim: l.rank(),
                        rows: dim,
                        cols: dim,
                    });
                }
                Representation::on_lattice(presentation, l, self.images, self.form_preserving)
            }
            None if self.form_preserving => Err(RepresentationError::MissingForm),
            None => Representation::on_space(presentation, dim, self.images),
        }
    }
}
