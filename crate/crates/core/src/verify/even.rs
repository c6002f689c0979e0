//! Injectivity certificate for groups generated by symplectic transvections
//! `g_i = T_{e_i}` whose seeds span a vanishing lattice.
//!
//! Probes:
//! * every generator `g_s`;
//! * the frame transvections `W_i = γ_i·g_{s_i}·γ_i⁻¹` with `ρ(W_i) = T_{δ_i}`;
//! * the prefix `P = W_r ⋯ W_1`;
//! * for each seed, a word `n_s = g_s^M·U_s^{−M/t²}` acting trivially, where
//!   `M` is the certified power exponent and `U_s` lies in the subgroup
//!   generated by the `W_i` and the seeds settled before `s`, with
//!   `ρ(U_s) = T_{t·e_s} = T_{e_s}^{t²}`.
//!
//! Vanishing restriction at `n_s` forces `φ(n_s) = 0`, which stands in for
//! passing to the quotient group acting faithfully.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cohomology::{
    coboundary, coboundary_adjust, extend_cocycle, first_violated_relator, restriction_to_cyclic,
    Cocycle, RestrictionClass,
};
use crate::json::dec_vec;
use crate::lattice::BilinearLattice;
use crate::matrix::{is_zero_vec, to_rational_vec, vec_scale, LatticeVector, RationalVector};
use crate::representation::Representation;
use crate::vanishing::{
    finite_index_power_certificate, find_frame_from, orbit_of, search_orbit, FrameReport, OrbitElement,
    PowerCertificate, VanishingLatticeCandidate,
};
use crate::verify::expand::{combination, expand_product_coefficients, pairing_matrix};
use crate::words::{FreeWord, Presentation};
use crate::{Bounded, Bounds, CertifyError};

#[derive(Clone, Debug)]
pub struct EvenInstance {
    candidate: VanishingLatticeCandidate,
    rep: Representation,
}

impl EvenInstance {
    /// Requires an alternating lattice, nonzero seeds, one seed per
    /// generator, and relators that hold for the seed transvections.
    pub fn new(
        lattice: BilinearLattice,
        seeds: Vec<LatticeVector>,
        presentation: Presentation,
    ) -> Result<Self, CertifyError> {
        let candidate = VanishingLatticeCandidate::new(lattice.clone(), seeds.clone())?;
        let rep = Representation::from_transvections(presentation, lattice, &seeds)?;
        if let Some(case) = rep.verify_relators().failing_case {
            return Err(CertifyError::Malformed(format!("relator does not hold: {case}")));
        }
        Ok(EvenInstance { candidate, rep })
    }

    pub fn candidate(&self) -> &VanishingLatticeCandidate {
        &self.candidate
    }

    pub fn lattice(&self) -> &BilinearLattice {
        self.candidate.lattice()
    }

    pub fn seeds(&self) -> &[LatticeVector] {
        self.candidate.seeds()
    }

    pub fn representation(&self) -> &Representation {
        &self.rep
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeedProbe {
    pub seed: usize,
    pub power: PowerCertificate,
    /// `x` in the `Γ′`-orbit of the frame with `ρ(β)⁻¹x = t·e_s`.
    pub orbit_element: OrbitElement,
    /// `β`, a word in the frame transvections.
    pub conjugator: FreeWord,
    #[serde(with = "crate::json::dec")]
    pub t: BigInt,
    /// `U_s = β⁻¹·α g α⁻¹·β` with `ρ(U_s) = T_{e_s}^{t²}`.
    pub transvection_word: FreeWord,
    /// `M / t²`.
    pub u_exponent: u64,
    /// `g_s^M·U_s^{−M/t²}`, acting trivially.
    pub kernel_word: FreeWord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenProbes {
    pub frame: FrameReport,
    pub frame_words: Vec<FreeWord>,
    /// `W_r ⋯ W_1`.
    pub prefix: FreeWord,
    pub seeds: Vec<SeedProbe>,
    pub words: Vec<FreeWord>,
}

/// `v / content(v)` with its first nonzero entry positive, and the signed
/// content `c` with `v = c·key`.
fn direction(v: &[BigInt]) -> (LatticeVector, BigInt) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return (v.to_vec(), g);
    }
    let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero");
    let c = if lead.is_negative() { -g } else { g };
    (v.iter().map(|x| x / &c).collect(), c)
}

/// Tries `δ₁ = seeds[0], seeds[1], …` in turn and returns the first frame
/// that settles every seed.
pub fn even_probe_words(inst: &EvenInstance, bounds: &Bounds) -> Result<Bounded<EvenProbes>, CertifyError> {
    let mut reason = String::from("no seeds");
    for first in 0..inst.seeds().len() {
        match probes_from(inst, first, bounds)? {
            Bounded::Found(p) => return Ok(Bounded::Found(p)),
            Bounded::Inconclusive(why) => reason = format!("delta_1 = seed {first}: {why}"),
        }
    }
    Ok(Bounded::Inconclusive(reason))
}

fn probes_from(inst: &EvenInstance, first: usize, bounds: &Bounds) -> Result<Bounded<EvenProbes>, CertifyError> {
    let lattice = inst.lattice();
    let frame = match find_frame_from(&inst.candidate, first, bounds) {
        Bounded::Found(f) => f,
        Bounded::Inconclusive(why) => return Ok(Bounded::Inconclusive(format!("frame: {why}"))),
    };
    let frame_words = frame.transvection_words();
    let prefix = frame_words
        .iter()
        .fold(FreeWord::identity(), |acc, w| (w * &acc).free_reduce());
    let frame_vectors = frame.vectors();
    let generators: Vec<(LatticeVector, FreeWord)> = frame_vectors
        .iter()
        .cloned()
        .zip(frame_words.iter().cloned())
        .collect();

    let mut powers = Vec::with_capacity(inst.seeds().len());
    for (s, e) in inst.seeds().iter().enumerate() {
        let g = lattice.transvection(e)?.matrix;
        match finite_index_power_certificate(lattice, &frame_vectors, &g, bounds.exponent)? {
            Bounded::Found(p) => powers.push(p),
            Bounded::Inconclusive(why) => return Ok(Bounded::Inconclusive(format!("seed {s}: {why}"))),
        }
    }

    // `known` holds transvections already shown to carry φ to zero: the frame,
    // then every seed as it is settled. Seeds are settled in passes, each one
    // a meet in the middle: x = ρ(α)δ in the orbit of the known vectors and
    // y = ρ(β)e_s in the orbit of e_s on a common line give ρ(β)⁻¹x = t·e_s,
    // hence T_{t·e_s} = ρ(β⁻¹·α g α⁻¹·β) with α, β words in `known`.
    let mut known = generators;
    let mut known_starts = frame.frame.clone();
    let mut pending: Vec<usize> = (0..inst.seeds().len()).collect();
    let mut seeds = Vec::with_capacity(pending.len());
    while !pending.is_empty() {
        let known_orbit = orbit_of(lattice, known_starts.clone(), &known, bounds);
        let mut lines: HashMap<LatticeVector, usize> = HashMap::new();
        for (i, el) in known_orbit.elements.iter().enumerate() {
            lines.entry(direction(&el.vector).0).or_insert(i);
        }
        let mut unsettled = Vec::new();
        let mut reason = String::new();
        for &s in &pending {
            let e = &inst.seeds()[s];
            let power = &powers[s];
            let m = BigInt::from(power.exponent);
            // x = (c_x/c_y)·y, so t = c_x/c_y when that is integral.
            let multiple = |y: &[BigInt]| -> Option<(usize, BigInt)> {
                let (key, c_y) = direction(y);
                let &i = lines.get(&key)?;
                let (_, c_x) = direction(&known_orbit.elements[i].vector);
                let (t, r) = c_x.div_rem(&c_y);
                (r.is_zero() && (&m % (&t * &t)).is_zero()).then_some((i, t))
            };
            let start = OrbitElement {
                vector: e.clone(),
                seed: s,
                word: FreeWord::identity(),
                depth: 0,
            };
            let seed_side = match search_orbit(lattice, vec![start.clone()], &known, bounds, |el| {
                multiple(&el.vector).is_some()
            }) {
                Bounded::Found(el) => el,
                Bounded::Inconclusive(why) => {
                    reason = format!(
                        "seed {s}: no common line with the known orbit ({} elements), {why}",
                        known_orbit.elements.len()
                    );
                    unsettled.push(s);
                    continue;
                }
            };
            let (i, t) = multiple(&seed_side.vector).expect("matched above");
            let orbit_element = known_orbit.elements[i].clone();
            let conjugator = seed_side.word.clone();
            let transvection_word =
                (&(&conjugator.inverse() * &orbit_element.transvection_word()) * &conjugator).free_reduce();
            let t = t.abs();
            let u_exponent = u64::try_from(&m / (&t * &t)).expect("quotient fits");
            let kernel_word = (&FreeWord::power_of(s, power.exponent as i64)
                * &transvection_word.pow(-(u_exponent as i64)))
                .free_reduce();
            seeds.push(SeedProbe {
                seed: s,
                power: power.clone(),
                orbit_element,
                conjugator,
                t,
                transvection_word,
                u_exponent,
                kernel_word,
            });
            known.push((e.clone(), FreeWord::generator(s)));
            known_starts.push(start);
        }
        if unsettled.len() == pending.len() {
            return Ok(Bounded::Inconclusive(reason));
        }
        pending = unsettled;
    }

    let mut words: Vec<FreeWord> = (0..inst.seeds().len()).map(FreeWord::generator).collect();
    words.extend(frame_words.iter().cloned());
    words.push(prefix.clone());
    words.extend(seeds.iter().map(|p| p.kernel_word.clone()));
    Ok(Bounded::Found(EvenProbes {
        frame,
        frame_words,
        prefix,
        seeds,
        words,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerIdentity {
    pub seed: usize,
    pub exponent: u64,
    /// `M·φ(g_s) = φ(g_s^M)` for the input cocycle.
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EvenCertificate {
    #[serde(with = "dec_vec")]
    pub witness: RationalVector,
    pub probes: EvenProbes,
    #[serde(with = "dec_vec")]
    pub a: RationalVector,
    #[serde(with = "dec_vec")]
    pub b: RationalVector,
    pub power_identities: Vec<PowerIdentity>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum EvenOutcome {
    Coboundary(EvenCertificate),
    Flagged(RestrictionClass),
    Inconclusive { reason: String },
}

fn malformed(msg: impl Into<String>) -> CertifyError {
    CertifyError::Malformed(msg.into())
}

fn multiple_of(v: &[BigRational], e: &[BigRational]) -> Option<BigRational> {
    let p = e.iter().position(|x| !x.is_zero())?;
    let s = &v[p] / &e[p];
    (vec_scale(&s, e) == v).then_some(s)
}

pub fn certify_even_triviality(
    inst: &EvenInstance,
    c: &Cocycle,
    bounds: &Bounds,
) -> Result<EvenOutcome, CertifyError> {
    let rep = &inst.rep;
    let c = Cocycle::new(rep, c.values().to_vec())?;
    if let Some(relator) = first_violated_relator(rep, &c) {
        return Err(CertifyError::NotCocycle { relator });
    }
    let probes = match even_probe_words(inst, bounds)? {
        Bounded::Found(p) => p,
        Bounded::Inconclusive(reason) => return Ok(EvenOutcome::Inconclusive { reason }),
    };
    for w in &probes.words {
        let class = restriction_to_cyclic(rep, &c, w);
        if !class.is_zero() {
            return Ok(EvenOutcome::Flagged(class));
        }
    }

    // φ vanishes on Γ′ after shifting so that φ(P) = 0.
    let (phi, shift) = coboundary_adjust(rep, &c, &probes.prefix)?;
    let deltas = probes.frame.vectors();
    let mut a = Vec::with_capacity(deltas.len());
    for (i, (w, d)) in probes.frame_words.iter().zip(&deltas).enumerate() {
        let value = extend_cocycle(rep, &phi, w);
        let ai = multiple_of(&value, &to_rational_vec(d))
            .ok_or_else(|| malformed(format!("phi(T_delta_{i}) is not a multiple of delta_{i}")))?;
        a.push(ai);
    }
    let e = pairing_matrix(inst.lattice(), &deltas);
    let b = expand_product_coefficients(&a, &e);
    if extend_cocycle(rep, &phi, &probes.prefix) != combination(&deltas, &b) {
        return Err(malformed("product expansion disagrees with the cocycle"));
    }
    if b.iter().chain(&a).any(|x| !x.is_zero()) {
        return Err(malformed("frame coefficients do not vanish"));
    }

    // M·φ(g_s) = φ(g_s^M) = φ(n_s) + φ(U_s^{M/t²}) = 0.
    let mut power_identities = Vec::with_capacity(probes.seeds.len());
    for p in &probes.seeds {
        let m = p.power.exponent;
        let gm = FreeWord::power_of(p.seed, m as i64);
        let scale = BigRational::from_integer(m.into());
        let holds_for = |k: &Cocycle| vec_scale(&scale, k.value(p.seed)) == extend_cocycle(rep, k, &gm);
        let holds = holds_for(&c);
        if !holds || !holds_for(&phi) {
            return Err(malformed(format!("power identity fails for seed {}", p.seed)));
        }
        if !rep.evaluate_word(&p.kernel_word).is_identity() {
            return Err(malformed(format!("kernel word for seed {} acts nontrivially", p.seed)));
        }
        let u = p.transvection_word.pow(p.u_exponent as i64);
        if !is_zero_vec(&extend_cocycle(rep, &phi, &u)) || !is_zero_vec(&extend_cocycle(rep, &phi, &p.kernel_word)) {
            return Err(malformed(format!("cocycle does not vanish on the seed {} probes", p.seed)));
        }
        power_identities.push(PowerIdentity {
            seed: p.seed,
            exponent: m,
            holds,
        });
    }

    if !phi.is_zero() {
        return Err(malformed("shifted cocycle is not zero on every generator"));
    }
    if coboundary(rep, &shift) != c {
        return Err(malformed("witness does not reproduce the cocycle"));
    }
    Ok(EvenOutcome::Coboundary(EvenCertificate {
        witness: shift,
        probes,
        a,
        b,
        power_identities,
    }))
}
