//! Vanishing-lattice axioms, bounded transvection orbits, `Sp♯`/`Sp♯₂`
//! membership, independent frames and power certificates for finite-index
//! sublattices.
//!
//! Orbit elements remember a word in the seed generators: generator `i` acts
//! as `T_{seeds[i]}`. An element `δ = ρ(γ)·seeds[s]` then has
//! `T_δ = ρ(γ·g_s·γ⁻¹)`, so every transvection met along the way is available
//! as a replayable word.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::json::{dec, dec_vec, dec_vecs};
use crate::lattice::{BilinearLattice, Symmetry};
use crate::linalg::{inverse, Subspace};
use crate::matrix::{to_rational_vec, IntMatrix, LatticeVector};
use crate::report::VerificationReport;
use crate::snf::{lattice_basis, smith_normal_form, solve_with, Obstruction, Solvability};
use crate::words::FreeWord;
use crate::{Bounded, Bounds, LatticeError};

/// An alternating lattice with the seeds `e_i` whose transvections generate
/// the monodromy group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingLatticeCandidate {
    lattice: BilinearLattice,
    seeds: Vec<LatticeVector>,
}

impl VanishingLatticeCandidate {
    pub fn new(lattice: BilinearLattice, seeds: Vec<LatticeVector>) -> Result<Self, LatticeError> {
        if lattice.symmetry() != Symmetry::Alternating {
            return Err(LatticeError::NotAlternating);
        }
        for (index, s) in seeds.iter().enumerate() {
            if s.len() != lattice.rank() {
                return Err(LatticeError::DimensionMismatch {
                    expected: lattice.rank(),
                    found: s.len(),
                });
            }
            if s.iter().all(Zero::is_zero) {
                return Err(LatticeError::ZeroSeed { index });
            }
        }
        Ok(VanishingLatticeCandidate { lattice, seeds })
    }

    pub fn lattice(&self) -> &BilinearLattice {
        &self.lattice
    }

    pub fn seeds(&self) -> &[LatticeVector] {
        &self.seeds
    }

    fn seed_generators(&self) -> Vec<(LatticeVector, FreeWord)> {
        self.seeds
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), FreeWord::generator(i)))
            .collect()
    }

    fn seed_starts(&self) -> Vec<OrbitElement> {
        self.seeds
            .iter()
            .enumerate()
            .map(|(i, s)| OrbitElement {
                vector: s.clone(),
                seed: i,
                word: FreeWord::identity(),
                depth: 0,
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitElement {
    #[serde(with = "dec_vec")]
    pub vector: LatticeVector,
    /// Index of the seed this element was reached from.
    pub seed: usize,
    /// `vector = ρ(word)·seeds[seed]`.
    pub word: FreeWord,
    pub depth: usize,
}

impl OrbitElement {
    /// A word `γ·g_s·γ⁻¹` evaluating to `T_vector`.
    pub fn transvection_word(&self) -> FreeWord {
        self.word.conjugate(&FreeWord::generator(self.seed)).free_reduce()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orbit {
    pub elements: Vec<OrbitElement>,
    /// Some new vector was found but not added because of the bounds.
    pub truncated: bool,
    /// For each start, the smallest start index known to share its orbit.
    pub components: Vec<usize>,
}

impl Orbit {
    pub fn vectors(&self) -> impl Iterator<Item = &LatticeVector> {
        self.elements.iter().map(|e| &e.vector)
    }

    pub fn is_connected(&self) -> bool {
        self.components.iter().all(|&c| c == 0)
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        parent[hi] = lo;
    }
}

/// Breadth-first closure of `starts` under `T_u^{±1}` for each generator
/// `(u, U)`, where `ρ(U) = T_u`. Neighbors are tried generator by generator,
/// `T_u` before `T_u⁻¹`. Stops early when `stop` accepts a newly added element
/// and returns its index.
fn bfs(
    lattice: &BilinearLattice,
    starts: Vec<OrbitElement>,
    generators: &[(LatticeVector, FreeWord)],
    depth_bound: usize,
    size_bound: usize,
    mut stop: impl FnMut(&OrbitElement) -> bool,
) -> (Orbit, Option<usize>) {
    let k = starts.len();
    let mut parent: Vec<usize> = (0..k).collect();
    let mut origin: Vec<usize> = Vec::new();
    let mut index: HashMap<LatticeVector, usize> = HashMap::new();
    let mut elements: Vec<OrbitElement> = Vec::new();
    let mut queue = VecDeque::new();
    let mut truncated = false;

    for (label, s) in starts.into_iter().enumerate() {
        if let Some(&j) = index.get(&s.vector) {
            union(&mut parent, label, origin[j]);
            continue;
        }
        if elements.len() >= size_bound {
            truncated = true;
            continue;
        }
        index.insert(s.vector.clone(), elements.len());
        origin.push(label);
        queue.push_back(elements.len());
        let hit = stop(&s);
        elements.push(s);
        if hit {
            let components = (0..k).map(|i| find(&mut parent, i)).collect();
            let at = elements.len() - 1;
            return (Orbit { elements, truncated, components }, Some(at));
        }
    }

    while let Some(cur) = queue.pop_front() {
        let depth = elements[cur].depth;
        for (u, word) in generators {
            for forward in [true, false] {
                let x = &elements[cur].vector;
                let y = if forward {
                    lattice.apply_transvection(u, x)
                } else {
                    lattice.apply_inverse_transvection(u, x)
                };
                if let Some(&j) = index.get(&y) {
                    let (a, b) = (origin[cur], origin[j]);
                    union(&mut parent, a, b);
                    continue;
                }
                if depth >= depth_bound || elements.len() >= size_bound {
                    truncated = true;
                    continue;
                }
                let step = if forward { word.clone() } else { word.inverse() };
                let e = OrbitElement {
                    vector: y.clone(),
                    seed: elements[cur].seed,
                    word: (&step * &elements[cur].word).free_reduce(),
                    depth: depth + 1,
                };
                index.insert(y, elements.len());
                origin.push(origin[cur]);
                queue.push_back(elements.len());
                let hit = stop(&e);
                elements.push(e);
                if hit {
                    let components = (0..k).map(|i| find(&mut parent, i)).collect();
                    let at = elements.len() - 1;
                    return (Orbit { elements, truncated, components }, Some(at));
                }
            }
        }
    }
    let components = (0..k).map(|i| find(&mut parent, i)).collect();
    (Orbit { elements, truncated, components }, None)
}

/// The seeds' orbit under the group generated by the seed transvections,
/// truncated at `depth_bound` steps and `size_bound` elements.
pub fn orbit_closure(cand: &VanishingLatticeCandidate, depth_bound: usize, size_bound: usize) -> Orbit {
    bfs(
        &cand.lattice,
        cand.seed_starts(),
        &cand.seed_generators(),
        depth_bound,
        size_bound,
        |_| false,
    )
    .0
}

/// The orbit of `starts` under `⟨T_u : (u, U) ∈ generators⟩`, within bounds.
pub fn orbit_of(
    lattice: &BilinearLattice,
    starts: Vec<OrbitElement>,
    generators: &[(LatticeVector, FreeWord)],
    bounds: &Bounds,
) -> Orbit {
    bfs(lattice, starts, generators, bounds.depth, bounds.size, |_| false).0
}

/// Searches the orbit of `starts` under `⟨T_u : (u, U) ∈ generators⟩` for an
/// element satisfying `pred`. Words of the result are products of the `U`s
/// applied to the start words.
pub fn search_orbit(
    lattice: &BilinearLattice,
    starts: Vec<OrbitElement>,
    generators: &[(LatticeVector, FreeWord)],
    bounds: &Bounds,
    pred: impl FnMut(&OrbitElement) -> bool,
) -> Bounded<OrbitElement> {
    let (orbit, hit) = bfs(lattice, starts, generators, bounds.depth, bounds.size, pred);
    match hit {
        Some(i) => Bounded::Found(orbit.elements[i].clone()),
        None if orbit.truncated => Bounded::Inconclusive(format!(
            "not found among {} orbit elements within depth {}",
            orbit.elements.len(),
            bounds.depth
        )),
        None => Bounded::Inconclusive(format!(
            "orbit is complete with {} elements and contains no match",
            orbit.elements.len()
        )),
    }
}

/// Checks the three vanishing-lattice properties: the orbit generates `V`
/// (exact), the seeds form one orbit (within bounds), and some pair of orbit
/// vectors pairs to one (within the enumerated orbit).
pub fn check_vanishing_lattice(cand: &VanishingLatticeCandidate, bounds: &Bounds) -> VerificationReport {
    let mut report = VerificationReport::new("vanishing_lattice");
    let r = cand.lattice.rank();
    report.witness("rank", r);
    if r == 0 {
        report.witness("vacuous", true);
        return report;
    }
    let orbit = orbit_closure(cand, bounds.depth, bounds.size);
    report
        .witness("orbit_size", orbit.elements.len())
        .witness("truncated", orbit.truncated);

    // Property (1). `T_v x = x − ⟨x, v⟩v` keeps the seeds' Z-span, so even a
    // truncated orbit spans exactly that module and the verdict is exact.
    // The orbit is folded into an echelon basis of the span first.
    let columns = lattice_basis(r, &orbit.vectors().cloned().collect::<Vec<_>>());
    let m = if columns.is_empty() {
        IntMatrix::zeros(r, 0)
    } else {
        IntMatrix::from_columns(r, &columns)
    };
    let snf = smith_normal_form(&m);
    let generates = snf.rank == r && snf.divisors[..r].iter().all(One::is_one);
    report.witness(
        "divisors",
        snf.divisors.iter().map(ToString::to_string).collect::<Vec<_>>(),
    );
    report.witness("generates", generates);
    if !generates {
        report.fail(serde_json::json!({
            "property": 1,
            "rank": snf.rank,
            "divisors": snf.divisors.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }));
    }

    // Property (2).
    report.witness("seed_components", &orbit.components);
    if !orbit.is_connected() {
        let case = serde_json::json!({ "property": 2, "components": orbit.components });
        if orbit.truncated {
            report.inconclusive(case);
        } else {
            report.fail(case);
        }
    }

    // Property (3). Pairings of orbit vectors are Z-combinations of pairings
    // of the span basis, so a common divisor above one rules out a unit pair.
    let basis_gcd = columns.iter().fold(BigInt::zero(), |acc, u| {
        columns.iter().fold(acc, |acc, v| acc.gcd(&cand.lattice.pair(u, v)))
    });
    if !basis_gcd.is_one() {
        report.fail(serde_json::json!({ "property": 3, "pairing_gcd": basis_gcd.to_string() }));
        return report;
    }
    // ⟨δ_j, δ_i⟩ = −⟨δ_i, δ_j⟩, so ±1 in either order suffices.
    let vs: Vec<&LatticeVector> = orbit.vectors().collect();
    let gvs: Vec<LatticeVector> = vs.iter().map(|v| cand.lattice.gram().mul_vec(v)).collect();
    let pair = (0..vs.len()).find_map(|j| {
        (0..j).find_map(|i| {
            let p: BigInt = vs[i].iter().zip(&gvs[j]).map(|(a, b)| a * b).sum();
            if p.is_one() {
                Some((i, j))
            } else if (-p).is_one() {
                Some((j, i))
            } else {
                None
            }
        })
    });
    match pair {
        Some((i, j)) => {
            report.witness(
                "unit_pair",
                serde_json::json!([crate::json::int_vec_json(vs[i]), crate::json::int_vec_json(vs[j])]),
            );
        }
        None => {
            let case = serde_json::json!({ "property": 3 });
            if orbit.truncated {
                report.inconclusive(case);
            } else {
                report.fail(case);
            }
        }
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    /// Trivial action on `Hom(V, Z) / j(V)`.
    SpSharp,
    /// Trivial action on `Hom(V, Z) / j(2V)`.
    SpSharp2,
}

impl Level {
    pub fn factor(self) -> BigInt {
        match self {
            Level::SpSharp => BigInt::one(),
            Level::SpSharp2 => BigInt::from(2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Membership {
    /// `witnesses[i]` is `v` with `x_i(g·x − x) = level·⟨v, x⟩` for all `x`.
    Member {
        #[serde(with = "dec_vecs")]
        witnesses: Vec<LatticeVector>,
    },
    NonMember {
        functional: usize,
        obstruction: Obstruction,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipCertificate {
    pub subject: IntMatrix,
    pub level: Level,
    pub membership: Membership,
}

impl MembershipCertificate {
    pub fn is_member(&self) -> bool {
        matches!(self.membership, Membership::Member { .. })
    }

    pub fn witnesses(&self) -> Option<&[LatticeVector]> {
        match &self.membership {
            Membership::Member { witnesses } => Some(witnesses),
            Membership::NonMember { .. } => None,
        }
    }

    /// Re-checks every witness on the standard basis; a non-membership claim
    /// is re-checked by solving the failing functional again.
    pub fn verify(&self, lattice: &BilinearLattice) -> bool {
        let n = lattice.rank();
        if self.subject.rows() != n || self.subject.cols() != n {
            return false;
        }
        let d = &self.subject - &IntMatrix::identity(n);
        let f = self.level.factor();
        match &self.membership {
            Membership::Member { witnesses } => {
                witnesses.len() == n
                    && witnesses.iter().enumerate().all(|(i, v)| {
                        // Row i of g − I against level·vᵀ·gram, entry by entry.
                        let vg = lattice.gram().transpose().mul_vec(v);
                        (0..n).all(|j| d[(i, j)] == &f * &vg[j])
                    })
            }
            Membership::NonMember { functional, .. } => {
                let a = lattice.gram().transpose().scale(&f);
                *functional < n
                    && matches!(
                        solve_with(&smith_normal_form(&a), d.row(*functional)),
                        Solvability::Obstructed(_)
                    )
            }
        }
    }
}

/// Decides whether the isometry `g` lies in `Sp♯(V)` or `Sp♯₂(V)`, using
/// the coordinate functionals as a basis of `Hom(V, Z)`.
pub fn sp_sharp_membership(
    lattice: &BilinearLattice,
    g: &IntMatrix,
    level: Level,
) -> Result<MembershipCertificate, LatticeError> {
    let n = lattice.rank();
    if !g.is_square() {
        return Err(LatticeError::NotSquare {
            rows: g.rows(),
            cols: g.cols(),
        });
    }
    if g.rows() != n {
        return Err(LatticeError::DimensionMismatch {
            expected: n,
            found: g.rows(),
        });
    }
    if !lattice.is_isometry(g) {
        return Err(LatticeError::NotIsometry);
    }
    // x_i(g·x − x) = level·vᵀ·gram·x for all x ⇔ level·gramᵀ·v = row_i(g − I).
    let a = lattice.gram().transpose().scale(&level.factor());
    let snf = smith_normal_form(&a);
    let d = g - &IntMatrix::identity(n);
    let mut witnesses = Vec::with_capacity(n);
    for i in 0..n {
        match solve_with(&snf, d.row(i)) {
            Solvability::Solution(v) => witnesses.push(v),
            Solvability::Obstructed(obstruction) => {
                return Ok(MembershipCertificate {
                    subject: g.clone(),
                    level,
                    membership: Membership::NonMember {
                        functional: i,
                        obstruction,
                    },
                })
            }
        }
    }
    Ok(MembershipCertificate {
        subject: g.clone(),
        level,
        membership: Membership::Member { witnesses },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrameReport {
    /// `δ₁` (the first seed) followed by `r − 1` orbit elements.
    pub frame: Vec<OrbitElement>,
    /// `⟨δ₁, δ_i⟩` for `i ≥ 2`; all equal to one.
    #[serde(with = "dec_vec")]
    pub pairing_row: Vec<BigInt>,
    pub orbit_size: usize,
}

impl FrameReport {
    pub fn vectors(&self) -> Vec<LatticeVector> {
        self.frame.iter().map(|e| e.vector.clone()).collect()
    }

    /// `T_{δ_i}` as words in the seed generators.
    pub fn transvection_words(&self) -> Vec<FreeWord> {
        self.frame.iter().map(OrbitElement::transvection_word).collect()
    }
}

/// Candidates considered when lowering the index of a greedy frame.
const FRAME_SWAP_POOL: usize = 200;

fn l1(v: &[BigInt]) -> BigInt {
    v.iter().map(Signed::abs).sum()
}

/// `δ₁ = seeds[0]` and `r − 1` further orbit elements pairing to one with
/// `δ₁`, all linearly independent. Candidates are taken in order of
/// increasing `|·|₁`, then lexicographically; the greedy frame is then
/// improved by single swaps that lower `[V : V′]`.
pub fn find_independent_frame(cand: &VanishingLatticeCandidate, bounds: &Bounds) -> Bounded<FrameReport> {
    find_frame_from(cand, 0, bounds)
}

/// As [`find_independent_frame`], with `δ₁ = seeds[first]`.
///
/// # Panics
/// If `first` is not a seed index.
pub fn find_frame_from(cand: &VanishingLatticeCandidate, first: usize, bounds: &Bounds) -> Bounded<FrameReport> {
    let r = cand.lattice.rank();
    if cand.seeds.is_empty() {
        return if r == 0 {
            Bounded::Found(FrameReport {
                frame: Vec::new(),
                pairing_row: Vec::new(),
                orbit_size: 0,
            })
        } else {
            Bounded::Inconclusive("no seeds".into())
        };
    }
    let first = &cand.seeds[first];
    let orbit = orbit_closure(cand, bounds.depth, bounds.size);
    // Repeated seeds share one start, so look the vector up.
    let Some(start) = orbit.elements.iter().find(|e| e.depth == 0 && &e.vector == first).cloned() else {
        return Bounded::Inconclusive("size bound is below the number of seeds".into());
    };
    let mut eligible: Vec<&OrbitElement> = orbit
        .elements
        .iter()
        .filter(|e| cand.lattice.pair(first, &e.vector).is_one())
        .collect();
    eligible.sort_by(|a, b| (l1(&a.vector), &a.vector).cmp(&(l1(&b.vector), &b.vector)));

    let mut span = Subspace::zero(r);
    span.insert(&to_rational_vec(first));
    let mut frame = vec![start];
    for e in &eligible {
        if frame.len() == r {
            break;
        }
        if span.insert(&to_rational_vec(&e.vector)) {
            frame.push((*e).clone());
        }
    }
    if frame.len() < r {
        return Bounded::Inconclusive(format!(
            "only {} of {} frame vectors among {} orbit elements{}",
            frame.len(),
            r,
            orbit.elements.len(),
            if orbit.truncated { " (truncated)" } else { "" }
        ));
    }

    // Swap in later candidates while that lowers [V : V′]; a smaller index
    // makes the frame orbit more likely to reach every seed.
    let index_of = |f: &[OrbitElement]| {
        let cols: Vec<LatticeVector> = f.iter().map(|e| e.vector.clone()).collect();
        IntMatrix::from_columns(r, &cols).determinant().abs()
    };
    let mut index = index_of(&frame);
    let pool: Vec<&OrbitElement> = eligible.iter().take(FRAME_SWAP_POOL).copied().collect();
    'improve: while !index.is_one() {
        for j in 1..r {
            for c in &pool {
                let mut trial = frame.clone();
                trial[j] = (*c).clone();
                let k = index_of(&trial);
                if !k.is_zero() && k < index {
                    frame = trial;
                    index = k;
                    continue 'improve;
                }
            }
        }
        break;
    }
    let pairing_row = frame[1..]
        .iter()
        .map(|e| cand.lattice.pair(first, &e.vector))
        .collect();
    Bounded::Found(FrameReport {
        frame,
        pairing_row,
        orbit_size: orbit.elements.len(),
    })
}

/// `g^q` preserves `V′` and `(g^q)^m ∈ Sp♯₂(V′)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerCertificate {
    pub q: u64,
    pub m: u64,
    /// `q·m`.
    pub exponent: u64,
    /// `[V : V′]`.
    #[serde(with = "dec")]
    pub index: BigInt,
    /// Gram matrix of `V′` in the given basis.
    pub sublattice_gram: IntMatrix,
    /// Level-two certificate for `g^{qm}` acting on `V′` in the given basis.
    pub certificate: MembershipCertificate,
}

/// Finds `q` with `g^q(V′) = V′` and then `m` with `g^{qm} ∈ Sp♯₂(V′)`.
///
/// For each coordinate functional `λ′_i` of `V′`, `λ = k·λ′_i` extends to `V`
/// and has an `Sp♯` witness `v`; with `w = k·v`,
/// `k²·λ′_i(h^m x − x) = ⟨w + h⁻¹w + ⋯ + h^{1−m}w, x⟩`, so `m` is accepted once
/// every such sum lies in `2k²·V′`. Each accepted `m` is re-verified by
/// [`sp_sharp_membership`] before it is returned.
pub fn finite_index_power_certificate(
    lattice: &BilinearLattice,
    basis: &[LatticeVector],
    g: &IntMatrix,
    exponent_bound: u64,
) -> Result<Bounded<PowerCertificate>, LatticeError> {
    let r = lattice.rank();
    if basis.len() != r {
        return Err(LatticeError::DimensionMismatch {
            expected: r,
            found: basis.len(),
        });
    }
    if g.rows() != r || !g.is_square() {
        return Err(LatticeError::DimensionMismatch {
            expected: r,
            found: g.rows(),
        });
    }
    if !lattice.is_isometry(g) {
        return Err(LatticeError::NotIsometry);
    }
    let b = if r == 0 {
        IntMatrix::zeros(0, 0)
    } else {
        IntMatrix::from_columns(r, basis)
    };
    let k = b.determinant().abs();
    if k.is_zero() {
        return Err(LatticeError::Dependent);
    }
    let b_inv = inverse(&b.to_rational()).expect("nonzero determinant");
    // k·B⁻¹ is the adjugate up to sign, hence integral.
    let kb_inv = b_inv
        .scale(&k.clone().into())
        .to_integer()
        .expect("k·B⁻¹ is integral");

    let mut gq = IntMatrix::identity(r);
    let mut found = None;
    for q in 1..=exponent_bound {
        gq = &gq * g;
        let h = (&(&b_inv * &gq.to_rational()) * &b.to_rational()).to_integer();
        if let Some(h) = h {
            found = Some((q, h));
            break;
        }
    }
    let Some((q, h)) = found else {
        return Ok(Bounded::Inconclusive(format!(
            "no power g^q with q <= {exponent_bound} preserves the sublattice"
        )));
    };

    let base = sp_sharp_membership(lattice, &gq, Level::SpSharp)?;
    let Some(v_coord) = base.witnesses() else {
        return Err(LatticeError::NotSpSharp);
    };
    // w_i = k·Σ_j (k·B⁻¹)_{ij}·v_j.
    let ws: Vec<LatticeVector> = (0..r)
        .map(|i| {
            let mut w = vec![BigInt::zero(); r];
            for (j, vj) in v_coord.iter().enumerate() {
                let c = &k * &kb_inv[(i, j)];
                for (wt, x) in w.iter_mut().zip(vj) {
                    *wt += &c * x;
                }
            }
            w
        })
        .collect();

    let gq_inv = inverse(&gq.to_rational())
        .and_then(|m| m.to_integer())
        .expect("isometries are unimodular");
    let sub_gram = &(&b.transpose() * lattice.gram()) * &b;
    let sub = BilinearLattice::new(sub_gram.clone(), lattice.symmetry())?;
    let modulus = BigInt::from(2) * &k * &k;

    let mut terms = ws.clone();
    let mut sums = vec![vec![BigInt::zero(); r]; r];
    let mut hm = IntMatrix::identity(r);
    for m in 1..=exponent_bound {
        hm = &hm * &h;
        for (s, t) in sums.iter_mut().zip(&terms) {
            for (a, x) in s.iter_mut().zip(t) {
                *a += x;
            }
        }
        let aligned = sums.iter().all(|s| {
            kb_inv
                .mul_vec(s)
                .iter()
                .all(|c| c.is_multiple_of(&(&modulus * &k)))
        });
        if aligned {
            let certificate = sp_sharp_membership(&sub, &hm, Level::SpSharp2)?;
            if certificate.is_member() && certificate.verify(&sub) {
                return Ok(Bounded::Found(PowerCertificate {
                    q,
                    m,
                    exponent: q * m,
                    index: k,
                    sublattice_gram: sub_gram,
                    certificate,
                }));
            }
        }
        terms = terms.iter().map(|t| gq_inv.mul_vec(t)).collect();
    }
    Ok(Bounded::Inconclusive(format!(
        "no m <= {exponent_bound} puts g^(q m) into the level-two subgroup"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{imat, ivec};

    fn hyperbolic_candidate() -> VanishingLatticeCandidate {
        VanishingLatticeCandidate::new(BilinearLattice::hyperbolic(1), vec![ivec(&[1, 0]), ivec(&[0, 1])])
            .unwrap()
    }

    #[test]
    fn single_seed_orbit_is_fixed() {
        let c = VanishingLatticeCandidate::new(BilinearLattice::hyperbolic(1), vec![ivec(&[1, 0])]).unwrap();
        let o = orbit_closure(&c, 5, 100);
        assert_eq!(o.elements.len(), 1);
        assert!(!o.truncated);
    }

    #[test]
    fn empty_seeds() {
        let c = VanishingLatticeCandidate::new(BilinearLattice::hyperbolic(1), vec![]).unwrap();
        assert!(orbit_closure(&c, 3, 100).elements.is_empty());
    }

    #[test]
    fn hyperbolic_orbit_grows_and_replays() {
        let c = hyperbolic_candidate();
        let o = orbit_closure(&c, 3, 10_000);
        assert!(o.vectors().any(|v| *v == ivec(&[1, 1])));
        assert!(o.elements.len() > 2);
        assert!(o.truncated);
        let rep = crate::Representation::from_transvections(
            crate::Presentation::free(2),
            c.lattice().clone(),
            c.seeds(),
        )
        .unwrap();
        for e in &o.elements {
            let v = rep.act(&e.word, &c.seeds()[e.seed]);
            assert_eq!(v, to_rational_vec(&e.vector));
            let t = rep.evaluate_word(&e.transvection_word());
            assert_eq!(t, c.lattice().transvection(&e.vector).unwrap().matrix.to_rational());
        }
    }

    #[test]
    fn vanishing_checks() {
        let r = check_vanishing_lattice(&hyperbolic_candidate(), &Bounds::default());
        assert!(r.passed(), "{r}");

        let c = VanishingLatticeCandidate::new(BilinearLattice::hyperbolic(1), vec![ivec(&[2, 0]), ivec(&[0, 2])])
            .unwrap();
        let r = check_vanishing_lattice(&c, &Bounds::default());
        assert_eq!(r.failing_case.unwrap()["property"], 1);

        let empty = BilinearLattice::new(IntMatrix::zeros(0, 0), Symmetry::Alternating).unwrap();
        let c = VanishingLatticeCandidate::new(empty, vec![]).unwrap();
        assert!(check_vanishing_lattice(&c, &Bounds::default()).passed());
    }

    #[test]
    fn membership_examples() {
        let l = BilinearLattice::hyperbolic(1);
        let id = IntMatrix::identity(2);
        for level in [Level::SpSharp, Level::SpSharp2] {
            let c = sp_sharp_membership(&l, &id, level).unwrap();
            assert_eq!(c.witnesses().unwrap(), &[ivec(&[0, 0]), ivec(&[0, 0])]);
            assert!(c.verify(&l));
        }
        let t = l.transvection(&ivec(&[1, 1])).unwrap().matrix;
        let c1 = sp_sharp_membership(&l, &t, Level::SpSharp).unwrap();
        assert!(c1.is_member() && c1.verify(&l));
        let c2 = sp_sharp_membership(&l, &t, Level::SpSharp2).unwrap();
        assert!(!c2.is_member() && c2.verify(&l));
        let c3 = sp_sharp_membership(&l, &(&t * &t), Level::SpSharp2).unwrap();
        assert!(c3.is_member() && c3.verify(&l));
    }

    #[test]
    fn frame_of_hyperbolic_plane() {
        let f = find_independent_frame(&hyperbolic_candidate(), &Bounds::default()).found().unwrap();
        assert_eq!(f.vectors(), vec![ivec(&[1, 0]), ivec(&[0, 1])]);
        assert_eq!(f.pairing_row, vec![BigInt::one()]);

        let c = VanishingLatticeCandidate::new(BilinearLattice::hyperbolic(2), vec![ivec(&[1, 0, 0, 0]), ivec(&[0, 0, 1, 0])])
            .unwrap();
        assert!(matches!(find_independent_frame(&c, &Bounds::default()), Bounded::Inconclusive(_)));
    }

    #[test]
    fn power_certificates() {
        let l = BilinearLattice::hyperbolic(1);
        let basis = vec![ivec(&[1, 0]), ivec(&[0, 1])];
        let id = IntMatrix::identity(2);
        let p = finite_index_power_certificate(&l, &basis, &id, 10).unwrap().found().unwrap();
        assert_eq!(p.exponent, 1);

        let t = l.transvection(&ivec(&[1, 0])).unwrap().matrix;
        let p = finite_index_power_certificate(&l, &basis, &t, 10).unwrap().found().unwrap();
        assert_eq!(p.exponent, 2);

        // Index-two sublattice spanned by (2, 0), (0, 1); g = T_{(1,1)} moves it.
        let sub = vec![ivec(&[2, 0]), ivec(&[0, 1])];
        let g = l.transvection(&ivec(&[1, 1])).unwrap().matrix;
        let p = finite_index_power_certificate(&l, &sub, &g, 64).unwrap().found().unwrap();
        assert_eq!(p.index, BigInt::from(2));
        let sub_l = BilinearLattice::new(p.sublattice_gram.clone(), Symmetry::Alternating).unwrap();
        assert!(p.certificate.verify(&sub_l));
        let gm = g.pow(p.exponent);
        assert_eq!(imat(&[&[2, 0], &[0, 1]]).determinant(), BigInt::from(2));
        assert!(sp_sharp_membership(&l, &gm, Level::SpSharp).unwrap().is_member());
    }
}
