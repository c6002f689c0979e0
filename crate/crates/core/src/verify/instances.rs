//! Seeded random instances for the odd and even pipelines.
//!
//! Every instance is produced by a deterministic `SplitMix64` stream, so a
//! seed fully determines the lattice, the vectors and the presentation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;
use serde::{Deserialize, Serialize};

use crate::cohomology::{cocycle_space, combine, probe_kernel, Cocycle};
use crate::lattice::{BilinearLattice, Symmetry};
use crate::matrix::{IntMatrix, LatticeVector};
use crate::representation::Representation;
use crate::verify::even::EvenInstance;
use crate::verify::odd::OddInstance;
use crate::words::{FreeWord, Letter, Presentation};

pub fn rng_from_seed(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relators {
    /// The free group on the generators.
    Free,
    /// Odd: `g_i²` and `(g_i g_j)^m` for pairings `0, ±1`.
    /// Even: braid relations for pairings `±1`, commutators for `0`.
    Standard,
}

fn elementary_change<R: Rng>(rng: &mut R, n: usize, steps: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut u_inv = IntMatrix::identity(n);
    if n < 2 {
        return (u, u_inv);
    }
    for _ in 0..steps {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let s = BigInt::from(if rng.random_bool(0.5) { 1 } else { -1 });
        let mut e = IntMatrix::identity(n);
        e[(i, j)] = s.clone();
        let mut e_inv = IntMatrix::identity(n);
        e_inv[(i, j)] = -s;
        u = &u * &e;
        u_inv = &e_inv * &u_inv;
    }
    (u, u_inv)
}

fn pairs_to_odd_relators(lattice: &BilinearLattice, vectors: &[LatticeVector]) -> Vec<FreeWord> {
    let mut out: Vec<FreeWord> = (0..vectors.len()).map(|i| FreeWord::power_of(i, 2)).collect();
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            let p = lattice.pairing(&vectors[i], &vectors[j]).expect("same rank");
            let m = if p.is_zero() {
                2
            } else if p == BigInt::one() || p == -BigInt::one() {
                3
            } else {
                continue;
            };
            out.push(FreeWord::from_pairs(&[(i, 1), (j, 1)]).pow(m));
        }
    }
    out
}

fn pairs_to_even_relators(lattice: &BilinearLattice, vectors: &[LatticeVector]) -> Vec<FreeWord> {
    let mut out = Vec::new();
    for i in 0..vectors.len() {
        for j in i + 1..vectors.len() {
            let p = lattice.pairing(&vectors[i], &vectors[j]).expect("same rank");
            if p.is_zero() {
                out.push(FreeWord::from_pairs(&[(i, 1), (j, 1), (i, -1), (j, -1)]));
            } else if p == BigInt::one() || p == -BigInt::one() {
                out.push(FreeWord::from_pairs(&[(i, 1), (j, 1), (i, 1), (j, -1), (i, -1), (j, -1)]));
            }
        }
    }
    out
}

/// Keeps only the relators that hold, so the presentation is always valid.
fn verified_presentation(lattice: &BilinearLattice, vectors: &[LatticeVector], candidates: Vec<FreeWord>) -> Presentation {
    let free = Presentation::free(vectors.len());
    let rep = Representation::from_transvections(free, lattice.clone(), vectors).expect("valid seeds");
    let holds: Vec<FreeWord> = candidates
        .into_iter()
        .filter(|r| rep.evaluate_word(r).is_identity())
        .collect();
    Presentation::new(vectors.len(), holds).expect("generators in range")
}

fn random_dependent<R: Rng>(rng: &mut R, gram: &IntMatrix, p: usize) -> LatticeVector {
    for _ in 0..200 {
        let c: LatticeVector = (0..p).map(|_| BigInt::from(rng.random_range(-2i64..=2))).collect();
        if gram.bilinear(&c, &c) == BigInt::from(2) {
            return c;
        }
    }
    let mut c = vec![BigInt::zero(); p];
    c[rng.random_range(0..p)] = BigInt::from(if rng.random_bool(0.5) { 1 } else { -1 });
    c
}

/// A symmetric lattice of rank `rank` with `rank` independent vectors of
/// square two followed by `extra` dependent ones, in a random integral basis
/// and shuffled order.
pub fn random_odd_instance<R: Rng>(rng: &mut R, rank: usize, extra: usize, relators: Relators) -> OddInstance {
    assert!(rank > 0, "rank must be positive");
    let mut gram = IntMatrix::zeros(rank, rank);
    for i in 0..rank {
        gram[(i, i)] = BigInt::from(2);
        for j in 0..i {
            let x = BigInt::from(match rng.random_range(0..10) {
                0..=3 => 0,
                4..=6 => -1,
                7..=8 => 1,
                _ => if rng.random_bool(0.5) { 2 } else { -2 },
            });
            gram[(i, j)] = x.clone();
            gram[(j, i)] = x;
        }
    }
    let mut vectors: Vec<LatticeVector> = (0..rank)
        .map(|i| {
            let mut e = vec![BigInt::zero(); rank];
            e[i] = BigInt::one();
            e
        })
        .collect();
    for _ in 0..extra {
        vectors.push(random_dependent(rng, &gram, rank));
    }

    // ⟨U⁻¹x, U⁻¹y⟩ under UᵀGU equals ⟨x, y⟩ under G.
    let (u, u_inv) = elementary_change(rng, rank, 2 * rank);
    let gram = &(&u.transpose() * &gram) * &u;
    let mut vectors: Vec<LatticeVector> = vectors.iter().map(|e| u_inv.mul_vec(e)).collect();
    vectors.shuffle(rng);

    let lattice = BilinearLattice::new(gram, Symmetry::Symmetric).expect("symmetric by construction");
    let candidates = match relators {
        Relators::Free => Vec::new(),
        Relators::Standard => pairs_to_odd_relators(&lattice, &vectors),
    };
    let presentation = verified_presentation(&lattice, &vectors, candidates);
    OddInstance::new(lattice, vectors, presentation).expect("square-two vectors")
}

/// A standard chain `a₁, b₁, a₂ − a₁, b₂, …` on `planes` hyperbolic planes,
/// optionally moved by a random symplectic change, with `extra` seeds taken
/// from the orbit, shuffled.
pub fn random_even_instance<R: Rng>(
    rng: &mut R,
    planes: usize,
    extra: usize,
    scramble: bool,
    relators: Relators,
) -> EvenInstance {
    assert!((1..=3).contains(&planes), "between one and three planes");
    let n = 2 * planes;
    let lattice = BilinearLattice::hyperbolic(planes);
    let unit = |i: usize| {
        let mut v = vec![BigInt::zero(); n];
        v[i] = BigInt::one();
        v
    };
    let mut seeds = Vec::with_capacity(n + extra);
    for p in 0..planes {
        let mut a = unit(2 * p);
        if p > 0 {
            a[2 * (p - 1)] = -BigInt::one();
        }
        seeds.push(a);
        seeds.push(unit(2 * p + 1));
    }

    if scramble {
        for _ in 0..n {
            let v: LatticeVector = (0..n).map(|_| BigInt::from(rng.random_range(-1i64..=1))).collect();
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            seeds = seeds.iter().map(|s| lattice.apply_transvection(&v, s)).collect();
        }
    }
    for _ in 0..extra {
        let mut v = seeds[rng.random_range(0..n)].clone();
        for _ in 0..rng.random_range(1..=3) {
            let t = &seeds[rng.random_range(0..n)];
            v = if rng.random_bool(0.5) {
                lattice.apply_transvection(t, &v)
            } else {
                lattice.apply_inverse_transvection(t, &v)
            };
        }
        seeds.push(v);
    }
    seeds.shuffle(rng);

    let candidates = match relators {
        Relators::Free => Vec::new(),
        Relators::Standard => pairs_to_even_relators(&lattice, &seeds),
    };
    let presentation = verified_presentation(&lattice, &seeds, candidates);
    EvenInstance::new(lattice, seeds, presentation).expect("nonzero seeds")
}

/// A random combination with coefficients in `[−3, 3]` of `basis`.
pub fn sample_combination<R: Rng>(rng: &mut R, rep: &Representation, basis: &[Cocycle]) -> Cocycle {
    let t: Vec<BigRational> = basis
        .iter()
        .map(|_| BigRational::from_integer(rng.random_range(-3i64..=3).into()))
        .collect();
    combine(rep, basis, &t)
}

/// A random cocycle whose restriction vanishes at every word in `probes`.
pub fn sample_probe_kernel_cocycle<R: Rng>(rng: &mut R, rep: &Representation, probes: &[FreeWord]) -> Cocycle {
    let spaces = cocycle_space(rep);
    let kernel = probe_kernel(rep, &spaces.z1_basis, probes);
    sample_combination(rng, rep, &kernel)
}

/// A word of length at most `max_len` in letters `g_i^{±1}`, not reduced.
pub fn random_word<R: Rng>(rng: &mut R, generator_count: usize, max_len: usize) -> FreeWord {
    if generator_count == 0 {
        return FreeWord::identity();
    }
    let len = rng.random_range(0..=max_len);
    FreeWord::new(
        (0..len)
            .map(|_| Letter {
                generator: rng.random_range(0..generator_count),
                exponent: if rng.random_bool(0.5) { 1 } else { -1 },
            })
            .collect(),
    )
}
