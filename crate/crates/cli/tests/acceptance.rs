//! Acceptance suite: one line per criterion, `PASS` or `FAIL`, with the
//! measured value next to its pinned limit.
//!
//! Every check that can be recomputed without the library is: matrix powers,
//! cocycle extension, witness replay, `Sp♯` membership and the `S`-matrix
//! identity all have small oracles below. Runs without the libtest harness so
//! the lines are printed on every run, not only on failure.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::IndexedRandom;
use rand::Rng;
use serde_json::Value;
use vancoh::cohomology::{cocycle_space, is_coboundary, probe_kernel, Cocycle};
use vancoh::linalg::inverse;
use vancoh::matrix::RatMatrix;
use vancoh::vanishing::{check_vanishing_lattice, sp_sharp_membership, Level};
use vancoh::verify::even::{certify_even_triviality, even_probe_words, EvenOutcome};
use vancoh::verify::expand::{expand_product_coefficients, verify_expand_lemma};
use vancoh::verify::instances::{
    random_even_instance, random_odd_instance, random_word, rng_from_seed, sample_combination, Relators,
};
use vancoh::verify::odd::{certify_odd_injectivity, lower_s_matrix, odd_probe_words, OddOutcome};
use vancoh::{BilinearLattice, Bounded, Bounds, FreeWord, IntMatrix, LatticeVector, Representation, Status, Symmetry};

// Pinned limits.
const COUNTEREXAMPLE_RANGE: i64 = 20;
const COUNTEREXAMPLE_TIME: Duration = Duration::from_secs(1);
const EXPAND_INSTANCES: usize = 200;
const EXPAND_MAX_RANK: usize = 6;
const EXPAND_MAX_GENERATORS: usize = 8;
const EXPAND_TIME: Duration = Duration::from_secs(10);
const ODD_INSTANCES: usize = 100;
const EVEN_INSTANCES: usize = 50;
const REPLAY_WORDS: usize = 50;
const REPLAY_LENGTH: usize = 12;
const SPSHARP_WORDS: usize = 500;
const SPSHARP_MAX_LENGTH: usize = 10;
const SPSHARP_TIME: Duration = Duration::from_secs(30);
const S_MATRICES: usize = 100;
/// Exact arithmetic throughout: every comparison is equality.
const TOLERANCE: i64 = 0;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_vancoh"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

/// `φ(w)` by `φ(l·u) = φ(l) + ρ(l)·φ(u)`, one letter at a time.
fn oracle_extend(rep: &Representation, values: &[Vec<BigRational>], w: &FreeWord) -> Vec<BigRational> {
    let mut acc = vec![BigRational::zero(); rep.dim()];
    for l in w.letters().iter().rev() {
        for _ in 0..l.exponent.unsigned_abs() {
            acc = if l.exponent > 0 {
                add(&values[l.generator], &rep.image(l.generator).mul_vec(&acc))
            } else {
                // φ(g⁻¹) = −ρ(g)⁻¹·φ(g).
                let inv = rep.inverse_image(l.generator);
                sub(&inv.mul_vec(&acc), &inv.mul_vec(&values[l.generator]))
            };
        }
    }
    acc
}

fn act(rep: &Representation, w: &FreeWord, x: &[BigRational]) -> Vec<BigRational> {
    let mut v = x.to_vec();
    for l in w.letters().iter().rev() {
        for _ in 0..l.exponent.unsigned_abs() {
            v = if l.exponent > 0 {
                rep.image(l.generator).mul_vec(&v)
            } else {
                rep.inverse_image(l.generator).mul_vec(&v)
            };
        }
    }
    v
}

fn add(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `c(w) = ρ(w)x − x` on every generator and on random words.
fn witness_replays(rep: &Representation, c: &Cocycle, x: &[BigRational], rng: &mut impl Rng) -> bool {
    let gens = (0..rep.generator_count()).map(FreeWord::generator);
    let words: Vec<FreeWord> = gens
        .chain((0..REPLAY_WORDS).map(|_| random_word(rng, rep.generator_count(), REPLAY_LENGTH)))
        .collect();
    words
        .iter()
        .all(|w| oracle_extend(rep, c.values(), w) == sub(&act(rep, w, x), x))
}

/// The commuting pair, its cocycle and every `s^a t^b` in the range.
fn criterion_1() -> Outcome {
    let out = std::env::temp_dir().join(format!("vancoh-accept-1-{}.json", std::process::id()));
    let start = Instant::now();
    let status = Command::new(bin()).arg("verify-paper").arg("--json").arg(&out).output().expect("binary runs");
    let elapsed = start.elapsed();
    let report: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap_or_default()).unwrap_or(Value::Null);
    let _ = std::fs::remove_file(&out);
    let w = &report["witnesses"];
    let reported = status.status.code() == Some(0)
        && report["status"] == "pass"
        && w["commute"] == true
        && (w["dim_z1"].clone(), w["dim_b1"].clone(), w["dim_h1"].clone()) == ("4".into(), "2".into(), "2".into())
        && w["phi_class_nonzero"] == true;

    // Hand oracle: A₁ᵃ = I + aE₀₂ and A₂ᵇ = I + bN + C(b,2)N², so
    // A₁ᵃA₂ᵇ − I = [[0, 2b, 2b² + a], [0, 0, 2b], [0, 0, 0]] and
    // φ(sᵃtᵇ) = (a, 0, 0), which is (a/2b)·column 1 or, for b = 0, column 2.
    let mut range_ok = true;
    for a in -COUNTEREXAMPLE_RANGE..=COUNTEREXAMPLE_RANGE {
        for b in -COUNTEREXAMPLE_RANGE..=COUNTEREXAMPLE_RANGE {
            let m = [[0, 2 * b, 2 * b * b + a], [0, 0, 2 * b], [0, 0, 0]];
            let brute = power_product(a, b);
            range_ok &= brute == m;
            let phi = [a, 0, 0];
            let (x, scale) = if b != 0 { ([0, a, 0], 2 * b) } else { ([0, 0, 1], 1) };
            let mx: Vec<i64> = (0..3).map(|i| (0..3).map(|j| m[i][j] * x[j]).sum()).collect();
            range_ok &= mx.iter().zip(phi).all(|(l, r)| *l == scale * r);
        }
    }
    // Independent dimension count: Z¹ is the kernel of the 3 × 6 relator
    // map, B¹ the image of the 6 × 3 coboundary map.
    let a1 = [[1, 0, 1], [0, 1, 0], [0, 0, 1]];
    let a2 = [[1, 2, 2], [0, 1, 2], [0, 0, 1]];
    let id = |i: usize, j: usize| i64::from(i == j);
    let relator: Vec<Vec<BigRational>> = (0..3)
        .map(|i| (0..3).map(|j| q(id(i, j) - a2[i][j])).chain((0..3).map(|j| q(a1[i][j] - id(i, j)))).collect())
        .collect();
    let cob: Vec<Vec<BigRational>> = (0..3)
        .map(|j| (0..3).map(|i| q(a1[i][j] - id(i, j))).chain((0..3).map(|i| q(a2[i][j] - id(i, j)))).collect())
        .collect();
    let z1 = 6 - rank(relator);
    let b1 = rank(cob);
    let dims_ok = (z1, b1, z1 - b1) == (4, 2, 2);
    let fast = elapsed < COUNTEREXAMPLE_TIME;
    Outcome::new(
        reported && range_ok && dims_ok && fast,
        format!(
            "dims ({z1}, {b1}, {}) by elimination, |a|,|b| <= {COUNTEREXAMPLE_RANGE} by hand oracle, {:.3} s < {:?}",
            z1 - b1,
            elapsed.as_secs_f64(),
            COUNTEREXAMPLE_TIME
        ),
    )
}

/// `A₁ᵃA₂ᵇ − I` by repeated integer multiplication.
fn power_product(a: i64, b: i64) -> [[i64; 3]; 3] {
    type M = [[i64; 3]; 3];
    let mul = |x: &M, y: &M| -> M {
        let mut r = [[0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                r[i][j] = (0..3).map(|k| x[i][k] * y[k][j]).sum();
            }
        }
        r
    };
    let pow = |m: M, inv: M, e: i64| -> M {
        let step = if e >= 0 { m } else { inv };
        (0..e.abs()).fold([[1, 0, 0], [0, 1, 0], [0, 0, 1]], |acc, _| mul(&acc, &step))
    };
    let a1 = [[1, 0, 1], [0, 1, 0], [0, 0, 1]];
    let a1_inv = [[1, 0, -1], [0, 1, 0], [0, 0, 1]];
    let a2 = [[1, 2, 2], [0, 1, 2], [0, 0, 1]];
    let a2_inv = [[1, -2, 2], [0, 1, -2], [0, 0, 1]];
    let mut p = mul(&pow(a1, a1_inv, a), &pow(a2, a2_inv, b));
    for (i, row) in p.iter_mut().enumerate() {
        row[i] -= 1;
    }
    p
}

fn rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = &rows[i][col] / &rows[r][col];
                for k in 0..cols {
                    let d = &f * &rows[r][k];
                    rows[i][k] -= d;
                }
            }
        }
        r += 1;
    }
    r
}

/// Transvection (or reflection) action `x − ⟨x, v⟩v` on rationals.
fn transvect(gram: &IntMatrix, v: &[BigInt], x: &[BigRational]) -> Vec<BigRational> {
    let n = v.len();
    let mut p = BigRational::zero();
    for i in 0..n {
        for j in 0..n {
            p += &x[i] * BigRational::from_integer(&gram[(i, j)] * &v[j]);
        }
    }
    (0..n).map(|i| &x[i] - &p * BigRational::from_integer(v[i].clone())).collect()
}

fn criterion_2() -> Outcome {
    let mut rng = rng_from_seed(0xE2);
    let start = Instant::now();
    let mut ok = 0;
    for k in 0..EXPAND_INSTANCES {
        let (lattice, vectors) = if k % 2 == 0 {
            let rank = rng.random_range(1..=EXPAND_MAX_RANK);
            let extra = rng.random_range(0..=(EXPAND_MAX_GENERATORS - rank).min(2));
            let i = random_odd_instance(&mut rng, rank, extra, Relators::Free);
            (i.lattice().clone(), i.vectors().to_vec())
        } else {
            let planes = rng.random_range(1..=EXPAND_MAX_RANK / 2);
            let extra = rng.random_range(0..=(EXPAND_MAX_GENERATORS - 2 * planes).min(2));
            let i = random_even_instance(&mut rng, planes, extra, true, Relators::Free);
            (i.lattice().clone(), i.seeds().to_vec())
        };
        let n = vectors.len();
        let library = verify_expand_lemma(&lattice, &vectors, 2, &mut rng).map(|r| r.passed()).unwrap_or(false);
        // Oracle: φ(g_n ⋯ g_1) built from the right with the transvection
        // formula, against Σ b_i e_i from the recursion.
        let e = RatMatrix::from_rows(
            &(0..n)
                .map(|i| (0..n).map(|j| BigRational::from_integer(lattice.pairing(&vectors[i], &vectors[j]).unwrap())).collect())
                .collect::<Vec<Vec<_>>>(),
        );
        let a: Vec<BigRational> =
            (0..n).map(|_| BigRational::new(rng.random_range(-9i64..=9).into(), rng.random_range(1i64..=4).into())).collect();
        let mut direct = vec![BigRational::zero(); lattice.rank()];
        for (ai, v) in a.iter().zip(&vectors) {
            let value: Vec<BigRational> = v.iter().map(|x| ai * BigRational::from_integer(x.clone())).collect();
            direct = add(&value, &transvect(lattice.gram(), v, &direct));
        }
        let b = expand_product_coefficients(&a, &e);
        let mut combined = vec![BigRational::zero(); lattice.rank()];
        for (bi, v) in b.iter().zip(&vectors) {
            combined = add(&combined, &v.iter().map(|x| bi * BigRational::from_integer(x.clone())).collect::<Vec<_>>());
        }
        if library && direct == combined {
            ok += 1;
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        ok == EXPAND_INSTANCES && elapsed < EXPAND_TIME,
        format!("{ok}/{EXPAND_INSTANCES} instances exact, {:.2} s < {:?}", elapsed.as_secs_f64(), EXPAND_TIME),
    )
}

/// Also gathers the odd representations for criterion 6.
fn criterion_3(reps: &mut Vec<Representation>) -> Outcome {
    let mut ok = 0;
    let mut nontrivial = 0;
    for k in 0..ODD_INSTANCES as u64 {
        let mut rng = rng_from_seed(0x0DD0_0000 + k);
        let rank = rng.random_range(2..=6);
        let extra = rng.random_range(0..=2);
        let relators = if k % 2 == 0 { Relators::Free } else { Relators::Standard };
        let inst = random_odd_instance(&mut rng, rank, extra, relators);
        let rep = inst.representation();
        let kernel = probe_kernel(rep, &cocycle_space(rep).z1_basis, &odd_probe_words(&inst).words);
        let c = sample_combination(&mut rng, rep, &kernel);
        nontrivial += usize::from(!c.is_zero());
        let certified = match certify_odd_injectivity(&inst, &c) {
            Ok(OddOutcome::Coboundary(cert)) => {
                is_coboundary(rep, &c).is_some() && witness_replays(rep, &c, &cert.witness, &mut rng)
            }
            _ => false,
        };
        ok += usize::from(certified);
        reps.push(rep.clone());
    }
    Outcome::new(
        ok == ODD_INSTANCES,
        format!(
            "{ok}/{ODD_INSTANCES} certified ({nontrivial} nonzero cocycles), witnesses replayed on generators and {REPLAY_WORDS} words of length <= {REPLAY_LENGTH}"
        ),
    )
}

fn criterion_4(reps: &mut Vec<Representation>) -> Outcome {
    let bounds = Bounds::default();
    let mut ok = 0;
    let mut identities = 0;
    let mut failures = Vec::new();
    for k in 0..EVEN_INSTANCES as u64 {
        let mut rng = rng_from_seed(0xE7E0_0000 + k);
        let planes = rng.random_range(1..=3);
        let extra = rng.random_range(0..=1);
        let relators = if k % 2 == 0 { Relators::Free } else { Relators::Standard };
        let inst = random_even_instance(&mut rng, planes, extra, true, relators);
        let rep = inst.representation();
        reps.push(rep.clone());
        let properties = check_vanishing_lattice(inst.candidate(), &bounds).status != Status::Fail;
        let Ok(Bounded::Found(probes)) = even_probe_words(&inst, &bounds) else {
            failures.push(k);
            continue;
        };
        let kernel = probe_kernel(rep, &cocycle_space(rep).z1_basis, &probes.words);
        let c = sample_combination(&mut rng, rep, &kernel);
        let certified = match certify_even_triviality(&inst, &c, &bounds) {
            Ok(EvenOutcome::Coboundary(cert)) => {
                let mut powers = cert.power_identities.iter().all(|p| p.holds);
                for p in &cert.probes.seeds {
                    let m = p.power.exponent;
                    let lhs: Vec<BigRational> = c.value(p.seed).iter().map(|x| x * q(m as i64)).collect();
                    powers &= lhs == oracle_extend(rep, c.values(), &FreeWord::power_of(p.seed, m as i64));
                    identities += 1;
                }
                powers && is_coboundary(rep, &c).is_some() && witness_replays(rep, &c, &cert.witness, &mut rng)
            }
            _ => false,
        };
        if properties && certified {
            ok += 1;
        } else {
            failures.push(k);
        }
    }
    Outcome::new(
        ok == EVEN_INSTANCES,
        format!("{ok}/{EVEN_INSTANCES} certified, {identities} power identities exact, failing instances {failures:?}"),
    )
}

/// A random nondegenerate alternating lattice of rank `2·planes`: blocks
/// `[[0, d], [−d, 0]]` under a random unimodular change of basis.
fn random_alternating(rng: &mut impl Rng, planes: usize) -> BilinearLattice {
    let n = 2 * planes;
    let mut g = IntMatrix::zeros(n, n);
    for p in 0..planes {
        let d = BigInt::from(rng.random_range(1..=3));
        g[(2 * p, 2 * p + 1)] = d.clone();
        g[(2 * p + 1, 2 * p)] = -d;
    }
    let mut u = IntMatrix::identity(n);
    for _ in 0..2 * n {
        let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
        if i != j {
            let f = BigInt::from(rng.random_range(-2..=2));
            for r in 0..n {
                let add = &u[(r, j)] * &f;
                u[(r, i)] += add;
            }
        }
    }
    let gram = &(&u.transpose() * &g) * &u;
    BilinearLattice::new(gram, Symmetry::Alternating).expect("alternating")
}

/// Level `k` membership by `k·Gᵀ·w_i = row_i(g − I)` over Q.
fn oracle_member(lattice: &BilinearLattice, g: &IntMatrix, level: i64) -> bool {
    let n = lattice.rank();
    let gt_inv = inverse(&lattice.gram().transpose().to_rational()).expect("nondegenerate");
    let d = (g - &IntMatrix::identity(n)).to_rational();
    (0..n).all(|i| {
        let row: Vec<BigRational> = d.row(i).iter().map(|x| x / q(level)).collect();
        gt_inv.mul_vec(&row).iter().all(BigRational::is_integer)
    })
}

fn random_vector(rng: &mut impl Rng, n: usize) -> LatticeVector {
    loop {
        let v: LatticeVector = (0..n).map(|_| BigInt::from(rng.random_range(-3..=3))).collect();
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

fn criterion_5() -> Outcome {
    let mut rng = rng_from_seed(0x5);
    let start = Instant::now();
    let (mut words_ok, mut squares_ok, mut primitive_ok, mut primitive_seen) = (0, 0, 0, 0);
    for _ in 0..SPSHARP_WORDS {
        let planes = rng.random_range(1..=3);
        let lattice = random_alternating(&mut rng, planes);
        let n = lattice.rank();
        let seeds: Vec<LatticeVector> = (0..rng.random_range(1..=4)).map(|_| random_vector(&mut rng, n)).collect();
        let mut g = IntMatrix::identity(n);
        for _ in 0..rng.random_range(0..=SPSHARP_MAX_LENGTH) {
            let t = lattice.transvection(seeds.choose(&mut rng).unwrap()).unwrap().matrix;
            // T_v⁻¹ = 2I − T_v because (T_v − I)² = 0.
            let t = if rng.random_bool(0.5) { t } else { &IntMatrix::identity(n).scale(&BigInt::from(2)) - &t };
            g = &g * &t;
        }
        let member = sp_sharp_membership(&lattice, &g, Level::SpSharp)
            .map(|c| c.is_member() && c.verify(&lattice))
            .unwrap_or(false);
        words_ok += usize::from(member && oracle_member(&lattice, &g, 1));

        let v = random_vector(&mut rng, n);
        let t = lattice.transvection(&v).unwrap().matrix;
        let square = sp_sharp_membership(&lattice, &(&t * &t), Level::SpSharp2).map(|c| c.is_member()).unwrap_or(false);
        squares_ok += usize::from(square && oracle_member(&lattice, &(&t * &t), 2));
        let content = v.iter().fold(BigInt::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
        if content.is_one() {
            primitive_seen += 1;
            let level2 = sp_sharp_membership(&lattice, &t, Level::SpSharp2).map(|c| c.is_member()).unwrap_or(true);
            primitive_ok += usize::from(!level2 && !oracle_member(&lattice, &t, 2));
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        words_ok == SPSHARP_WORDS
            && squares_ok == SPSHARP_WORDS
            && primitive_ok == primitive_seen
            && primitive_seen > 0
            && elapsed < SPSHARP_TIME,
        format!(
            "{words_ok}/{SPSHARP_WORDS} words in Sp#, {squares_ok}/{SPSHARP_WORDS} squares at level 2, \
             {primitive_ok}/{primitive_seen} primitive T_v excluded, {:.2} s < {:?}",
            elapsed.as_secs_f64(),
            SPSHARP_TIME
        ),
    )
}

fn criterion_6(odd: &[Representation], even: &[Representation]) -> Outcome {
    let mut odd_ok = true;
    for rep in odd {
        for g in rep.images() {
            odd_ok &= (g * g).is_identity();
        }
    }
    let mut even_ok = true;
    for rep in even {
        for g in rep.images() {
            let n = g - &RatMatrix::identity(g.rows());
            even_ok &= !n.is_zero() && (&n * &n).is_zero();
        }
    }
    Outcome::new(
        odd_ok && even_ok && !odd.is_empty() && !even.is_empty(),
        format!(
            "g^2 = I on {} odd instances, (T - I) != 0 and (T - I)^2 = 0 on {} even instances",
            odd.len(),
            even.len()
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut rng = rng_from_seed(0x57);
    let (mut ok, mut nonunit) = (0, 0);
    for _ in 0..S_MATRICES {
        let n = rng.random_range(2..=5);
        let mut e = vec![vec![0i64; n]; n];
        for i in 0..n {
            e[i][i] = 2;
            for j in 0..i {
                let x = *[-1, -1, 0, 1, 1, 2, -2].choose(&mut rng).unwrap();
                e[i][j] = x;
                e[j][i] = x;
            }
        }
        let quad = |c: &[i64], m: &dyn Fn(usize, usize) -> i64| -> i64 {
            (0..n).map(|i| (0..n).map(|j| c[i] * m(i, j) * c[j]).sum::<i64>()).sum()
        };
        // Bounded search over c ∈ [−2, 2]ⁿ, preferring vectors with at least
        // two nonzero entries; a unit vector always works.
        let mut candidates: Vec<Vec<i64>> = Vec::new();
        let total = 5usize.pow(n as u32);
        for code in 0..total {
            let c: Vec<i64> = (0..n).map(|i| (code / 5usize.pow(i as u32) % 5) as i64 - 2).collect();
            if c.iter().filter(|x| **x != 0).count() >= 2 && quad(&c, &|i, j| e[i][j]) == 2 {
                candidates.push(c);
            }
        }
        let c = match candidates.choose(&mut rng) {
            Some(c) => {
                nonunit += 1;
                c.clone()
            }
            None => (0..n).map(|i| i64::from(i == 0)).collect(),
        };
        let s = |i: usize, j: usize| match i.cmp(&j) {
            std::cmp::Ordering::Equal => 1,
            std::cmp::Ordering::Greater => e[i][j],
            std::cmp::Ordering::Less => 0,
        };
        let library = lower_s_matrix(&RatMatrix::from_rows(
            &e.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<Vec<_>>>(),
        ));
        let same = (0..n).all(|i| (0..n).all(|j| library[(i, j)] == q(s(i, j))));
        if quad(&c, &|i, j| e[i][j]) == 2 && (quad(&c, &s) - 1).abs() <= TOLERANCE && same {
            ok += 1;
        }
    }
    Outcome::new(
        ok == S_MATRICES,
        format!("{ok}/{S_MATRICES} with c^T S c = 1 ({nonunit} found with two or more nonzero entries)"),
    )
}

/// Runs a command twice and compares the JSON reports byte for byte.
fn criterion_8() -> Outcome {
    let runs: [Vec<String>; 4] = [
        vec!["random-experiment".into(), "--seed".into(), "42".into(), "--trials".into(), "6".into()],
        vec!["verify-paper".into(), "--seed".into(), "1".into()],
        vec!["h1".into(), "--input".into(), data("counterexample.json").display().to_string(), "--seed".into(), "3".into()],
        vec!["certify-even".into(), "--input".into(), data("chain.json").display().to_string(), "--seed".into(), "9".into()],
    ];
    let mut identical = 0;
    for (k, args) in runs.iter().enumerate() {
        let outputs: Vec<Vec<u8>> = (0..2)
            .map(|r| {
                let path = std::env::temp_dir().join(format!("vancoh-accept-8-{}-{k}-{r}.json", std::process::id()));
                Command::new(bin()).args(args).arg("--json").arg(&path).output().expect("binary runs");
                let bytes = std::fs::read(&path).unwrap_or_default();
                let _ = std::fs::remove_file(&path);
                bytes
            })
            .collect();
        if !outputs[0].is_empty() && outputs[0] == outputs[1] {
            identical += 1;
        }
    }
    Outcome::new(
        identical == runs.len(),
        format!("{identical}/{} seeded commands byte-identical across two runs", runs.len()),
    )
}

fn main() {
    // Answer `--list` so test discovery sees a single entry.
    if std::env::args().any(|a| a == "--list") {
        println!("acceptance: test");
        return;
    }
    let mut odd = Vec::new();
    let mut even = Vec::new();
    let results = [
        ("counterexample reproduction", criterion_1()),
        ("expand recursion", criterion_2()),
        ("odd certification", criterion_3(&mut odd)),
        ("even certification", criterion_4(&mut even)),
        ("congruence membership", criterion_5()),
        ("Picard-Lefschetz orders", criterion_6(&odd, &even)),
        ("S-matrix identity", criterion_7()),
        ("determinism", criterion_8()),
    ];
    let mut failed = 0;
    for (k, (name, o)) in results.iter().enumerate() {
        println!("criterion {} {}: {} ({})", k + 1, if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
        failed += usize::from(!o.pass);
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
