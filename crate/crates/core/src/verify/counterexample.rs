//! The commuting pair `A₁`, `A₂` on `Q³`: a nonzero class in `H¹(Z², Q³)`
//! whose restriction to every cyclic subgroup vanishes.

use num_rational::BigRational;
use num_traits::Zero;

use crate::cohomology::{cocycle_space, extend_cocycle, is_coboundary, is_cocycle, restriction_to_cyclic, Cocycle};
use crate::matrix::{qmat, qvec, vec_add, RatMatrix, RationalVector};
use crate::report::VerificationReport;
use crate::representation::Representation;
use crate::words::{FreeWord, Presentation};

/// Range `|a|, |b| ≤ RANGE` of the words `s^a t^b` checked.
pub const RANGE: i64 = 20;
/// Sub-box recomputed directly from the words.
pub const DIRECT_RANGE: i64 = 5;

pub fn counterexample_representation() -> Representation {
    Representation::on_space(
        Presentation::free_abelian_rank_two(),
        3,
        vec![
            qmat(&[&[1, 0, 1], &[0, 1, 0], &[0, 0, 1]]),
            qmat(&[&[1, 2, 2], &[0, 1, 2], &[0, 0, 1]]),
        ],
    )
    .expect("invertible images")
}

/// `φ(s) = (1, 0, 0)`, `φ(t) = 0`, so `φ(s^a t^b) = (a, 0, 0)`.
pub fn counterexample_cocycle(rep: &Representation) -> Cocycle {
    Cocycle::new(rep, vec![qvec(&[1, 0, 0]), qvec(&[0, 0, 0])]).expect("two values of length three")
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `A₁^a A₂^b − I = [[0, 2b, 2b² + a], [0, 0, 2b], [0, 0, 0]]`.
pub fn closed_form(a: i64, b: i64) -> RatMatrix {
    qmat(&[&[0, 2 * b, 2 * b * b + a], &[0, 0, 2 * b], &[0, 0, 0]])
}

/// A preimage of `(a, 0, 0)` under the closed form: `(0, a/2b, 0)` when
/// `b ≠ 0`, else `(0, 0, 1)`.
pub fn family_preimage(a: i64, b: i64) -> Vec<BigRational> {
    if b != 0 {
        vec![q(0), BigRational::new(a.into(), (2 * b).into()), q(0)]
    } else {
        vec![q(0), q(0), q(1)]
    }
}

pub fn reproduce_counterexample() -> VerificationReport {
    let mut report = VerificationReport::new("counterexample");
    let rep = counterexample_representation();
    let phi = counterexample_cocycle(&rep);

    let commute = rep.image(0) * rep.image(1) == rep.image(1) * rep.image(0);
    report.witness("commute", commute);
    if !commute {
        report.fail("A1 A2 != A2 A1");
    }
    let spaces = cocycle_space(&rep);
    report
        .witness("dim_z1", spaces.z1_dimension())
        .witness("dim_b1", spaces.b1_dimension())
        .witness("dim_h1", spaces.h1_dimension);
    if (spaces.z1_dimension(), spaces.b1_dimension(), spaces.h1_dimension) != (4, 2, 2) {
        report.fail("dimensions differ from (4, 2, 2)");
    }

    let in_z1 = is_cocycle(&rep, &phi);
    let in_b1 = is_coboundary(&rep, &phi).is_some();
    report.witness("phi_in_z1", in_z1).witness("phi_class_nonzero", !in_b1);
    if !in_z1 {
        report.fail("phi violates the commutator relator");
    }
    if in_b1 {
        report.fail("phi is a coboundary");
    }

    // Powers and single-letter values are tabulated, and s^a t^b is assembled
    // with φ(xy) = φ(x) + ρ(x)φ(y). A small box is recomputed from scratch.
    let span = (2 * RANGE + 1) as usize;
    let powers = |g: usize| -> (Vec<RatMatrix>, Vec<RationalVector>) {
        (-RANGE..=RANGE)
            .map(|k| {
                let w = FreeWord::power_of(g, k);
                (rep.evaluate_word(&w), extend_cocycle(&rep, &phi, &w))
            })
            .unzip()
    };
    let (s_pow, s_val) = powers(0);
    let (t_pow, t_val) = powers(1);
    let identity = RatMatrix::identity(3);
    let mut checked = 0usize;
    'range: for i in 0..span {
        for j in 0..span {
            let (a, b) = (i as i64 - RANGE, j as i64 - RANGE);
            let g = &(&s_pow[i] * &t_pow[j]) - &identity;
            let value = vec_add(&s_val[i], &s_pow[i].mul_vec(&t_val[j]));
            let expected = vec![q(a), q(0), q(0)];
            let ok = g == closed_form(a, b) && value == expected && g.mul_vec(&family_preimage(a, b)) == expected;
            let direct_ok = a.abs() > DIRECT_RANGE || b.abs() > DIRECT_RANGE || {
                let w = FreeWord::from_pairs(&[(0, a), (1, b)]).free_reduce();
                extend_cocycle(&rep, &phi, &w) == expected && restriction_to_cyclic(&rep, &phi, &w).is_zero()
            };
            if !ok || !direct_ok {
                report.fail(serde_json::json!({ "a": a, "b": b }));
                break 'range;
            }
            checked += 1;
        }
    }
    report.witness("restriction_words_checked", checked).witness("range", RANGE);
    debug_assert!(phi.values().iter().flatten().any(|x| !x.is_zero()));
    report
}
