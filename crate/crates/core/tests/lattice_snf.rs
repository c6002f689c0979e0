//! Transvections, Smith normal form and integral solvability against
//! brute-force oracles.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use vancoh::lattice::{BilinearLattice, Symmetry};
use vancoh::matrix::{imat, ivec, IntMatrix};
use vancoh::snf::{integral_membership, smith_normal_form, Solvability};

fn int_matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |d| IntMatrix::new(r, c, d.into_iter().map(BigInt::from).collect()))
    })
}

fn alternating(n: usize) -> impl Strategy<Value = BilinearLattice> {
    prop::collection::vec(-3i64..=3, n * (n - 1) / 2).prop_map(move |upper| {
        let mut g = IntMatrix::zeros(n, n);
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                g[(i, j)] = BigInt::from(upper[k]);
                g[(j, i)] = BigInt::from(-upper[k]);
                k += 1;
            }
        }
        BilinearLattice::new(g, Symmetry::Alternating).unwrap()
    })
}

fn vector(n: usize, bound: i64) -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec(-bound..=bound, n).prop_map(|v| v.into_iter().map(BigInt::from).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn transvection_matches_formula((l, v, x) in (2usize..=6).prop_flat_map(|n| (alternating(n), vector(n, 4), vector(n, 6)))) {
        let t = l.transvection(&v).unwrap();
        let c = l.pairing(&x, &v).unwrap();
        let expected: Vec<BigInt> = x.iter().zip(&v).map(|(xi, vi)| xi - &c * vi).collect();
        prop_assert_eq!(t.matrix.mul_vec(&x), expected.clone());
        prop_assert_eq!(l.apply_transvection(&v, &x), expected);
        prop_assert!(t.isometric);
        prop_assert_eq!(l.apply_inverse_transvection(&v, &t.matrix.mul_vec(&x)), x);
    }

    #[test]
    fn smith_form_is_a_valid_factorization(a in int_matrix(8, 20)) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(&(&s.left * &a) * &s.right, s.diagonal.clone());
        prop_assert!(s.left.determinant().abs() == BigInt::from(1));
        prop_assert!(s.right.determinant().abs() == BigInt::from(1));
        for i in 0..s.diagonal.rows() {
            for j in 0..s.diagonal.cols() {
                if i != j {
                    prop_assert!(s.diagonal[(i, j)].is_zero());
                }
            }
        }
        for k in 0..s.divisors.len() {
            prop_assert_eq!(&s.divisors[k], &s.diagonal[(k, k)]);
            prop_assert!(!s.divisors[k].is_negative());
            if k + 1 < s.divisors.len() && !s.divisors[k].is_zero() {
                prop_assert!(s.divisors[k + 1].is_multiple_of(&s.divisors[k]));
            }
        }
        prop_assert_eq!(s.rank, s.divisors.iter().filter(|d| !d.is_zero()).count());
    }

    #[test]
    fn smith_form_is_deterministic(a in int_matrix(5, 9)) {
        let (s, t) = (smith_normal_form(&a), smith_normal_form(&a));
        prop_assert_eq!(s.left, t.left);
        prop_assert_eq!(s.right, t.right);
    }
}

/// Every `x ∈ [−10, 10]³` with `A·x = b`.
fn brute_force_solution(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let r = -10i64..=10;
    for x0 in r.clone() {
        for x1 in r.clone() {
            for x2 in r.clone() {
                let x = ivec(&[x0, x1, x2]);
                if a.mul_vec(&x) == b {
                    return Some(x);
                }
            }
        }
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn integral_membership_agrees_with_search(
        entries in prop::collection::vec(-3i64..=3, 6),
        rhs in prop::collection::vec(-6i64..=6, 2),
    ) {
        let a = IntMatrix::new(2, 3, entries.into_iter().map(BigInt::from).collect());
        let b: Vec<BigInt> = rhs.into_iter().map(BigInt::from).collect();
        match integral_membership(&a, &b).unwrap() {
            Solvability::Solution(x) => prop_assert_eq!(a.mul_vec(&x), b),
            // A box solution would contradict the obstruction.
            Solvability::Obstructed(_) => prop_assert!(brute_force_solution(&a, &b).is_none()),
        }
    }
}

#[test]
fn hyperbolic_plane_snf_is_trivial() {
    let s = smith_normal_form(BilinearLattice::hyperbolic(2).gram());
    assert!(s.torsion().is_empty());
    assert_eq!(s.rank, 4);
}

#[test]
fn torsion_of_a_known_cokernel() {
    // Z² / ⟨(2, 4), (6, 8)⟩ ≅ Z/2 ⊕ Z/4.
    let s = smith_normal_form(&imat(&[&[2, 4], &[6, 8]]));
    assert_eq!(s.torsion(), vec![BigInt::from(2), BigInt::from(4)]);
}
