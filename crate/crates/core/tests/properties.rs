use asep_moments::ansatz::{build_operators, check_ansatz_relations};
use asep_moments::exact::{
    cofactor_determinant, q_binomial, Domain, Field, GaussianRational, Matrix, Poly, Rational, Ring,
};
use asep_moments::sampling::{PointOptions, PointSampler};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(p, q)| Rational::new(p, q))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (rational(), rational()).prop_map(|(a, b)| GaussianRational::new(a, b))
}

fn square(n: usize) -> impl Strategy<Value = Matrix<Rational>> {
    proptest::collection::vec(rational(), n * n)
        .prop_map(move |v| Matrix::from_fn(n, n, |i, j| v[i * n + j].clone()))
}

fn poly() -> impl Strategy<Value = Poly<Rational>> {
    proptest::collection::vec(rational(), 0..4).prop_map(Poly::from_coeffs)
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rational(), b in rational(), c in rational()) {
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c));
        if !a.is_zero() {
            prop_assert!((a.clone() * a.inv().unwrap()).is_one());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn gaussian_field_axioms(a in gaussian(), b in gaussian()) {
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
        prop_assert_eq!((a.clone() * a.conj()).norm(), a.norm() * a.norm());
        if !a.is_zero() {
            prop_assert!((a.clone() * a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn bareiss_matches_cofactor(m in (1usize..5).prop_flat_map(square)) {
        prop_assert_eq!(Rational::determinant(&m).unwrap(), cofactor_determinant(&m).unwrap());
    }

    #[test]
    fn determinant_is_multiplicative(a in square(3), b in square(3)) {
        let lhs = Rational::determinant(&a.mul(&b)).unwrap();
        prop_assert_eq!(lhs, Rational::determinant(&a).unwrap() * Rational::determinant(&b).unwrap());
    }

    #[test]
    fn poly_determinant_matches_cofactor(v in proptest::collection::vec(poly(), 9)) {
        let m = Matrix::from_fn(3, 3, |i, j| v[i * 3 + j].clone());
        prop_assert_eq!(Poly::determinant(&m).unwrap(), cofactor_determinant(&m).unwrap());
    }

    #[test]
    fn interpolation_recovers_polynomial(p in proptest::collection::vec(rational(), 1..7)) {
        let p = Poly::from_coeffs(p);
        let xs: Vec<Rational> = (0..7).map(Rational::integer).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| p.eval(x)).collect();
        prop_assert_eq!(Poly::interpolate(&xs, &ys).unwrap(), p);
    }

    #[test]
    fn poly_division_identity(a in poly(), b in poly()) {
        prop_assume!(!b.is_zero());
        let (quo, rem) = a.div_rem(&b).unwrap();
        prop_assert_eq!(quo * b.clone() + rem.clone(), a);
        prop_assert!(rem.degree().map_or(true, |d| d < b.degree().unwrap()));
    }

    #[test]
    fn q_pascal(n in 1i64..9, k in 0i64..9, q in rational()) {
        // [n,k] = q^k [n-1,k] + [n-1,k-1]
        let lhs = q_binomial(n, k, &q);
        let rhs = q.pow(k as u32) * q_binomial(n - 1, k, &q) + q_binomial(n - 1, k - 1, &q);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ansatz_relations_at_random_points(seed in 0u64..10_000) {
        let p = PointSampler::new(seed).param_point(PointOptions::default()).unwrap();
        let ops = build_operators(&p).unwrap();
        prop_assert!(check_ansatz_relations(&ops, 6).unwrap().all_hold());
    }
}

/// Swapping D and E must break the relations; the checker is not vacuous.
#[test]
fn negative_control_swapped_operators() {
    let p = PointSampler::new(3).param_point(PointOptions::default()).unwrap();
    let mut ops = build_operators(&p).unwrap();
    std::mem::swap(&mut ops.d, &mut ops.e);
    assert!(!check_ansatz_relations(&ops, 6).unwrap().all_hold());
}

#[test]
fn singular_matrix_has_zero_determinant() {
    let m = Matrix::from_fn(3, 3, |i, j| Rational::integer((i * 3 + j) as i64));
    assert!(Rational::determinant(&m).unwrap().is_zero());
}
