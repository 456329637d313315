mod common;

use minifold_core::cyclotomic::exact_divide;
use minifold_core::sonb::{self, FormSpace};
use minifold_core::{
    BigInt, BigRational, ExactMatrix, IntMatrix, IntValuedPolynomial, Matrix, RatMatrix, Zeta21,
    Zeta7, F3,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Polynomials of degree at most 6 with small numerators over the
/// denominators that occur for integer-valued ones.
fn rational_poly() -> impl Strategy<Value = Vec<BigRational>> {
    let coeff = (-12i64..=12, prop::sample::select(vec![1i64, 2, 3, 4, 6, 8, 12, 24, 120, 720]))
        .prop_map(|(n, d)| rat(n, d));
    prop::collection::vec(coeff, 1..=7)
}

fn binomial_poly() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-20i64..=20, 1..=7)
}

fn small_matrix(max: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-9i64..=9, n), n))
}

fn zeta7() -> impl Strategy<Value = Zeta7> {
    prop::collection::vec(-6i64..=6, 6).prop_map(|c| Zeta7::from_i64_coeffs(&c))
}

fn zeta21() -> impl Strategy<Value = Zeta21> {
    prop::collection::vec(-4i64..=4, 12).prop_map(|c| Zeta21::from_i64_coeffs(&c))
}

/// Upper unitriangular integer form of size 2..=5.
fn unitriangular() -> impl Strategy<Value = Matrix<i64>> {
    (2usize..=5).prop_flat_map(|n| {
        prop::collection::vec(-5i64..=5, n * n).prop_map(move |v| {
            Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
                std::cmp::Ordering::Less => v[i * n + j],
                std::cmp::Ordering::Equal => 1,
                std::cmp::Ordering::Greater => 0,
            })
        })
    })
}

proptest! {
    #[test]
    fn integrality_matches_direct_evaluation(coeffs in rational_poly()) {
        let direct = (-10..=10).all(|k| {
            let x = BigRational::from_integer(k.into());
            coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c).is_integer()
        });
        prop_assert_eq!(IntValuedPolynomial::new(coeffs).is_ok(), direct);
    }

    #[test]
    fn binomial_coordinates_round_trip(cs in binomial_poly()) {
        let big: Vec<BigInt> = cs.iter().map(|&c| BigInt::from(c)).collect();
        let p = IntValuedPolynomial::from_binomial_coefficients(&big);
        for k in -10..=10 {
            prop_assert_eq!(p.eval(k), common::binomial_eval(&cs, k));
        }
        let mut trimmed = cs.clone();
        while trimmed.last() == Some(&0) {
            trimmed.pop();
        }
        let back: Vec<i64> = p.binomial_coefficients().iter().map(|c| i64::try_from(c).unwrap()).collect();
        prop_assert_eq!(back, trimmed);
    }

    #[test]
    fn determinant_is_top_coefficient_power(cs in binomial_poly(), extra in 0usize..=2) {
        let d = cs.len() - 1;
        let n = d + extra;
        let entries = common::gram_entries(&cs, n);
        let m = ExactMatrix::from_integers(&Matrix::from_rows(entries));
        let det = m.determinant().unwrap().as_integer().unwrap();
        let expected = if extra == 0 {
            num_traits::pow(BigInt::from(cs[d]), n + 1)
        } else {
            BigInt::zero()
        };
        prop_assert_eq!(det, expected);
    }

    #[test]
    fn bareiss_agrees_with_field_elimination(rows in small_matrix(6)) {
        let ints: IntMatrix = Matrix::from_rows(rows.clone()).map(|&v| BigInt::from(v));
        let rats: RatMatrix = ints.map(|v| BigRational::from_integer(v.clone()));
        let bareiss = ints.determinant_bareiss().unwrap();
        prop_assert_eq!(BigRational::from_integer(bareiss.clone()), rats.determinant().unwrap());
        let f3: Matrix<F3> = Matrix::from_rows(rows).map(|&v| F3::from_signed(v as i128));
        prop_assert_eq!(f3.determinant().unwrap(), F3::from_signed((&bareiss % 3i32).try_into().unwrap()));
    }

    #[test]
    fn determinant_is_multiplicative(a in small_matrix(4), b in small_matrix(4)) {
        let n = a.len().min(b.len());
        let cut = |m: &Vec<Vec<i64>>| -> IntMatrix {
            Matrix::from_fn(n, n, |i, j| BigInt::from(m[i][j]))
        };
        let (a, b) = (cut(&a), cut(&b));
        let ab = a.try_mul(&b).unwrap();
        prop_assert_eq!(
            ab.determinant_bareiss().unwrap(),
            a.determinant_bareiss().unwrap() * b.determinant_bareiss().unwrap()
        );
    }

    #[test]
    fn mutations_stay_semi_orthonormal(form in unitriangular(), moves in prop::collection::vec(0usize..4, 1..8)) {
        let n = form.rows();
        for space in [FormSpace::integral(form.clone()).unwrap(), FormSpace::modular(5, &form).unwrap()] {
            let mut basis = sonb::standard_basis(n);
            for &i in &moves {
                let i = i % (n - 1);
                let next = sonb::mutate(&basis, i, &space).unwrap();
                prop_assert!(sonb::verify_semi_orthonormal(&space, &next).is_ok());
                prop_assert_eq!(sonb::rank(&space, &next).unwrap(), n);
                prop_assert_eq!(&sonb::mutate_inverse(&next, i, &space).unwrap(), &basis);
                basis = next;
            }
        }
    }

    #[test]
    fn galois_conjugation_is_a_ring_map(x in zeta21(), y in zeta21(), k in prop::sample::select(vec![2i64, 4, 5, 8, 10, 11, 13, 16, 17, 19, 20])) {
        let s = |v: &Zeta21| v.galois_conj(k).unwrap();
        prop_assert_eq!(s(&(x.clone() + y.clone())), s(&x) + s(&y));
        prop_assert_eq!(s(&(x.clone() * y.clone())), s(&x) * s(&y));
    }

    #[test]
    fn norm_is_multiplicative(x in zeta7(), y in zeta7()) {
        prop_assert_eq!((x.clone() * y.clone()).norm(), x.norm() * y.norm());
    }

    #[test]
    fn division_undoes_multiplication(a in zeta7(), b in zeta7()) {
        prop_assume!(!b.is_zero());
        let q = exact_divide(&(a.clone() * b.clone()), &b).unwrap();
        prop_assert_eq!(q, a.to_rational());
        let one = exact_divide(&b, &b).unwrap();
        prop_assert!(one.is_one());
    }

    #[test]
    fn encode_decode_round_trip(v in prop::collection::vec(0i64..7, 1..=6)) {
        let space = FormSpace::modular(7, &Matrix::identity(v.len())).unwrap();
        let i = space.encode(&v);
        prop_assert_eq!(space.decode(i), v.clone());
        prop_assert_eq!(common::decode(7, v.len(), i as u64), v);
    }
}
