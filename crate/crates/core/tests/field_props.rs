//! Property tests for the exact scalar layer.

use proptest::prelude::*;

use artin_core::{field_arith, ArithOp, FieldElement, FieldSpec};

fn rational(spec: &FieldSpec, n: i64, d: i64) -> FieldElement {
    let a = spec.from_i64(n);
    let b = spec.from_i64(d);
    spec.div(&a, &b).unwrap()
}

proptest! {
    #[test]
    fn rational_field_axioms(an in -50i64..50, ad in 1i64..20, bn in -50i64..50, bd in 1i64..20, cn in -50i64..50, cd in 1i64..20) {
        let q = FieldSpec::rationals();
        let a = rational(&q, an, ad);
        let b = rational(&q, bn, bd);
        let c = rational(&q, cn, cd);
        prop_assert_eq!(q.add(&a, &b), q.add(&b, &a));
        prop_assert_eq!(q.mul(&a, &b), q.mul(&b, &a));
        prop_assert_eq!(q.add(&q.add(&a, &b), &c), q.add(&a, &q.add(&b, &c)));
        prop_assert_eq!(q.mul(&q.mul(&a, &b), &c), q.mul(&a, &q.mul(&b, &c)));
        prop_assert_eq!(q.mul(&a, &q.add(&b, &c)), q.add(&q.mul(&a, &b), &q.mul(&a, &c)));
    }

    #[test]
    fn prime_field_inverses(p in prop::sample::select(vec![2u64, 3, 5, 7, 101, 31991]), v in 1u64..1000) {
        let f = FieldSpec::prime(p).unwrap();
        let a = f.from_i64(v as i64);
        if !f.is_zero(&a) {
            let inv = f.inv(&a).unwrap();
            prop_assert!(f.is_one(&f.mul(&a, &inv)));
        }
    }

    #[test]
    fn checked_arith_matches_unchecked(av in 0u64..7, bv in 0u64..7) {
        let f = FieldSpec::prime(7).unwrap();
        let a = FieldElement::Prime(av);
        let b = FieldElement::Prime(bv);
        prop_assert_eq!(field_arith(&f, &a, &b, ArithOp::Add).unwrap(), f.add(&a, &b));
        prop_assert_eq!(field_arith(&f, &a, &b, ArithOp::Mul).unwrap(), f.mul(&a, &b));
        if bv != 0 {
            prop_assert_eq!(field_arith(&f, &a, &b, ArithOp::Div).unwrap(), f.div(&a, &b).unwrap());
        }
    }
}

#[test]
fn frobenius_is_additive() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    for (p, k) in [(2u64, 2usize), (3, 2), (3, 3), (5, 2), (7, 4)] {
        let f = FieldSpec::ext_auto(p, k).unwrap();
        for _ in 0..50 {
            let a = f.random_element(&mut rng);
            let b = f.random_element(&mut rng);
            let lhs = f.pow(&f.add(&a, &b), p);
            let rhs = f.add(&f.pow(&a, p), &f.pow(&b, p));
            assert_eq!(lhs, rhs, "frobenius over GF({p}^{k})");
        }
    }
}

#[test]
fn ext_field_elements_invert() {
    let f = FieldSpec::ext_auto(7, 2).unwrap();
    for a in f.elements().skip(1) {
        let inv = f.inv(&a).unwrap();
        assert!(f.is_one(&f.mul(&a, &inv)));
    }
}

#[test]
fn big_rational_chains_stay_reduced() {
    // random 256-bit numerators survive 1000 chained operations exactly
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    let q = FieldSpec::rationals();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2024);
    let big = |rng: &mut rand_chacha::ChaCha8Rng| {
        let bytes: Vec<u8> = (0..32).map(|_| rng.gen()).collect();
        BigInt::from_bytes_le(num_bigint::Sign::Plus, &bytes) + BigInt::one()
    };
    let mut acc = FieldElement::Rational(BigRational::new(big(&mut rng), big(&mut rng)));
    for step in 0..1000u32 {
        let next = FieldElement::Rational(BigRational::new(big(&mut rng), big(&mut rng)));
        // addition-dominant mix; every tenth step multiplies or divides, so
        // the operands keep growing without the quadratic-gcd blowup of a
        // purely multiplicative chain
        acc = match step % 10 {
            3 => q.mul(&acc, &next),
            7 => q.div(&acc, &next).unwrap(),
            _ => q.add(&acc, &next),
        };
        if step % 250 == 0 {
            let FieldElement::Rational(r) = &acc else { panic!("rational expected") };
            use num_traits::Signed;
            assert!(r.denom().is_positive());
        }
    }
    // reduced representation invariant: denominator positive, gcd = 1
    let FieldElement::Rational(r) = &acc else { panic!("rational expected") };
    use num_traits::Signed;
    assert!(r.denom().is_positive());
    let g = num_integer::Integer::gcd(r.numer(), r.denom());
    assert!(g.is_one() || (-&g).is_one());
    // and arithmetic still exact: acc * 0 + acc == acc
    assert_eq!(q.add(&q.mul(&acc, &q.zero()), &acc), acc);
}

#[test]
fn matrix_rank_transpose_and_subadditivity() {
    use artin_core::ExactMatrix;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let specs =
        [FieldSpec::rationals(), FieldSpec::prime(7).unwrap(), FieldSpec::ext_auto(3, 2).unwrap()];
    for spec in &specs {
        for _ in 0..20 {
            let rows = rng.gen_range(1..6);
            let cols = rng.gen_range(1..6);
            let mut a = ExactMatrix::zeros(spec.clone(), rows, cols);
            let mut b = ExactMatrix::zeros(spec.clone(), rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    a.set(i, j, spec.random_element(&mut rng));
                    b.set(i, j, spec.random_element(&mut rng));
                }
            }
            assert_eq!(a.rank(), a.transpose().rank());
            let mut sum = ExactMatrix::zeros(spec.clone(), rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    sum.set(i, j, spec.add(a.get(i, j), b.get(i, j)));
                }
            }
            assert!(sum.rank() <= a.rank() + b.rank());
        }
    }
}
