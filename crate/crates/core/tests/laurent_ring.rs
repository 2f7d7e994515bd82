use num_bigint::BigInt;
use proptest::prelude::*;
use qgrass::laurent::{LaurentI64, LaurentInt};

fn laurent() -> impl Strategy<Value = LaurentInt> {
    prop::collection::vec((-6i64..=6, -20i64..=20), 0..6)
        .prop_map(|terms| LaurentInt::from_terms(terms.into_iter().map(|(k, c)| (k, BigInt::from(c)))))
}

fn small_i64() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-5i64..=5, -50i64..=50), 0..5)
}

/// Multiplication by convolution over explicit exponent ranges.
fn convolve(a: &LaurentInt, b: &LaurentInt) -> LaurentInt {
    let (Some(lo_a), Some(hi_a), Some(lo_b), Some(hi_b)) =
        (a.min_exponent(), a.max_exponent(), b.min_exponent(), b.max_exponent())
    else {
        return LaurentInt::zero();
    };
    let mut terms = Vec::new();
    for k in lo_a + lo_b..=hi_a + hi_b {
        let mut c = BigInt::from(0);
        for i in lo_a..=hi_a {
            c += a.coeff(i) * b.coeff(k - i);
        }
        terms.push((k, c));
    }
    LaurentInt::from_terms(terms)
}

#[test]
fn additive_inverse() {
    let x: LaurentInt = "-1*q^-1 + 1*q^1".parse().unwrap();
    let y: LaurentInt = "1*q^-1 + -1*q^1".parse().unwrap();
    assert!((&x + &y).is_zero());
    assert_eq!((&x + &y).to_string(), "0");
}

#[test]
fn difference_of_squares() {
    let a = &LaurentInt::q_pow(1) - &LaurentInt::q_pow(-1);
    let b = &LaurentInt::q_pow(1) + &LaurentInt::q_pow(-1);
    assert_eq!(&a * &b, &LaurentInt::q_pow(2) - &LaurentInt::q_pow(-2));
}

#[test]
fn negative_q_powers() {
    assert_eq!(LaurentInt::neg_q_power(0), LaurentInt::one());
    assert_eq!(LaurentInt::neg_q_power(1), -LaurentInt::q_pow(1));
    assert_eq!(LaurentInt::neg_q_power(2), LaurentInt::q_pow(2));
}

#[test]
fn evaluation_examples() {
    let v = |s: &str| s.parse::<LaurentInt>().unwrap().eval_at_one();
    assert_eq!(v("-1*q^-1 + 1*q^1"), BigInt::from(0));
    assert_eq!(v("1*q^0 + 1*q^3"), BigInt::from(2));
    assert_eq!(v("-1*q^1 + 1*q^2 + -1*q^3"), BigInt::from(-1));
}

#[test]
fn text_format() {
    let x = LaurentInt::from_terms([(3, BigInt::from(1)), (-1, BigInt::from(-1))]);
    assert_eq!(x.to_string(), "-1*q^-1 + 1*q^3");
    assert_eq!("7".parse::<LaurentInt>().unwrap(), LaurentInt::constant(BigInt::from(7)));
    assert!("1*x^2".parse::<LaurentInt>().is_err());
}

#[test]
fn no_overflow_on_large_powers() {
    let two_q = LaurentInt::from_terms([(0, BigInt::from(1)), (1, BigInt::from(1))]);
    let mut acc = LaurentInt::one();
    for _ in 0..80 {
        acc = &acc * &two_q;
    }
    assert_eq!(acc.eval_at_one(), BigInt::from(2).pow(80));
}

proptest! {
    #[test]
    fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &LaurentInt::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn product_matches_convolution(a in laurent(), b in laurent()) {
        prop_assert_eq!(&a * &b, convolve(&a, &b));
    }

    #[test]
    fn canonical_form_has_no_zero_terms(a in laurent(), b in laurent()) {
        let s = &(&a * &b) - &(&b * &a);
        prop_assert!(s.is_zero());
        prop_assert!((&a + &b).terms().all(|(_, c)| *c != BigInt::from(0)));
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in laurent(), b in laurent()) {
        prop_assert_eq!((&a * &b).eval_at_one(), a.eval_at_one() * b.eval_at_one());
        prop_assert_eq!((&a + &b).eval_at_one(), a.eval_at_one() + b.eval_at_one());
    }

    #[test]
    fn neg_q_powers_multiply(j in 0i64..20, k in 0i64..20) {
        prop_assert_eq!(&LaurentInt::neg_q_power(j) * &LaurentInt::neg_q_power(k), LaurentInt::neg_q_power(j + k));
    }

    #[test]
    fn text_round_trip(a in laurent()) {
        prop_assert_eq!(a.to_string().parse::<LaurentInt>().unwrap(), a);
    }

    #[test]
    fn scalar_types_agree(x in small_i64(), y in small_i64()) {
        let small = |v: &[(i64, i64)]| LaurentI64::from_terms(v.iter().copied());
        let big = |v: &[(i64, i64)]| LaurentInt::from_terms(v.iter().map(|&(k, c)| (k, BigInt::from(c))));
        let prod_small = &small(&x) * &small(&y);
        let prod_big = &big(&x) * &big(&y);
        prop_assert_eq!(prod_small.to_string(), prod_big.to_string());
    }

    #[test]
    fn q_inversion_is_an_involutive_homomorphism(a in laurent(), b in laurent()) {
        prop_assert_eq!(a.invert_q().invert_q(), a.clone());
        prop_assert_eq!((&a * &b).invert_q(), &a.invert_q() * &b.invert_q());
    }
}
