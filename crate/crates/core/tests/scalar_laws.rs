mod common;

use common::{base_number, nonzero_base_number, scalar, small_rat};
use dunkl_core::scalars::{BaseNumber, Scalar, ScalarError};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn ring_axioms(a in scalar(2), b in scalar(2), c in scalar(2)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn base_field_axioms(a in base_number(), b in base_number(), c in base_number()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn inverses(a in nonzero_base_number(), b in nonzero_base_number()) {
        let inv = a.inv().unwrap();
        prop_assert!((&a * &inv).is_one());
        prop_assert_eq!(&a.checked_div(&b).unwrap() * &b, a.clone());
        prop_assert_eq!(BaseNumber::zero().inv(), Err(ScalarError::DivisionByZero));
    }

    #[test]
    fn exact_division_recovers_factor(a in scalar(2), b in scalar(2)) {
        prop_assume!(!b.is_zero());
        let prod = &a * &b;
        prop_assert_eq!(prod.div_exact(&b).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn evaluation_is_a_homomorphism(a in scalar(2), b in scalar(2), m1 in small_rat(), m2 in small_rat()) {
        let at = [m1, m2];
        let ev = |s: &Scalar| s.evaluate(&at).unwrap();
        prop_assert_eq!(ev(&(&a * &b)), &ev(&a) * &ev(&b));
        prop_assert_eq!(ev(&(&a + &b)), &ev(&a) + &ev(&b));
        prop_assert_eq!(ev(&(&a - &b)), &ev(&a) - &ev(&b));
    }

    #[test]
    fn partial_substitution_then_evaluation(a in scalar(2), m1 in small_rat(), m2 in small_rat()) {
        let partial = a.substitute_prefix(std::slice::from_ref(&m1)).unwrap();
        prop_assert_eq!(partial.evaluate(&[m1.clone(), m2.clone()]).unwrap(), a.evaluate(&[m1, m2]).unwrap());
    }
}

#[test]
fn arity_is_checked() {
    let a = Scalar::param(2, 0);
    let b = Scalar::param(3, 0);
    assert!(matches!(a.checked_add(&b), Err(ScalarError::ArityMismatch { .. })));
    assert!(a.evaluate(&[]).is_err());
}
