use std::collections::BTreeMap;

use g2a_core::symbolic::{binomial, Polynomial, Rational, SymbolicError, VarSet};
use proptest::prelude::*;

fn vars() -> VarSet {
    VarSet::new(&["a", "b", "c"]).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| Rational::new(n, d))
}

fn poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..4, 3), rational()), 0..6)
        .prop_map(|terms| Polynomial::from_terms(&vars(), terms).unwrap())
}

fn all_canonical(p: &Polynomial) -> bool {
    p.terms().values().all(|c| !c.is_zero() && c.is_canonical())
}

proptest! {
    #[test]
    fn ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn difference_vanishes_iff_terms_equal(p in poly(), q in poly()) {
        prop_assert_eq!((&p - &q).is_zero(), p.terms() == q.terms());
        prop_assert!(all_canonical(&(&p * &q)) && all_canonical(&(&p - &q)));
    }

    #[test]
    fn expansion_round_trip(p in poly(), q in poly()) {
        // (p + q)^2 expanded two ways
        let lhs = (&p + &q).pow(2).unwrap();
        let rhs = &(&p * &p) + &(&(&p * &q).scale(&Rational::from(2)) + &(&q * &q));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_homomorphism(p in poly(), q in poly(), s in poly(), t in poly()) {
        let b = BTreeMap::from([("a".to_string(), s), ("c".to_string(), t)]);
        let prod = (&p * &q).substitute(&b).unwrap();
        prop_assert_eq!(prod, &p.substitute(&b).unwrap() * &q.substitute(&b).unwrap());
        let sum = (&p + &q).substitute(&b).unwrap();
        prop_assert_eq!(sum, &p.substitute(&b).unwrap() + &q.substitute(&b).unwrap());
    }

    #[test]
    fn rationals_are_reduced(n in -10_000i64..10_000, d in -500i64..500) {
        prop_assume!(d != 0);
        let r = Rational::new(n, d);
        prop_assert!(r.is_canonical());
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r.clone());
        prop_assert!((&r * &Rational::new(d, 1) - Rational::from(n)).is_zero());
    }
}

#[test]
fn exponent_cap_is_enforced() {
    let v = VarSet::with_cap(&["z"], 8).unwrap();
    let z = Polynomial::var(&v, "z").unwrap();
    assert!(z.pow(8).is_ok());
    assert_eq!(z.pow(9), Err(SymbolicError::ExponentOverflow { cap: 8 }));
    let z4 = z.pow(4).unwrap();
    assert!(z4.checked_mul(&z4).is_ok());
    assert!(z4.checked_mul(&z4.checked_mul(&z).unwrap()).is_err());
}

#[test]
fn mismatched_variable_sets_are_rejected() {
    let a = Polynomial::var(&vars(), "a").unwrap();
    let other = VarSet::new(&["a"]).unwrap();
    let b = Polynomial::var(&other, "a").unwrap();
    assert!(matches!(
        a.checked_add(&b),
        Err(SymbolicError::VarSetMismatch(..))
    ));
}

#[test]
fn binomials() {
    assert_eq!(binomial(6, 2), 15.into());
    assert_eq!(binomial(2, 6), 0.into());
    // far past u64
    assert_eq!(
        binomial(100, 50).to_string(),
        "100891344545564193334812497256"
    );
}
