mod common;

use common::small_surfaces;
use g2a_core::key_sequence::{beta_expansion, validate, KeySequence};
use g2a_core::surface_invariants::*;
use g2a_core::symbolic::Rational;
use num_integer::Integer;
use proptest::prelude::*;

#[test]
fn table_family_identity() {
    let mut checked = 0;
    for p1 in 2..=12i64 {
        for q1 in 1..p1 {
            if p1.gcd(&q1) != 1 {
                continue;
            }
            for p2 in 1..=6i64 {
                for r in 1..=q1 * p1 * p2 + 4 {
                    let Ok(ks) = validate(&[p1 * p2, q1 * p2, q1 * p1 * p2 - r]) else {
                        continue;
                    };
                    if ks.alpha(1) != p1 || ks.alpha(2) != p2 {
                        continue;
                    }
                    assert_eq!(k_bar_x(&ks) + ks.omega(0), r - 1 - q1 * p2, "{ks}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 1000);
}

#[test]
fn defining_equations_are_weighted_homogeneous() {
    for len in 3..=4 {
        for ks in small_surfaces(if len == 3 { 8 } else { 5 }, len) {
            let theta: Vec<Rational> = (1..=ks.n())
                .map(|i| Rational::new(i as i64 + 1, 3))
                .collect();
            let model = SurfaceModel::new(ks.clone(), theta).unwrap();
            let eqs = defining_equations(&model).unwrap();
            assert_eq!(eqs.len(), ks.n());
            for (k, g) in eqs.iter().enumerate() {
                let deg = ks.alpha(k + 1) * ks.omega(k + 1);
                for e in g.terms().keys() {
                    assert_eq!(weighted_degree(&ks, e), deg, "{ks}: G_{}", k + 1);
                }
            }
        }
    }
}

fn theta_entry() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![1i64, -1, 2, -2, 4, 8, -8, 3, 9, 27]).prop_flat_map(|n| {
        prop::sample::select(vec![1i64, 2, 3]).prop_map(move |d| Rational::new(n, d))
    })
}

fn surface() -> impl Strategy<Value = KeySequence> {
    prop::sample::select(
        small_surfaces(8, 3)
            .into_iter()
            .chain(small_surfaces(6, 4))
            .collect::<Vec<_>>(),
    )
}

fn thetas(ks: &KeySequence) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(theta_entry(), ks.n())
}

fn orbit_image(
    ks: &KeySequence,
    theta: &[Rational],
    l1: &Rational,
    l2: &Rational,
) -> Vec<Rational> {
    let b = beta_expansion(ks).unwrap();
    let mu = mu_exponents(ks).unwrap();
    theta
        .iter()
        .enumerate()
        .map(|(i, t)| l1.pow(-b.beta(i + 1, 0) as i32) * l2.pow(mu[i] as i32) * t)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn theta_equivalence_is_an_equivalence(
        (ks, a, b, c) in surface().prop_flat_map(|ks| (Just(ks.clone()), thetas(&ks), thetas(&ks), thetas(&ks)))
    ) {
        let eq = |x: &[Rational], y: &[Rational]| theta_equivalent(&ks, x, y).unwrap().equivalent;
        prop_assert!(eq(&a, &a));
        prop_assert_eq!(eq(&a, &b), eq(&b, &a));
        if eq(&a, &b) && eq(&b, &c) {
            prop_assert!(eq(&a, &c));
        }
    }

    #[test]
    fn torus_orbits_are_equivalent(
        (ks, a) in surface().prop_flat_map(|ks| (Just(ks.clone()), thetas(&ks))),
        l1 in theta_entry(),
        l2 in theta_entry(),
    ) {
        let b = orbit_image(&ks, &a, &l1, &l2);
        prop_assert!(theta_equivalent(&ks, &a, &b).unwrap().equivalent);
    }
}

#[test]
fn theta_length_and_zero_checks() {
    let ks = validate(&[3, 2, 5]).unwrap();
    let one = vec![Rational::one()];
    assert!(theta_equivalent(&ks, &one, &[Rational::one(), Rational::one()]).is_err());
    assert!(theta_equivalent(&ks, &one, &[Rational::zero()]).is_err());
    assert!(
        theta_equivalent(&ks, &one, &[Rational::from(7)])
            .unwrap()
            .equivalent
    );
}
