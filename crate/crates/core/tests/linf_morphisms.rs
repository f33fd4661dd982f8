mod common;

use common::expansions::{check_low_arity, generic_diagonal, random_element};
use ellipsoidal_core::linf::{
    compose, ellipsoid_morphism_planar, invert, linf_wt_t, Element, LinfMorphism,
};
use ellipsoidal_core::superpotential::InnerSum;
use ellipsoidal_core::{AspectRatio, Rational};
use num_bigint::BigInt;
use num_traits::One;
use rand::{rngs::StdRng, SeedableRng};

#[test]
fn low_arity_inverse_expansions() {
    for seed in 0..4 {
        let phi = generic_diagonal(seed, 2, 3);
        let psi = invert(&phi, 3).unwrap();
        check_low_arity(&phi, &psi).unwrap();
    }
}

fn add(a: &Element, b: &Element) -> Element {
    let mut out = a.clone();
    out.add_scaled(b, &Rational::one());
    out
}

#[test]
fn second_order_composition_formula() {
    let phi = generic_diagonal(11, 2, 3);
    let psi = generic_diagonal(12, 2, 3);
    let c = compose(&psi, &phi).unwrap();
    let mut rng = StdRng::seed_from_u64(3);
    for _ in 0..5 {
        let x = random_element(&mut rng, 2);
        let y = random_element(&mut rng, 2);
        let want = add(
            &psi.apply(&[&phi.apply(&[&x, &y])]),
            &psi.apply(&[&phi.apply(&[&x]), &phi.apply(&[&y])]),
        );
        assert_eq!(c.apply(&[&x, &y]), want);
        assert_eq!(c.apply(&[&x]), psi.apply(&[&phi.apply(&[&x])]));
    }
}

#[test]
fn generic_round_trips() {
    for seed in 20..23 {
        let phi = generic_diagonal(seed, 2, 4);
        let psi = invert(&phi, 4).unwrap();
        let id = LinfMorphism::identity(phi.source().clone(), 4);
        assert_eq!(compose(&psi, &phi).unwrap(), id);
        assert_eq!(compose(&phi, &psi).unwrap(), id);
    }
}

#[test]
fn identity_is_neutral() {
    let phi = generic_diagonal(5, 3, 3);
    let id = LinfMorphism::identity(phi.source().clone(), 3);
    assert_eq!(compose(&id, &phi).unwrap(), phi);
    assert_eq!(compose(&phi, &id).unwrap(), phi);
}

#[test]
fn ellipsoid_round_trips_small() {
    for a in [
        AspectRatio::Infinity,
        AspectRatio::plus_delta(5, 2).unwrap(),
    ] {
        let eps = ellipsoid_morphism_planar(a, 11, 4).unwrap();
        let eta = invert(&eps, 4).unwrap();
        assert_eq!(
            compose(&eta, &eps).unwrap(),
            LinfMorphism::identity(eps.source().clone(), 4)
        );
        assert_eq!(
            compose(&eps, &eta).unwrap(),
            LinfMorphism::identity(eps.target().clone(), 4)
        );
    }
}

#[test]
fn evaluation_is_symmetric() {
    let eps = ellipsoid_morphism_planar(AspectRatio::plus_delta(3, 2).unwrap(), 14, 3).unwrap();
    let eta = invert(&eps, 3).unwrap();
    let (x, y, z) = (Element::basis(1), Element::basis(2), Element::basis(4));
    let perms = [
        [&x, &y, &z],
        [&x, &z, &y],
        [&y, &x, &z],
        [&y, &z, &x],
        [&z, &x, &y],
        [&z, &y, &x],
    ];
    for m in [&eps, &eta] {
        let first = m.apply(&perms[0]);
        assert!(!first.is_zero());
        for p in &perms {
            assert_eq!(m.apply(p), first);
        }
    }
}

#[test]
fn ellipsoid_tables_are_single_generators() {
    let a = AspectRatio::plus_delta(7, 2).unwrap();
    let eps = ellipsoid_morphism_planar(a, 14, 5).unwrap();
    for k in 1..=5 {
        for (inputs, value) in eps.entries(k) {
            assert_eq!(value.support_len(), 1);
            let (t, c) = value.terms().next().unwrap();
            assert_eq!(t, inputs.iter().sum::<usize>() + k - 1);
            assert_eq!(*c.numer(), BigInt::one());
        }
    }
}

#[test]
fn ordered_and_multiset_outer_sums_agree() {
    for a in [
        AspectRatio::Infinity,
        AspectRatio::plus_delta(3, 2).unwrap(),
    ] {
        for d in 1..=5 {
            assert_eq!(
                linf_wt_t(d, a, InnerSum::Ordered).unwrap(),
                linf_wt_t(d, a, InnerSum::Multiset).unwrap(),
                "d={d} a={a}"
            );
        }
    }
}
