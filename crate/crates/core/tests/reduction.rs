mod common;

use common::*;
use num_rational::BigRational;
use proptest::prelude::*;

use wkb_core::reduction::{
    airy_basis_decomposition, induced_potential_f, liouville_map, master_residual, reduce_to_airy, schrodinger_pipeline, schwarzian,
};
use wkb_core::transport::transport_g;
use wkb_core::{ex, Coeff, MPoly, PuiseuxSeries, WkbError};

#[test]
fn induced_f_at_origin_is_symbolic_identity() {
    let one = MPoly::constant(BigRational::from_integer(1.into()));
    let v = PuiseuxSeries::taylor(vec![MPoly::zero(), one, MPoly::var(0), MPoly::var(1)], None);
    let f0 = induced_potential_f(&v, 1).unwrap().coeff(ex(0, 1));
    let want = MPoly::var(1).scale_ratio(ex(3, 7)).sub(&MPoly::var(0).mul(&MPoly::var(0)).scale_ratio(ex(9, 35)));
    assert_eq!(f0, want);
}

#[test]
fn induced_f_for_quadratic_potential() {
    let v = S::taylor(vec![g(0, 1), g(1, 1), g(1, 2)], None);
    assert_eq!(induced_potential_f(&v, 2).unwrap().coeff(ex(0, 1)), g(-9, 140));
}

#[test]
fn linear_potential_needs_no_correction() {
    let f = induced_potential_f(&S::z(), 4).unwrap();
    assert!(f.is_zero());
}

#[test]
fn schwarzian_of_mobius_vanishes() {
    // (z)/(1 + z) as a truncated series
    let m = S::z().div_series(&S::poly_i64(&[1, 1]).truncate(ex(12, 1))).unwrap();
    assert!(schwarzian(&m, 6).unwrap().truncate(ex(6, 1)).is_zero());
}

#[test]
fn rejects_double_turning_point() {
    assert!(matches!(liouville_map(&S::poly_i64(&[0, 0, 1]), 3), Err(WkbError::NotSimpleTurningPoint)));
}

#[test]
fn master_relation_exact_through_eps8() {
    let mut r = rng(5);
    let cases = vec![S::zero(), S::constant(g(-2, 5)), S::monomial(g(9, 4), ex(1, 1)), random_poly(&mut r, 3)];
    for f in cases {
        let red = reduce_to_airy(&f, 8, 6).unwrap();
        assert_eq!(master_residual(&red, &f, 6).unwrap(), 0.0, "F = {:?}", f);
        for k in [1, 3, 5, 7] {
            assert!(red.coeff(k).is_zero());
        }
    }
}

#[test]
fn constant_f_shifts_by_c_eps_squared() {
    let c = g(7, 3);
    let red = reduce_to_airy(&S::constant(c.clone()), 8, 6).unwrap();
    assert_eq!(red.coeff(0), S::z().truncate(ex(7, 1)));
    assert_eq!(red.coeff(2), S::constant(c).truncate(ex(7, 1)));
    for k in [1, 3, 4, 5, 6, 7, 8] {
        assert!(red.coeff(k).is_zero(), "s_{}", k);
    }
}

#[test]
fn decomposition_for_constant_f() {
    for c in [g(1, 3), g(-5, 2)] {
        let phi = transport_g(&S::constant(c), 6).unwrap();
        let d = airy_basis_decomposition(&phi, 6).unwrap();
        assert_eq!(d.reconstruct(), phi.eps);
        assert_eq!(d.a_coeffs[0].coeff(ex(0, 1)), g(1, 1));
        assert!(d.b_coeffs[0].is_zero());
        assert!(d.a_coeffs.iter().chain(&d.b_coeffs).all(|s| s.is_holomorphic()));
    }
}

#[test]
fn pipeline_closes_the_loop() {
    let v = S::taylor(vec![g(0, 1), g(1, 1), g(-1, 3), g(2, 5)], None);
    let out = schrodinger_pipeline(&v, 4).unwrap();
    assert_eq!(out.residual, 0.0);
    assert_eq!(out.composed.coeff(2).coeff(ex(0, 1)), out.f.coeff(ex(0, 1)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn liouville_map_straightens_action(v2 in (-4i64..=4, 1i64..=4), v3 in (-4i64..=4, 1i64..=4)) {
        let n = 6;
        let v = S::taylor(vec![g(0, 1), g(1, 1), g(v2.0, v2.1), g(v3.0, v3.1)], None);
        let z = liouville_map(&v, n).unwrap();
        let dz = z.derive();
        let lhs = (&z * &(&dz * &dz)).truncate(ex(n as i64, 1));
        prop_assert_eq!(lhs, v.truncate(ex(n as i64, 1)));
    }

    #[test]
    fn master_residual_zero_for_random_quadratics(c in prop::collection::vec((-6i64..=6, 1i64..=6), 1..=3)) {
        let f = S::taylor(c.into_iter().map(|(n, d)| g(n, d)).collect(), None);
        let red = reduce_to_airy(&f, 6, 4).unwrap();
        prop_assert_eq!(master_residual(&red, &f, 4).unwrap(), 0.0);
    }
}
