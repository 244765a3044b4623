mod common;

use std::f64::consts::PI;

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;

use wkb_core::airy::{airy_borel_sum, airy_contour, airy_minor, airy_rationals, airy_symbol, lateral_jump, stokes_jump, LATERAL_DELTA};
use wkb_core::borel::BorelParams;
use wkb_core::contour::ContourSpec;
use wkb_core::transport::transport_g;
use wkb_core::{ex, Branched, Coeff};

#[test]
fn oracle_matches_tabulated_ai() {
    // DLMF 9.9 tabulated values
    assert!((airy_ai(1.0) - 0.135_292_416_312_881_4).abs() < 1e-15);
    assert!((airy_ai(2.0) - 0.034_924_130_423_274_4).abs() < 1e-16);
}

#[test]
fn closed_form_spot_values() {
    let a = airy_symbol(2);
    assert_eq!(a.coeff(1), S::monomial(g(-5, 48), ex(-3, 2)));
    assert_eq!(a.coeff(2), S::monomial(g(385, 4608), ex(-3, 1)));
}

#[test]
fn closed_form_equals_recursion() {
    assert_eq!(transport_g(&S::zero(), 30).unwrap(), airy_symbol(30));
}

#[test]
fn minor_is_coefficient_over_factorial() {
    let r = airy_rationals(8);
    let m = airy_minor(8);
    let mut fact = g(1, 1);
    for k in 1..=8usize {
        assert_eq!(m[k - 1].scale(&fact), S::monomial(r[k].clone(), ex(-3 * k as i64, 2)));
        fact = fact.mul(&g(k as i64, 1));
    }
}

#[test]
fn contour_matches_bessel_oracle() {
    for eps in [0.3, 0.1, 0.05] {
        for z in [0.5, 1.0, 2.0] {
            let c = airy_contour(Complex64::new(z, 0.0), Complex64::new(eps, 0.0), &ContourSpec::default()).unwrap();
            let r = rel(c.value, airy_reference(z, eps));
            assert!(r < 1e-12, "z={} eps={} rel={:e}", z, eps, r);
        }
    }
}

#[test]
fn borel_sum_matches_bessel_oracle() {
    for eps in [0.1, 0.05, 0.02] {
        let b = airy_borel_sum(Branched::new(1.0, 0.0), Complex64::new(eps, 0.0), 24, &BorelParams::with_pade(12, 12)).unwrap();
        let r = rel(b.value, airy_reference(1.0, eps));
        assert!(r < 1e-8, "eps={} rel={:e}", eps, r);
    }
}

#[test]
fn jump_on_stokes_line_and_none_off_it() {
    let eps = Complex64::new(0.05, 0.0);
    let on = stokes_jump(Branched::new(0.8, 2.0 * PI / 3.0), eps, 24).unwrap();
    assert!(on.rel_error < 1e-4, "{:?}", on);
    let off = lateral_jump(1, Branched::new(0.8, PI / 3.0), eps, 24, &BorelParams::for_order(24), LATERAL_DELTA).unwrap();
    assert!(off.rel_jump < 1e-8, "{:?}", off);
}

#[test]
fn rejects_bad_eps() {
    assert!(airy_contour(Complex64::new(1.0, 0.0), Complex64::new(-0.1, 0.0), &ContourSpec::default()).is_err());
    assert!(airy_borel_sum(Branched::new(0.0, 0.0), Complex64::new(0.1, 0.0), 8, &BorelParams::for_order(8)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn borel_and_contour_agree_near_positive_axis(z in 0.6f64..2.0, arg in -0.5f64..0.5, eps in 0.05f64..0.15) {
        let zc = Complex64::from_polar(z, arg);
        let e = Complex64::new(eps, 0.0);
        let b = airy_borel_sum(Branched::new(z, arg), e, 24, &BorelParams::with_pade(12, 12)).unwrap();
        let c = airy_contour(zc, e, &ContourSpec::default()).unwrap();
        prop_assert!(b.rel_diff(&c) < 1e-7);
    }
}
