use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use proptest::prelude::*;

use wkb_core::contour::ContourSpec;
use wkb_core::hardy::{
    airy_proportionality, eval_int_poly, hardy_ode_residual, hardy_polynomial, hardy_s_t, hyperbolic_target, BiPoly, OdeConvention,
};

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// `((deg_z, deg_ẑ), (num, den))` terms.
type Terms<'a> = &'a [((u32, u32), (i64, i64))];

fn poly(terms: Terms) -> BiPoly {
    terms.iter().fold(BiPoly::zero(), |acc, &((a, b), (n, d))| acc.add(&BiPoly::monomial(r(n, d), a, b)))
}

#[test]
fn table_values() {
    let want = [
        (poly(&[((0, 3), (8, 3)), ((1, 1), (-2, 1))]), poly(&[((0, 0), (1, 2))])),
        (poly(&[((0, 4), (4, 1)), ((1, 2), (-4, 1)), ((2, 0), (1, 2))]), poly(&[((0, 1), (1, 1))])),
        (poly(&[((0, 5), (32, 5)), ((1, 3), (-8, 1)), ((2, 1), (2, 1))]), poly(&[((0, 2), (2, 1)), ((1, 0), (-1, 2))])),
    ];
    for (n, (s, t)) in want.into_iter().enumerate() {
        let p = hardy_s_t(n + 1).unwrap();
        assert_eq!(p.s, s, "S_{}", n + 1);
        assert_eq!(p.t, t, "T_{}", n + 1);
    }
}

#[test]
fn identities_hold_exactly() {
    for n in 1..=8 {
        let p = hardy_s_t(n).unwrap();
        let (a, b) = p.identity_residuals();
        assert!(a.is_zero() && b.is_zero(), "n = {}", n);
        assert!(p.is_quasi_homogeneous());
        assert!(p.t.is_quasi_homogeneous(n as u32 - 1));
    }
}

#[test]
fn chebyshev_like_polynomials() {
    assert_eq!(hardy_polynomial(3).unwrap(), [0, 3, 0, 4].map(BigInt::from).to_vec());
    for m in 2..=10 {
        let p = hardy_polynomial(m).unwrap();
        for q in [-1.2, -0.4, 0.25, 0.9] {
            let want = hyperbolic_target(m, q);
            assert!((eval_int_poly(&p, f64::sinh(q)) - want).abs() < 1e-11 * want.abs().max(1.0), "m={} q={}", m, q);
        }
    }
    assert!(hardy_polynomial(1).is_err());
}

#[test]
fn phi_solves_the_ode() {
    let spec = ContourSpec::default();
    for n in 1..=4 {
        let p = hardy_s_t(n).unwrap();
        let c = hardy_ode_residual(&p, Complex64::new(0.9, 0.0), Complex64::new(0.15, 0.0), OdeConvention::EpsSquared, &spec).unwrap();
        assert!(c.relative_residual < 1e-6, "n = {}: {:?}", n, c);
        let wrong = hardy_ode_residual(&p, Complex64::new(0.9, 0.0), Complex64::new(0.15, 0.0), OdeConvention::EpsFirst, &spec).unwrap();
        assert!(wrong.relative_residual > 0.1);
    }
}

#[test]
fn phi_one_is_a_multiple_of_airy() {
    let zs = [Complex64::new(0.5, 0.0), Complex64::new(1.3, 0.0), Complex64::new(0.8, 0.3)];
    for q in airy_proportionality(&zs, Complex64::new(0.2, 0.0), &ContourSpec::default()).unwrap() {
        assert!((q - Complex64::new(-0.5, 0.0)).norm() < 1e-10, "{}", q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rescaling_is_weighted(n in 1usize..=8, num in 1i64..=7, den in 1i64..=7) {
        let p = hardy_s_t(n).unwrap();
        let lam = r(num, den);
        let w = num_traits::pow(lam.clone(), n + 2);
        prop_assert_eq!(p.s.rescale(&lam), p.s.scale(&w));
    }

    #[test]
    fn s_evaluates_consistently(n in 1usize..=6, z in -1.5f64..1.5, w in -1.5f64..1.5) {
        // S_n(z, ẑ) against the exact coefficient list in ẑ
        let p = hardy_s_t(n).unwrap();
        let zq = wkb_core::GaussRat::from_c64(Complex64::new(z, 0.0)).unwrap();
        let coeffs = p.s.in_zhat(&zq);
        let direct = p.s.eval(Complex64::new(z, 0.0), Complex64::new(w, 0.0));
        let horner = coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * w + wkb_core::Coeff::to_c64(c).unwrap());
        prop_assert!((direct - horner).norm() < 1e-9 * direct.norm().max(1.0));
    }
}
