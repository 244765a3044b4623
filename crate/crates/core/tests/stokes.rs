use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use wkb_core::stokes::{canonical_stokes_lines, classify_sector, potential_stokes_curves, FnPotential, Sector, TraceParams};
use wkb_core::{GaussRat, PuiseuxSeries};

/// `∫₀^q √(q + q²/2) dq` by Gauss-Legendre after `q = t²·q_end`, which removes
/// the square-root endpoint singularity.
fn action_quadratic(q: Complex64) -> Complex64 {
    // 20-point rule on [0, 1], nodes and weights mapped from [-1, 1]
    let (x, w) = gauss_legendre(20);
    let sq = q.sqrt();
    x.iter()
        .zip(&w)
        .map(|(&xi, &wi)| {
            let t = 0.5 * (xi + 1.0);
            let inner = (Complex64::new(1.0, 0.0) + q * (t * t * 0.5)).sqrt();
            0.5 * wi * (t * sq * inner) * (2.0 * t * q)
        })
        .sum()
}

fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut xs = Vec::with_capacity(n);
    let mut ws = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        xs.push(x);
        ws.push(2.0 / ((1.0 - x * x) * dp * dp));
    }
    (xs, ws)
}

fn quadratic() -> PuiseuxSeries<GaussRat> {
    PuiseuxSeries::taylor(vec![GaussRat::ratio(0, 1), GaussRat::ratio(1, 1), GaussRat::ratio(1, 2)], None)
}

#[test]
fn quadrature_sanity() {
    // √(q + q²/2) = √((u² − 1)/2) with u = q + 1
    let f = |u: f64| 0.5 * (u * (u * u - 1.0).sqrt() - (u + (u * u - 1.0).sqrt()).ln());
    let want = (f(2.0) - f(1.0)) / 2f64.sqrt();
    let got = action_quadratic(Complex64::new(1.0, 0.0));
    assert!((got.re - want).abs() < 1e-13 && got.im.abs() < 1e-15);
}

#[test]
fn traced_nodes_lie_on_stokes_curves() {
    let d = potential_stokes_curves(&quadratic(), 0.0, &TraceParams { extent: 1.0, ..Default::default() }).unwrap();
    assert_eq!(d.lines.len(), 3);
    for l in &d.lines {
        assert!(l.nodes.len() > 10);
        for &q in l.nodes.iter().skip(1) {
            let im = action_quadratic(q).im;
            assert!(im.abs() < 1e-10, "branch {} q = {} Im = {:e}", l.branch_id, q, im);
        }
    }
}

#[test]
fn rays_at_turning_point() {
    let d = potential_stokes_curves(&quadratic(), 0.0, &TraceParams::default()).unwrap();
    let mut got = d.ray_angles();
    got.sort_by(f64::total_cmp);
    assert_eq!(got, vec![-2.0 * PI / 3.0, 0.0, 2.0 * PI / 3.0]);
    let mut canon = canonical_stokes_lines(0.0).ray_angles();
    canon.sort_by(f64::total_cmp);
    assert_eq!(got, canon);
}

#[test]
fn closure_potential_matches_series() {
    let a = potential_stokes_curves(&quadratic(), 0.3, &TraceParams::default()).unwrap();
    let b = potential_stokes_curves(&FnPotential(|q: Complex64| q + q * q * 0.5), 0.3, &TraceParams::default()).unwrap();
    for (x, y) in a.lines.iter().zip(&b.lines) {
        for (p, q) in x.nodes.iter().zip(&y.nodes) {
            assert!((p - q).norm() < 1e-12);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rotating_by_a_third_turn_cycles_sectors(r in 0.1f64..3.0, theta in -3.1f64..3.1, alpha in -1.0f64..1.0) {
        let z = Complex64::from_polar(r, theta);
        let s = classify_sector(z, alpha).unwrap();
        prop_assume!(!matches!(s, Sector::OnLine(_)));
        let next = classify_sector(z * Complex64::from_polar(1.0, 2.0 * PI / 3.0), alpha).unwrap();
        let want = match s {
            Sector::S1 => Sector::S2,
            Sector::S2 => Sector::SMinus1,
            Sector::SMinus1 => Sector::S1,
            Sector::OnLine(_) => unreachable!(),
        };
        prop_assert_eq!(next, want);
    }
}
