#![allow(dead_code)]

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use wkb_core::{GaussRat, PuiseuxSeries};

pub type S = PuiseuxSeries<GaussRat>;

pub fn g(n: i64, d: i64) -> GaussRat {
    GaussRat::ratio(n, d)
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_rational(rng: &mut StdRng) -> GaussRat {
    g(rng.gen_range(-6..=6), rng.gen_range(1..=7))
}

/// Exact polynomial with `deg + 1` random small rational coefficients.
pub fn random_poly(rng: &mut StdRng, deg: usize) -> S {
    S::taylor((0..=deg).map(|_| random_rational(rng)).collect(), None)
}

/// `K_ν(x)·e^x` from `∫₀^∞ e^{−x(cosh t − 1)} cosh(νt) dt` by the trapezoid
/// rule, which converges geometrically for this even, analytic integrand.
pub fn scaled_bessel_k(nu: f64, x: f64) -> f64 {
    let h = 0.02;
    let mut sum = 0.5;
    let mut k = 1;
    loop {
        let t = k as f64 * h;
        let term = (-x * (t.cosh() - 1.0)).exp() * (nu * t).cosh();
        sum += term;
        if term < 1e-18 * sum {
            break;
        }
        k += 1;
    }
    sum * h
}

/// `Ai(x)` for `x > 0` through `Ai(x) = (1/π)√(x/3)K_{1/3}((2/3)x^{3/2})`.
pub fn airy_ai(x: f64) -> f64 {
    let zeta = 2.0 / 3.0 * x.powf(1.5);
    (x / 3.0).sqrt() / std::f64::consts::PI * scaled_bessel_k(1.0 / 3.0, zeta) * (-zeta).exp()
}

/// `2√π ε^{−1/6} Ai(z ε^{−2/3})` for real positive `z` and `ε`.
pub fn airy_reference(z: f64, eps: f64) -> Complex64 {
    Complex64::new(2.0 * std::f64::consts::PI.sqrt() * eps.powf(-1.0 / 6.0) * airy_ai(z * eps.powf(-2.0 / 3.0)), 0.0)
}

pub fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}
