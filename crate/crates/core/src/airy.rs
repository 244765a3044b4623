//! The Airy reference model `Φ″ = (z/ε²)Φ`.
//!
//! Its elementary WKB symbol has closed-form rational coefficients
//! `αₙ = (1/6)ₙ(5/6)ₙ/n! · (−3/4)ⁿ z^{−3n/2}`. The symbol is summed by
//! Borel–Padé–Laplace and checked against the integral
//! `∫ e^{−(zẑ − ẑ³/3)/ε} dẑ` evaluated along steepest-descent paths.

use num_complex::Complex64;
use serde::Serialize;

use crate::borel::{AcceleratedMinor, BorelParams, LaplaceResult};
use crate::branch::Branched;
use crate::coeff::{Coeff, GaussRat};
use crate::contour::{integrate, Amplitude, ContourOutcome, ContourSpec, Phase};
use crate::error::{Result, WkbError};
use crate::prec::{polar_pow, MpComplex, Scalar};
use crate::series::{ex, PuiseuxSeries};
use crate::symbol::{EpsSeries, WkbSymbol};

/// Rational parts of `α₀ … α_N` (coefficients of `z^{−3n/2}`).
pub fn airy_rationals(n: usize) -> Vec<GaussRat> {
    let mut out = vec![GaussRat::one()];
    let mut c = GaussRat::one();
    for k in 1..=n as i64 {
        // (k − 5/6)(k − 1/6)/k · (−3/4)
        let f = GaussRat::ratio((6 * k - 5) * (6 * k - 1) * -3, 36 * k * 4);
        c = c.mul(&f);
        out.push(c.clone());
    }
    out
}

/// The elementary Airy symbol `A⁺` through `ε^N`.
pub fn airy_symbol(n: usize) -> WkbSymbol<GaussRat> {
    let coeffs = airy_rationals(n)
        .into_iter()
        .enumerate()
        .map(|(k, a)| PuiseuxSeries::monomial(a, ex(-3 * k as i64, 2)))
        .collect();
    WkbSymbol { sign: 1, prefactor_exp: ex(-1, 4), eps: EpsSeries::new(coeffs) }
}

/// Minor coefficients: entry `n−1` is `αₙ/(n−1)!`.
pub fn airy_minor(n: usize) -> Vec<PuiseuxSeries<GaussRat>> {
    let sym = airy_symbol(n);
    let mut fact = GaussRat::one();
    (1..=n)
        .map(|k| {
            if k > 1 {
                fact = fact.mul(&GaussRat::ratio(k as i64 - 1, 1));
            }
            sym.coeff(k).scale(&fact.inv().unwrap())
        })
        .collect()
}

/// The phase polynomial `zẑ − ẑ³/3`, with `z` taken exactly.
pub fn airy_phase(z: Complex64, eps: Complex64) -> Result<Phase> {
    let zq = GaussRat::from_c64(z).ok_or_else(|| WkbError::InvalidInput(format!("z must be finite, got {}", z)))?;
    Phase::exact(vec![GaussRat::zero(), zq, GaussRat::zero(), GaussRat::ratio(-1, 3)], eps)
}

/// Valleys joined by the default contour (centers at ∓π/3 when `ε > 0`).
pub const AIRY_VALLEYS: (i64, i64) = (0, 1);

fn check_eps(eps: Complex64) -> Result<()> {
    if !(eps.re > 0.0) || !eps.is_finite() {
        return Err(WkbError::InvalidInput(format!("Re eps must be positive, got {}", eps)));
    }
    Ok(())
}

/// Raw contour integral `∫ e^{−(zẑ−ẑ³/3)/ε} dẑ` with the contour data.
pub fn airy_contour_raw(z: Complex64, eps: Complex64, spec: &ContourSpec) -> Result<ContourOutcome> {
    check_eps(eps)?;
    if z.norm() == 0.0 {
        return Err(WkbError::InvalidInput("z = 0 is the turning point".into()));
    }
    let phase = airy_phase(z, eps)?;
    integrate(&phase, AIRY_VALLEYS, Amplitude::Unit, spec, &|_| true)
}

/// `i√(πε)`, the factor between the raw integral and `A⁺`'s Borel sum.
pub fn contour_normalization<S: Scalar>(eps: Complex64, ctx: S::Ctx) -> S {
    S::pi(ctx).mul_c(eps).sqrt().mul_c(Complex64::new(0.0, 1.0))
}

/// Divide a contour result by `i√(πε)`, keeping any extended precision.
pub fn normalize_contour(r: &LaplaceResult, eps: Complex64) -> LaplaceResult {
    let k: Complex64 = contour_normalization(eps, ());
    match &r.extended {
        Some(x) => {
            let kx: MpComplex = contour_normalization(eps, x.bits());
            LaplaceResult::new(&x.div(&kx), r.est_error / k.norm(), r.nodes_used)
        }
        None => LaplaceResult::new(&(r.value / k), r.est_error / k.norm(), r.nodes_used),
    }
}

/// Normalized contour value `2√π ε^{−1/6} Ai(z ε^{−2/3})`.
pub fn airy_contour(z: Complex64, eps: Complex64, spec: &ContourSpec) -> Result<LaplaceResult> {
    let out = airy_contour_raw(z, eps, spec)?;
    Ok(normalize_contour(&out.result, eps))
}

/// Signed minor coefficients of `A^σ`: `αₙ/(n−1)!`, odd orders negated for `σ < 0`.
fn signed_minor(sign: i8, n: usize) -> Vec<GaussRat> {
    let rats = airy_rationals(n);
    let mut fact = GaussRat::one();
    let mut c = Vec::with_capacity(n);
    for k in 1..=n {
        if k > 1 {
            fact = fact.mul(&GaussRat::ratio(k as i64 - 1, 1));
        }
        let mut v = rats[k].mul(&fact.inv().unwrap());
        if sign < 0 && k % 2 == 1 {
            v = v.neg();
        }
        c.push(v);
    }
    c
}

fn lateral_in<S: Scalar>(
    sign: i8,
    z: Branched,
    eps: Complex64,
    n: usize,
    phi: f64,
    params: &BorelParams,
    ctx: S::Ctx,
) -> Result<LaplaceResult> {
    let (m, a) = (z.modulus, z.arg);
    let action = polar_pow::<S>(m, a, (3, 2), ctx).mul(&S::ratio(-2 * sign as i64, 3, ctx));
    let pre = action.div(&S::lift(eps, ctx)).exp().mul(&polar_pow::<S>(m, a, (-1, 4), ctx));
    if n == 0 || params.pade == (0, 0) {
        return Ok(LaplaceResult::new(&pre, 0.0, 0));
    }
    let w = polar_pow::<S>(m, a, (-3, 2), ctx);
    let minor = AcceleratedMinor::from_exact(&signed_minor(sign, n), w.to_c64(), params.pade)?;
    let (r, est, evals) = minor.laplace_in(&w, eps, phi, params)?;
    let value = pre.mul(&r.add_c(Complex64::new(1.0, 0.0)));
    Ok(LaplaceResult::new(&value, pre.norm() * est, evals))
}

/// Borel sum of `A^σ` (`σ = sign`) at `z` along the ray of angle `phi`.
pub fn airy_lateral_sum(
    sign: i8,
    z: Branched,
    eps: Complex64,
    n: usize,
    phi: f64,
    params: &BorelParams,
) -> Result<LaplaceResult> {
    check_eps(eps)?;
    if z.modulus == 0.0 || !z.modulus.is_finite() {
        return Err(WkbError::InvalidInput("z must be finite and nonzero".into()));
    }
    if params.precision.is_double() {
        lateral_in::<Complex64>(sign, z, eps, n, phi, params, ())
    } else {
        lateral_in::<MpComplex>(sign, z, eps, n, phi, params, params.precision.bits())
    }
}

/// `s₀(A⁺)` along the real positive ξ-ray.
pub fn airy_borel_sum(z: Branched, eps: Complex64, n: usize, params: &BorelParams) -> Result<LaplaceResult> {
    airy_lateral_sum(1, z, eps, n, 0.0, params)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct JumpReport {
    pub jump: Complex64,
    pub predicted: Complex64,
    /// `|jump − predicted| / |predicted|`.
    pub rel_error: f64,
    /// Jump relative to the size of either lateral sum.
    pub rel_jump: f64,
}

/// Default lateral rotation of the ξ-ray (10°).
pub const LATERAL_DELTA: f64 = 10.0 * std::f64::consts::PI / 180.0;

/// Lateral jump of `A^σ` across the direction 0: `s(−δ) − s(+δ)`, i.e. the
/// sum to the right of the singular direction minus the sum to its left.
/// The prediction is `−i · s₀(A^{−σ})`.
pub fn lateral_jump(sign: i8, z: Branched, eps: Complex64, n: usize, params: &BorelParams, delta: f64) -> Result<JumpReport> {
    let right = airy_lateral_sum(sign, z, eps, n, -delta, params)?;
    let left = airy_lateral_sum(sign, z, eps, n, delta, params)?;
    let other = airy_lateral_sum(-sign, z, eps, n, 0.0, params)?;
    let jump = right.value - left.value;
    let predicted = Complex64::new(0.0, -1.0) * other.value;
    Ok(JumpReport {
        jump,
        predicted,
        rel_error: (jump - predicted).norm() / predicted.norm(),
        rel_jump: jump.norm() / right.value.norm().max(left.value.norm()),
    })
}

/// Stokes jump of `A⁺` for `z` on `L₁`.
pub fn stokes_jump(z: Branched, eps: Complex64, n: usize) -> Result<JumpReport> {
    lateral_jump(1, z, eps, n, &BorelParams::for_order(n), LATERAL_DELTA)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        let r = airy_rationals(2);
        assert_eq!(r[1], GaussRat::ratio(-5, 48));
        assert_eq!(r[2], GaussRat::ratio(385, 4608));
    }

    #[test]
    fn minor_factorials() {
        let m = airy_minor(5);
        let s = airy_symbol(5);
        assert_eq!(m[3].scale(&GaussRat::ratio(6, 1)), s.coeff(4));
    }
}
