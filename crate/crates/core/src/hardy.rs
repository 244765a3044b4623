//! Hardy's family for higher-order turning points.
//!
//! `Pₘ(sinh q)` is `cosh(mq)` or `sinh(mq)` by parity of `m`; from it come the
//! quasi-homogeneous phases `Sₙ(z, ẑ)` and companions `Tₙ` with
//! `(∂S/∂z)² = T·∂S/∂ẑ + zⁿ` and `∂²S/∂z² = ∂T/∂ẑ`. Those two identities make
//! `Φₙ = ∫ e^{−Sₙ/ε} dẑ` solve `ε²Φ″ = zⁿΦ`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::borel::LaplaceResult;
use crate::coeff::GaussRat;
use crate::contour::{integrate, Amplitude, ContourSpec, Phase};
use crate::error::{Result, WkbError};

/// `Pₘ` as integer coefficients in increasing degree.
pub fn hardy_polynomial(m: usize) -> Result<Vec<BigInt>> {
    if m < 2 {
        return Err(WkbError::InvalidInput(format!("Hardy polynomials start at m = 2, got {}", m)));
    }
    // P_{m+2} = 2(1 + 2t²)P_m − P_{m−2}, seeded by P₀ = 1, P₁ = t, P₋₁ = −t
    let (mut prev, mut cur, mut deg) = if m.is_multiple_of(2) {
        (vec![BigInt::one()], vec![BigInt::one(), BigInt::zero(), BigInt::from(2)], 2)
    } else {
        (vec![BigInt::zero(), BigInt::from(-1)], vec![BigInt::zero(), BigInt::one()], 1)
    };
    while deg < m {
        let mut next = vec![BigInt::zero(); cur.len() + 2];
        for (k, c) in cur.iter().enumerate() {
            next[k] += c * 2;
            next[k + 2] += c * 4;
        }
        for (k, c) in prev.iter().enumerate() {
            next[k] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
        deg += 2;
    }
    let mut p = cur;
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    Ok(p)
}

/// `cosh(mq)` for even `m`, `sinh(mq)` for odd `m`.
pub fn hyperbolic_target(m: usize, q: f64) -> f64 {
    if m.is_multiple_of(2) {
        (m as f64 * q).cosh()
    } else {
        (m as f64 * q).sinh()
    }
}

pub fn eval_int_poly(p: &[BigInt], t: f64) -> f64 {
    p.iter().rev().fold(0.0, |acc, c| acc * t + c.to_f64().unwrap_or(f64::NAN))
}

/// Polynomial in `(z, ẑ)` over ℚ, keyed by `(deg_z, deg_ẑ)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(u32, u32), BigRational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn monomial(c: BigRational, dz: u32, dw: u32) -> Self {
        let mut p = BiPoly::zero();
        p.insert(dz, dw, c);
        p
    }

    fn insert(&mut self, dz: u32, dw: u32, c: BigRational) {
        let e = self.terms.entry((dz, dw)).or_insert_with(BigRational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(dz, dw));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, dz: u32, dw: u32) -> BigRational {
        self.terms.get(&(dz, dw)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.terms.iter()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&(a, b), c) in &o.terms {
            r.insert(a, b, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-BigRational::one()))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut r = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            r.insert(a, b, c * s);
        }
        r
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            for (&(x, y), d) in &o.terms {
                r.insert(a + x, b + y, c * d);
            }
        }
        r
    }

    pub fn d_z(&self) -> Self {
        let mut r = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            if a > 0 {
                r.insert(a - 1, b, c * BigInt::from(a));
            }
        }
        r
    }

    pub fn d_zhat(&self) -> Self {
        let mut r = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            if b > 0 {
                r.insert(a, b - 1, c * BigInt::from(b));
            }
        }
        r
    }

    /// Antiderivative in `ẑ` with zero constant.
    pub fn integrate_zhat(&self) -> Self {
        let mut r = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            r.insert(a, b + 1, c / BigInt::from(b + 1));
        }
        r
    }

    /// Part of degree `dw` in `ẑ`, as a polynomial in `z` alone.
    fn zhat_slice(&self, dw: u32) -> BiPoly {
        let mut r = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            if b == dw {
                r.insert(a, 0, c.clone());
            }
        }
        r
    }

    fn min_zhat_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).min()
    }

    /// Every term has weighted degree `2·deg_z + deg_ẑ = w`.
    pub fn is_quasi_homogeneous(&self, w: u32) -> bool {
        self.terms.keys().all(|&(a, b)| 2 * a + b == w)
    }

    /// `p(λ²z, λẑ)`.
    pub fn rescale(&self, lambda: &BigRational) -> Self {
        let mut r = BiPoly::zero();
        for (&(a, b), c) in &self.terms {
            r.insert(a, b, c * num_traits::pow(lambda.clone(), (2 * a + b) as usize));
        }
        r
    }

    pub fn eval(&self, z: Complex64, w: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(a, b), c)| big_to_c64(c) * z.powu(a) * w.powu(b))
            .sum()
    }

    /// Coefficients in `ẑ` (increasing degree) at a fixed exact `z`.
    pub fn in_zhat(&self, z: &GaussRat) -> Vec<GaussRat> {
        use crate::coeff::Coeff;
        let top = self.terms.keys().map(|&(_, b)| b).max().unwrap_or(0) as usize;
        let mut out = vec![GaussRat::zero(); top + 1];
        for (&(a, b), c) in &self.terms {
            let mut zp = GaussRat::one();
            for _ in 0..a {
                zp = zp.mul(z);
            }
            out[b as usize] = out[b as usize].add(&zp.mul(&GaussRat::real(c.clone())));
        }
        out
    }

    /// `[[deg_z, deg_ẑ, "p/q"], …]`.
    pub fn coefficient_list(&self) -> Vec<(u32, u32, String)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c.to_string())).collect()
    }
}

fn big_to_c64(c: &BigRational) -> Complex64 {
    Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0)
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut order: Vec<_> = self.terms.iter().collect();
        order.sort_by_key(|(&(a, b), _)| (std::cmp::Reverse(b), a));
        for (&(a, b), c) in order {
            let neg = c.is_negative();
            let mag = c.abs();
            let sign = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let mut factors = Vec::new();
            if !mag.is_one() || (a == 0 && b == 0) {
                factors.push(mag.to_string());
            }
            for (name, d) in [("zh", b), ("z", a)] {
                match d {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    d => factors.push(format!("{}^{}", name, d)),
                }
            }
            write!(f, "{}{}", sign, factors.join("*"))?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// `Sₙ` and `Tₙ` for one `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct HardyPair {
    pub n: usize,
    pub s: BiPoly,
    pub t: BiPoly,
}

impl HardyPair {
    /// `(∂S/∂z)² − T·∂S/∂ẑ − zⁿ` and `∂²S/∂z² − ∂T/∂ẑ`, expanded.
    pub fn identity_residuals(&self) -> (BiPoly, BiPoly) {
        let sz = self.s.d_z();
        let zn = BiPoly::monomial(BigRational::one(), self.n as u32, 0);
        let first = sz.mul(&sz).sub(&self.t.mul(&self.s.d_zhat())).sub(&zn);
        let second = sz.d_z().sub(&self.t.d_zhat());
        (first, second)
    }

    pub fn is_quasi_homogeneous(&self) -> bool {
        self.s.is_quasi_homogeneous(self.n as u32 + 2)
    }
}

/// `Sₙ = (2/(n+2))·Q_{n+2}(−z, ẑ)` with `Qₘ(z, ẑ) = z^{m/2}Pₘ(ẑ/√z)`, and `Tₙ`.
pub fn hardy_s_t(n: usize) -> Result<HardyPair> {
    if n == 0 {
        return Err(WkbError::InvalidInput("n must be at least 1".into()));
    }
    let m = n + 2;
    let p = hardy_polynomial(m)?;
    let lead = BigRational::new(BigInt::from(2), BigInt::from(m));
    let mut s = BiPoly::zero();
    for (k, c) in p.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // c·ẑ^k·z^{(m−k)/2}, evaluated at −z
        let dz = ((m - k) / 2) as u32;
        let sign = if dz.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
        s.insert(dz, k as u32, &lead * BigRational::from_integer(c * sign));
    }
    // T = ∫ ∂²S/∂z² dẑ + c(z), with c fixed by the first identity
    let t0 = s.d_z().d_z().integrate_zhat();
    let sz = s.d_z();
    let zn = BiPoly::monomial(BigRational::one(), n as u32, 0);
    let sw = s.d_zhat();
    let rest = sz.mul(&sz).sub(&zn).sub(&t0.mul(&sw));
    let j = sw.min_zhat_degree().ok_or_else(|| WkbError::IdentityFailure("dS/dzh vanishes".into()))?;
    let num = rest.zhat_slice(j);
    let den = sw.zhat_slice(j);
    let (&(dd, _), dc) = den.terms().next().ok_or_else(|| WkbError::IdentityFailure("empty slice".into()))?;
    if den.terms().count() != 1 {
        return Err(WkbError::IdentityFailure("non-monomial matching slice".into()));
    }
    let mut c = BiPoly::zero();
    for (&(a, _), v) in num.terms() {
        if a < dd {
            return Err(WkbError::IdentityFailure(format!("constant of integration is not polynomial for n = {}", n)));
        }
        c.insert(a - dd, 0, v / dc);
    }
    let pair = HardyPair { n, s, t: t0.add(&c) };
    let (r1, r2) = pair.identity_residuals();
    if !r1.is_zero() || !r2.is_zero() {
        return Err(WkbError::IdentityFailure(format!("n = {}: residuals {} and {}", n, r1, r2)));
    }
    Ok(pair)
}

/// Power of ε in front of `Φ″` in the model equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OdeConvention {
    /// `ε²Φ″ = zⁿΦ`, the form the two identities produce.
    EpsSquared,
    /// `εΦ″ = zⁿΦ`, as printed for the Hardy family.
    EpsFirst,
}

impl FromStr for OdeConvention {
    type Err = WkbError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eps2" | "eps-squared" => Ok(OdeConvention::EpsSquared),
            "eps" | "eps-first" => Ok(OdeConvention::EpsFirst),
            other => Err(WkbError::InvalidInput(format!("unknown ODE convention {:?}", other))),
        }
    }
}

/// Default valley pair for `Φₙ`: the conjugate pair around the positive axis,
/// which stays off the Stokes configuration for real `z` and `ε`.
pub const HARDY_VALLEYS: (i64, i64) = (1, -1);

/// `Φₙ(z, ε) = ∫ e^{−Sₙ(z,ẑ)/ε} dẑ`.
pub fn hardy_phi_eval(pair: &HardyPair, z: Complex64, eps: Complex64, spec: &ContourSpec) -> Result<LaplaceResult> {
    if !(eps.re > 0.0) || !eps.is_finite() {
        return Err(WkbError::InvalidInput(format!("Re eps must be positive, got {}", eps)));
    }
    let zq = GaussRat::from_c64(z).ok_or_else(|| WkbError::InvalidInput(format!("z must be finite, got {}", z)))?;
    let phase = Phase::exact(pair.s.in_zhat(&zq), eps)?;
    Ok(integrate(&phase, HARDY_VALLEYS, Amplitude::Unit, spec, &|_| true)?.result)
}

// eighth-order central stencil for the second derivative
const STENCIL: [f64; 5] = [-205.0 / 72.0, 8.0 / 5.0, -1.0 / 5.0, 8.0 / 315.0, -1.0 / 560.0];

/// Outcome of the finite-difference ODE check.
#[derive(Clone, Debug, Serialize)]
pub struct OdeCheck {
    pub convention: OdeConvention,
    pub value: Complex64,
    pub second_derivative: Complex64,
    pub step: f64,
    /// `|c·Φ″ − zⁿΦ| / max(|c·Φ″|, |zⁿΦ|)` with `c = ε²` or `ε`.
    pub relative_residual: f64,
}

pub fn hardy_ode_residual(
    pair: &HardyPair,
    z: Complex64,
    eps: Complex64,
    convention: OdeConvention,
    spec: &ContourSpec,
) -> Result<OdeCheck> {
    let scale = 1.0f64.max(z.norm().powf(pair.n as f64 / 2.0));
    let h = 0.2 * eps.norm() / scale;
    let at = |k: i64| hardy_phi_eval(pair, z + Complex64::new(h * k as f64, 0.0), eps, spec).map(|r| r.value);
    let center = at(0)?;
    let mut d2 = center * STENCIL[0];
    for (k, w) in STENCIL.iter().enumerate().skip(1) {
        d2 += (at(k as i64)? + at(-(k as i64))?) * *w;
    }
    d2 /= h * h;
    let lhs = match convention {
        OdeConvention::EpsSquared => eps * eps * d2,
        OdeConvention::EpsFirst => eps * d2,
    };
    let rhs = z.powu(pair.n as u32) * center;
    let rel = (lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1e-300);
    Ok(OdeCheck { convention, value: center, second_derivative: d2, step: h, relative_residual: rel })
}

/// Ratio `Φ₁ / ∫ e^{−(zẑ−ẑ³/3)/ε} dẑ` at each sample point.
pub fn airy_proportionality(zs: &[Complex64], eps: Complex64, spec: &ContourSpec) -> Result<Vec<Complex64>> {
    let pair = hardy_s_t(1)?;
    zs.iter()
        .map(|&z| {
            let h = hardy_phi_eval(&pair, z, eps, spec)?.value;
            let a = crate::airy::airy_contour_raw(z, eps, spec)?.result.value;
            Ok(h / a)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn polynomials() {
        assert_eq!(hardy_polynomial(2).unwrap(), ints(&[1, 0, 2]));
        assert_eq!(hardy_polynomial(3).unwrap(), ints(&[0, 3, 0, 4]));
        assert_eq!(hardy_polynomial(4).unwrap(), ints(&[1, 0, 8, 0, 8]));
        for m in 2..9 {
            let p = hardy_polynomial(m).unwrap();
            assert_eq!(p.len(), m + 1);
            for q in [-0.7, 0.3, 1.1] {
                let want = hyperbolic_target(m, q);
                assert!((eval_int_poly(&p, f64::sinh(q)) - want).abs() < 1e-12 * want.abs().max(1.0));
            }
        }
    }

    #[test]
    fn table() {
        let p1 = hardy_s_t(1).unwrap();
        assert_eq!(p1.s, BiPoly::monomial(r(8, 3), 0, 3).add(&BiPoly::monomial(r(-2, 1), 1, 1)));
        assert_eq!(p1.t, BiPoly::monomial(r(1, 2), 0, 0));
        let p3 = hardy_s_t(3).unwrap();
        assert_eq!(p3.t, BiPoly::monomial(r(2, 1), 0, 2).add(&BiPoly::monomial(r(-1, 2), 1, 0)));
        assert_eq!(p3.s.to_string(), "32/5*zh^5 - 8*zh^3*z + 2*zh*z^2");
        for n in 1..=8 {
            assert!(hardy_s_t(n).unwrap().is_quasi_homogeneous());
        }
    }

    #[test]
    fn orientation_flips_sign() {
        let pair = hardy_s_t(2).unwrap();
        let (z, eps) = (Complex64::new(0.7, 0.1), Complex64::new(0.2, 0.0));
        let a = hardy_phi_eval(&pair, z, eps, &ContourSpec::valleys(0, 1)).unwrap().value;
        let b = hardy_phi_eval(&pair, z, eps, &ContourSpec::valleys(1, 0)).unwrap().value;
        assert!((a + b).norm() < 1e-12 * a.norm());
    }
}
