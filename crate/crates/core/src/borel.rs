//! Borel–Padé–Laplace summation of divergent `ε`-series.
//!
//! For `Σ_{n≥0} g_n εⁿ` the minor is `B(ξ) = Σ_{n≥1} g_n ξ^{n−1}/(n−1)!`.
//! The Padé approximant is taken of `ξ·B(ξ)` in a rescaled variable
//! `u = w·ξ`, so that `N` coefficients support any `[L/M]` with `L + M ≤ N`.

use num_complex::Complex64;
use serde::Serialize;

use crate::coeff::{Coeff, GaussRat};
use crate::error::{Result, WkbError};
use crate::pade::pade;
use crate::poly::{derivative, horner, roots};
use crate::prec::{horner_s, MpComplex, Precision, Scalar};

/// Outcome of a Laplace-type integral.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LaplaceResult {
    pub value: Complex64,
    pub est_error: f64,
    pub nodes_used: usize,
    /// The value at working precision, when that exceeds `f64`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extended: Option<MpComplex>,
}

impl LaplaceResult {
    pub fn new<S: Scalar>(value: &S, est_error: f64, nodes_used: usize) -> Self {
        LaplaceResult { value: value.to_c64(), est_error, nodes_used, extended: value.extended() }
    }

    pub fn exact(value: Complex64) -> Self {
        LaplaceResult { value, est_error: 0.0, nodes_used: 0, extended: None }
    }

    /// `|self − other| / |other|`, at working precision when both carry it.
    pub fn rel_diff(&self, other: &LaplaceResult) -> f64 {
        match (&self.extended, &other.extended) {
            (Some(a), Some(b)) => MpComplex::rel_diff(a, b),
            _ => (self.value - other.value).norm() / other.value.norm(),
        }
    }
}

/// Quadrature and acceleration parameters.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BorelParams {
    pub pade: (usize, usize),
    /// Gauss–Legendre nodes per piece of the ray (0 picks from the precision);
    /// the error estimate compares against twice as many.
    pub nodes: usize,
    /// Angular half-width under which a Padé pole counts as on the ray.
    pub pole_angle_tol: f64,
    pub precision: Precision,
}

impl BorelParams {
    pub fn with_pade(l: usize, m: usize) -> Self {
        BorelParams { pade: (l, m), nodes: 0, pole_angle_tol: 1e-4, precision: Precision::DOUBLE }
    }

    /// Defaults `L = M = ⌊N/2⌋`.
    pub fn for_order(n: usize) -> Self {
        Self::with_pade(n / 2, n / 2)
    }

    pub fn at_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }

    fn rule_size(&self) -> usize {
        if self.nodes > 0 {
            self.nodes
        } else {
            4 + self.precision.digits() as usize / 2
        }
    }
}

/// Accelerated minor `B(ξ) = w·P̃(wξ)/Q(wξ)` with `P̃ = P/u`.
#[derive(Clone, Debug)]
pub struct AcceleratedMinor {
    num: Vec<GaussRat>,
    den: Vec<GaussRat>,
    num_f: Vec<Complex64>,
    den_f: Vec<Complex64>,
    scale: Complex64,
    poles: Vec<Complex64>,
}

/// Relative residue below which a pole of a minor built from `f64` data is
/// treated as a numerical pole–zero doublet.
const DOUBLET_RESIDUE: f64 = 1e-11;

impl AcceleratedMinor {
    /// From exact coefficients `c_n` (`n = 1..=N`) of `ξ·B` in `u = scale·ξ`.
    pub fn from_exact(c: &[GaussRat], scale: Complex64, (l, m): (usize, usize)) -> Result<Self> {
        let mut full = vec![GaussRat::zero()];
        full.extend_from_slice(c);
        let l = l.max(1);
        if l + m > c.len() {
            return Err(WkbError::InvalidInput(format!(
                "Pade [{}/{}] needs N >= {}, got N = {}",
                l,
                m,
                l + m,
                c.len()
            )));
        }
        let p = pade(&full, l, m)?;
        let num: Vec<GaussRat> = p.num.into_iter().skip(1).collect();
        let den = p.den;
        let num_f: Vec<Complex64> = num.iter().map(|g| Complex64::from_gauss(g, ())).collect();
        let den_f: Vec<Complex64> = den.iter().map(|g| Complex64::from_gauss(g, ())).collect();
        let poles = roots(&den_f).into_iter().map(|u| u / scale).collect();
        Ok(AcceleratedMinor { num, den, num_f, den_f, scale, poles })
    }

    /// Drop poles whose residue is negligible against `noise·|B(0)|`.
    fn without_doublets(mut self, noise: f64) -> Self {
        let size = self.eval(Complex64::new(0.0, 0.0)).norm().max(1e-300);
        let keep: Vec<Complex64> =
            self.poles.iter().cloned().filter(|p| self.residue(*p).norm() > noise * size * (1.0 + p.norm())).collect();
        self.poles = keep;
        self
    }

    /// From numeric series coefficients `g_1..g_N`; the variable is rescaled
    /// by an estimate of the convergence radius before exact conversion.
    pub fn from_numeric(g: &[Complex64], pade_lm: (usize, usize)) -> Result<Self> {
        let n = g.len();
        let mut d = Vec::with_capacity(n);
        let mut fact = 1.0f64;
        for (k, x) in g.iter().enumerate() {
            if k > 0 {
                fact *= k as f64;
            }
            d.push(x / fact);
        }
        let first = d.iter().position(|x| x.norm() > 0.0);
        let last = d.iter().rposition(|x| x.norm() > 0.0);
        let rho = match (first, last) {
            (Some(i), Some(j)) if j > i => (d[i].norm() / d[j].norm()).powf(1.0 / (j - i) as f64),
            _ => 1.0,
        };
        let rho = if rho.is_finite() && rho > 0.0 { rho } else { 1.0 };
        let mut c = Vec::with_capacity(n);
        let mut p = rho;
        for x in &d {
            c.push(GaussRat::from_c64(x * p).ok_or_else(|| WkbError::InvalidInput("non-finite coefficient".into()))?);
            p *= rho;
        }
        Ok(Self::from_exact(&c, Complex64::new(1.0 / rho, 0.0), pade_lm)?.without_doublets(DOUBLET_RESIDUE))
    }

    pub fn eval(&self, xi: Complex64) -> Complex64 {
        let u = self.scale * xi;
        self.scale * horner(&self.num_f, u) / horner(&self.den_f, u)
    }

    /// Poles of the approximant in the `ξ`-plane.
    pub fn poles(&self) -> &[Complex64] {
        &self.poles
    }

    fn residue(&self, xi: Complex64) -> Complex64 {
        let u = self.scale * xi;
        horner(&self.num_f, u) / horner(&derivative(&self.den_f), u)
    }

    fn check_ray(&self, eps: Complex64, dir: Complex64, params: &BorelParams) -> Result<()> {
        if (dir / eps).re <= 0.0 {
            return Err(WkbError::InvalidInput(format!(
                "ray angle {} is outside the half-plane of convergence for eps = {}",
                dir.arg(),
                eps
            )));
        }
        for &p in &self.poles {
            let ang = (p / dir).arg().abs();
            if p.norm() > 0.0 && ang < params.pole_angle_tol {
                let weight = (self.residue(p) * (-p / eps).exp()).norm();
                if weight > 1e-30 {
                    return Err(WkbError::PoleOnRay(format!("{}", p)));
                }
            }
        }
        Ok(())
    }

    /// `∫₀^{∞·e^{iφ}} e^{−ξ/ε} B(ξ) dξ` at working precision, with the
    /// rescaling `w` supplied at that precision. Returns the value, an error
    /// estimate and the number of integrand evaluations.
    pub fn laplace_in<S: Scalar>(&self, scale: &S, eps: Complex64, phi: f64, params: &BorelParams) -> Result<(S, f64, usize)> {
        let dir = Complex64::from_polar(1.0, phi);
        self.check_ray(eps, dir, params)?;
        let ctx = scale.ctx();
        let num: Vec<S> = self.num.iter().map(|g| S::from_gauss(g, ctx)).collect();
        let den: Vec<S> = self.den.iter().map(|g| S::from_gauss(g, ctx)).collect();
        let kappa = dir / eps;
        let a = kappa.re;
        // the integrand decays like e^{−a t}; B grows at most polynomially
        let t_end = (params.precision.log_cutoff() + 12.0) / a;
        let dir_s = S::lift(dir, ctx);
        let mkappa = S::lift(dir, ctx).div(&S::lift(eps, ctx)).neg();
        let n = params.rule_size();
        let coarse = S::legendre(n, ctx);
        let fine = S::legendre(2 * n, ctx);
        let step = |t: f64| -> f64 {
            let d = self.poles.iter().map(|p| (dir * t - p).norm()).fold(f64::INFINITY, f64::min);
            (2.0 / kappa.norm()).min(0.25 * d).max(t_end * 1e-5)
        };
        let mut vf = S::zero(ctx);
        let mut vc = S::zero(ctx);
        let mut t = 0.0;
        let mut evals = 0;
        while t < t_end {
            let h = step(t).min(step(t + 0.5 * step(t)));
            let b = (t + h).min(t_end);
            let (ts, bs) = (S::lift(Complex64::new(t, 0.0), ctx), S::lift(Complex64::new(b, 0.0), ctx));
            let half = bs.sub(&ts).mul_c(Complex64::new(0.5, 0.0));
            let mid = bs.add(&ts).mul_c(Complex64::new(0.5, 0.0));
            for (rule, acc) in [(&fine, &mut vf), (&coarse, &mut vc)] {
                let mut piece = S::zero(ctx);
                for (x, w) in rule.iter() {
                    let tt = mid.add(&half.mul(x));
                    let u = scale.mul(&dir_s).mul(&tt);
                    let bv = horner_s(&num, &u).div(&horner_s(&den, &u));
                    piece = piece.add(&mkappa.mul(&tt).exp().mul(&bv).mul(w));
                    evals += 1;
                }
                *acc = acc.add(&piece.mul(&half));
            }
            t = b;
        }
        let factor = scale.mul(&dir_s);
        let vf = vf.mul(&factor);
        let vc = vc.mul(&factor);
        let est = vf.sub(&vc).norm();
        Ok((vf, est, evals))
    }

    /// Laplace integral at the precision in `params`.
    pub fn laplace(&self, eps: Complex64, phi: f64, params: &BorelParams) -> Result<LaplaceResult> {
        fn run<S: Scalar>(m: &AcceleratedMinor, ctx: S::Ctx, eps: Complex64, phi: f64, params: &BorelParams) -> Result<LaplaceResult> {
            let (v, e, n) = m.laplace_in(&S::lift(m.scale, ctx), eps, phi, params)?;
            Ok(LaplaceResult::new(&v, e, n))
        }
        if params.precision.is_double() {
            run::<Complex64>(self, (), eps, phi, params)
        } else {
            run::<MpComplex>(self, params.precision.bits(), eps, phi, params)
        }
    }
}

/// Borel–Padé sum `g₀ + ∫ e^{−ξ/ε}B(ξ)dξ` of numeric coefficients.
pub fn borel_pade_sum(g: &[Complex64], eps: Complex64, phi: f64, params: &BorelParams) -> Result<LaplaceResult> {
    if g.is_empty() {
        return Ok(LaplaceResult::exact(Complex64::new(0.0, 0.0)));
    }
    if g.len() == 1 || params.pade == (0, 0) {
        return Ok(LaplaceResult::exact(g[0]));
    }
    let minor = AcceleratedMinor::from_numeric(&g[1..], params.pade)?;
    fn run<S: Scalar>(m: &AcceleratedMinor, g0: Complex64, ctx: S::Ctx, eps: Complex64, phi: f64, params: &BorelParams) -> Result<LaplaceResult> {
        let (v, e, n) = m.laplace_in(&S::lift(m.scale, ctx), eps, phi, params)?;
        Ok(LaplaceResult::new(&v.add_c(g0), e, n))
    }
    if params.precision.is_double() {
        run::<Complex64>(&minor, g[0], (), eps, phi, params)
    } else {
        run::<MpComplex>(&minor, g[0], params.precision.bits(), eps, phi, params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_series() {
        // Σ (-1)^n n! εⁿ sums to ∫ e^{-t}/(1+εt) dt
        let n = 21;
        let mut g = Vec::new();
        let mut f = 1.0;
        for k in 0..n {
            if k > 0 {
                f *= k as f64;
            }
            g.push(Complex64::new(if k % 2 == 0 { f } else { -f }, 0.0));
        }
        let eps = 0.1;
        let r = borel_pade_sum(&g, Complex64::new(eps, 0.0), 0.0, &BorelParams::with_pade(10, 10)).unwrap();
        // ε⁻¹ e^{1/ε} E₁(1/ε) at ε = 0.1
        let exact = 0.915_633_339_397_880_8;
        assert!((r.value.re - exact).abs() < 1e-12, "{} vs {}", r.value, exact);
    }
}
