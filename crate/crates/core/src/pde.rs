//! The singular PDE
//! `x²ψ_xx + (4xz−2x²)ψ_xz + x²ψ_zz + (2x−4z)ψ_z − x²Fψ = 0`
//! behind the confluent representation `Φ = ∫ e^{−S(z,ẑ)/ε} ψ(z, z−ẑ²) dẑ`,
//! with `S = zẑ − ẑ³/3`.
//!
//! `ψ = Σ aₙ(z)xⁿ` is built two ways (a rational transform on Taylor
//! coefficients, and a dense linear solve of the coefficient ODE), and a
//! third way through the Picard iteration of the integral equation for
//! `(ψ − 1)/x`, whose increments also feed the iteration-bound check.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::airy::{airy_phase, contour_normalization, AIRY_VALLEYS};
use crate::borel::{BorelParams, LaplaceResult};
use crate::branch::Branched;
use crate::coeff::Coeff;
use crate::contour::{integrate, Amplitude, ContourSpec};
use crate::error::{Result, WkbError};
use crate::pade::solve;
use crate::series::{ex, Exp, PuiseuxSeries, TaylorSeries};
use crate::stokes::{classify_sector, Sector, SECTOR_CONVENTION};
use crate::transport::{symbol_lateral_sum, transport_g};

type Series<C> = PuiseuxSeries<C>;

/// `ψ(z, x) = Σ_{n≤Nx} aₙ(z)xⁿ`, each `aₙ` known below `z^{Nz}`.
#[derive(Clone, Debug, PartialEq)]
pub struct BivariateSeries<C: Coeff> {
    pub a_list: Vec<TaylorSeries<C>>,
    pub nx: usize,
    pub nz: usize,
}

impl<C: Coeff> BivariateSeries<C> {
    /// `aₙ(z)` for `n ≤ Nx` at a point.
    pub fn coeffs_at(&self, z: Complex64) -> Result<Vec<Complex64>> {
        self.a_list.iter().map(|a| a.eval(Branched::principal(z))).collect()
    }

    /// Largest `|Δ|` over stored coefficients of two series with the same shape.
    pub fn max_difference(&self, other: &Self) -> f64 {
        self.a_list
            .iter()
            .zip(&other.a_list)
            .map(|(a, b)| (a - b).max_magnitude())
            .fold(if self.a_list.len() == other.a_list.len() { 0.0 } else { f64::INFINITY }, f64::max)
    }
}

fn check_inputs<C: Coeff>(f: &TaylorSeries<C>, h: &TaylorSeries<C>) -> Result<()> {
    f.ensure_taylor()?;
    h.ensure_taylor()
}

fn working_window(nx: usize, nz: usize) -> i64 {
    (nx + nz + 2) as i64
}

/// `−a″ₙ₋₂ + 2(n−2)a′ₙ₋₁ + F aₙ₋₂`.
fn source<C: Coeff>(f: &Series<C>, prev2: &Series<C>, prev1: &Series<C>, n: usize) -> Series<C> {
    prev1.derive().scale(&C::from_i64(2 * (n as i64 - 2))) - prev2.derive().derive() + f * prev2
}

/// Formal solution with `a₀ = 1`, `a₁ = h`; `zᵐ ↦ zᵐ/((n−1)(n+4m))` on the source.
pub fn pde_taylor<C: Coeff>(f: &TaylorSeries<C>, h: &TaylorSeries<C>, nx: usize, nz: usize) -> Result<BivariateSeries<C>> {
    check_inputs(f, h)?;
    let w = working_window(nx, nz);
    let f = f.truncate(ex(w, 1));
    let mut a: Vec<Series<C>> = vec![Series::one()];
    if nx >= 1 {
        a.push(h.truncate(ex(w, 1)));
    }
    for n in 2..=nx {
        let rhs = source(&f, &a[n - 2], &a[n - 1], n);
        let terms: Vec<(Exp, C)> = rhs
            .terms()
            .into_iter()
            .map(|(e, c)| {
                let m = e.to_integer();
                (e, c.scale_ratio(Exp::new(1, (n as i64 - 1) * (n as i64 + 4 * m))))
            })
            .collect();
        a.push(Series::from_terms(terms, rhs.trunc_order())?);
    }
    let cut = ex(nz as i64, 1);
    Ok(BivariateSeries { a_list: a.iter().map(|s| s.truncate(cut)).collect(), nx, nz })
}

/// Dense coefficients `z⁰ … z^{len−1}`.
fn dense<C: Coeff>(s: &Series<C>, len: usize) -> Vec<C> {
    (0..len).map(|m| s.coeff(ex(m as i64, 1))).collect()
}

fn d_dense<C: Coeff>(v: &[C]) -> Vec<C> {
    let mut out: Vec<C> = (1..v.len()).map(|m| v[m].mul(&C::from_i64(m as i64))).collect();
    out.push(C::zero());
    out
}

fn mul_dense<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let n = a.len();
    let mut out = vec![C::zero(); n];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Same series via `(n−1)(4z aₙ′ + n aₙ) = source`, solved as a dense linear
/// system on the monomial basis.
pub fn pde_taylor_direct<C: Coeff>(f: &TaylorSeries<C>, h: &TaylorSeries<C>, nx: usize, nz: usize) -> Result<BivariateSeries<C>> {
    check_inputs(f, h)?;
    let w = working_window(nx, nz) as usize;
    let fd = dense(f, w);
    let mut a: Vec<Vec<C>> = vec![dense(&Series::one(), w)];
    if nx >= 1 {
        a.push(dense(h, w));
    }
    for n in 2..=nx {
        let d1 = d_dense(&a[n - 1]);
        let d2 = d_dense(&d_dense(&a[n - 2]));
        let fa = mul_dense(&fd, &a[n - 2]);
        let k = C::from_i64(2 * (n as i64 - 2));
        let rhs: Vec<C> = (0..w).map(|m| d1[m].mul(&k).sub(&d2[m]).add(&fa[m])).collect();
        // column j: (n−1)·L(z^j) with L = 4z∂ + n
        let mut mat = vec![vec![C::zero(); w]; w];
        for j in 0..w {
            let mut basis = vec![C::zero(); w];
            basis[j] = C::one();
            let db = d_dense(&basis);
            for m in 0..w {
                let z_db = if m == 0 { C::zero() } else { db[m - 1].clone() };
                let entry = z_db.mul(&C::from_i64(4)).add(&basis[m].mul(&C::from_i64(n as i64)));
                mat[m][j] = entry.mul(&C::from_i64(n as i64 - 1));
            }
        }
        let sol = solve(mat, rhs).ok_or_else(|| WkbError::InvalidInput("singular coefficient system".into()))?;
        a.push(sol);
    }
    let a_list = a.into_iter().map(|v| Series::taylor(v[..nz].to_vec(), Some(nz as i64))).collect();
    Ok(BivariateSeries { a_list, nx, nz })
}

/// Largest coefficient of the PDE applied to `ψ`, over `x`-orders `≤ Nx`.
pub fn pde_residual<C: Coeff>(psi: &BivariateSeries<C>, f: &TaylorSeries<C>) -> f64 {
    let a = |k: i64| -> Series<C> {
        if k < 0 {
            Series::zero()
        } else {
            psi.a_list.get(k as usize).cloned().unwrap_or_else(Series::zero)
        }
    };
    let mut worst = 0.0f64;
    for n in 0..=psi.nx as i64 {
        let an = a(n);
        // (n−1)(n aₙ + 4z aₙ′) − 2(n−2)a′ₙ₋₁ + a″ₙ₋₂ − F aₙ₋₂
        let lead = (an.scale(&C::from_i64(n)) + an.derive().shift(ex(1, 1)).scale(&C::from_i64(4))).scale(&C::from_i64(n - 1));
        let r = lead - a(n - 1).derive().scale(&C::from_i64(2 * (n - 2))) + a(n - 2).derive().derive() - f * &a(n - 2);
        worst = worst.max(r.max_magnitude());
    }
    worst
}

/// Radius data for the convergence domain `D(0,r₁) × D(0,r′)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RadiusReport {
    pub r0: f64,
    pub r1: f64,
    pub d0: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub r_prime: f64,
    #[serde(rename = "M")]
    pub m: f64,
}

/// `r′ = min{(3r₁/2e)(−1 + √(1 + 4r₀d₀/(9e r₁²))), R}` and `M = ‖h‖ + (R/2)‖F‖`.
pub fn convergence_radius(r0: f64, r1: f64, big_r: f64, f_norm: f64, h_norm: f64) -> Result<RadiusReport> {
    if !(0.0 < r0 && r0 < r1) || !(big_r > 0.0) || !(f_norm >= 0.0) || !(h_norm >= 0.0) {
        return Err(WkbError::InvalidInput(format!(
            "need 0 < r0 < r1, R > 0, norms >= 0 (got r0={}, r1={}, R={})",
            r0, r1, big_r
        )));
    }
    let e = std::f64::consts::E;
    let d0 = r1 - r0;
    let formula = (3.0 * r1 / (2.0 * e)) * (-1.0 + (1.0 + 4.0 * r0 * d0 / (9.0 * e * r1 * r1)).sqrt());
    Ok(RadiusReport { r0, r1, d0, big_r, r_prime: formula.min(big_r), m: h_norm + 0.5 * big_r * f_norm })
}

/// `M·(e|x|(αₖ|x| + 3r₁)/(r₀d₀(1−s)))^k` with `αₖ = 1 + r₀d₀(1−s)‖F‖/k`.
#[allow(clippy::too_many_arguments)]
pub fn iteration_bound(k: u32, x_abs: f64, s: f64, m: f64, f_norm: f64, r0: f64, d0: f64, r1: f64) -> f64 {
    if k == 0 {
        return m;
    }
    let scale = r0 * d0 * (1.0 - s);
    let alpha = 1.0 + scale * f_norm / k as f64;
    m * (std::f64::consts::E * x_abs * (alpha * x_abs + 3.0 * r1) / scale).powi(k as i32)
}

/// `max |g|` on the circle `|z| = r` (equal to the sup on the disk).
pub fn disk_sup_norm<C: Coeff>(g: &TaylorSeries<C>, r: f64) -> Result<f64> {
    let samples = 512;
    let mut worst = 0.0f64;
    for k in 0..samples {
        let z = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * k as f64 / samples as f64);
        worst = worst.max(g.eval(Branched::principal(z))?.norm());
    }
    Ok(worst)
}

/// Value of `ψ` with truncation diagnostics.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct PsiValue {
    pub value: Complex64,
    /// `|a_{Nx}xᴺˣ| + |a_{Nx−1}x^{Nx−1}|`.
    pub tail_estimate: f64,
    /// Root-test estimate `max_{n ≥ Nx/2} |aₙ(z)|^{1/n}·|x|`.
    pub ratio: f64,
    /// Set when the ratio exceeds 1.
    pub diverging: bool,
}

fn root_ratio(coeffs: &[Complex64], x_abs: f64) -> f64 {
    let n = coeffs.len().saturating_sub(1);
    (n.div_ceil(2).max(1)..=n).map(|k| coeffs[k].norm().powf(1.0 / k as f64) * x_abs).fold(0.0, f64::max)
}

fn horner(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * x + c)
}

/// Evaluate `ψ(z, x)` from precomputed `aₙ(z)`.
pub fn psi_eval_coeffs(coeffs: &[Complex64], x: Complex64) -> PsiValue {
    let n = coeffs.len();
    let tail: f64 = coeffs.iter().enumerate().skip(n.saturating_sub(2)).map(|(k, c)| c.norm() * x.norm().powi(k as i32)).sum();
    let ratio = root_ratio(coeffs, x.norm());
    PsiValue { value: horner(coeffs, x), tail_estimate: tail, ratio, diverging: ratio > 1.0 }
}

pub fn psi_eval<C: Coeff>(psi: &BivariateSeries<C>, z: Complex64, x: Complex64) -> Result<PsiValue> {
    Ok(psi_eval_coeffs(&psi.coeffs_at(z)?, x))
}

/// Root-test radius in `x` at fixed `z` (infinite when the tail vanishes).
pub fn empirical_x_radius(coeffs: &[Complex64]) -> f64 {
    let r = root_ratio(coeffs, 1.0);
    if r == 0.0 {
        f64::INFINITY
    } else {
        1.0 / r
    }
}

/// Largest `|x|` at which the last two retained terms stay below `tol`.
fn truncation_radius(coeffs: &[Complex64], tol: f64) -> f64 {
    let n = coeffs.len();
    coeffs
        .iter()
        .enumerate()
        .skip(n.saturating_sub(2).max(1))
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(k, c)| (tol / c.norm()).powf(1.0 / k as f64))
        .fold(f64::INFINITY, f64::min)
}

/// `x`-radius used to clip contours: within half the root-test radius and
/// where the truncation tail is below `1e−15`.
pub fn default_x_radius(coeffs: &[Complex64]) -> f64 {
    truncation_radius(coeffs, 1e-15).min(0.5 * empirical_x_radius(coeffs))
}

/// Orders `(Nx, Nz)` used when [`confluent_eval`] builds `ψ` itself.
pub const CONFLUENT_ORDERS: (usize, usize) = (40, 40);

/// `∫_γ e^{−S(z,ẑ)/ε} ψ(z, z−ẑ²) dẑ` for a prebuilt `ψ`.
pub fn confluent_eval_with<C: Coeff>(psi: &BivariateSeries<C>, z: Complex64, eps: Complex64, spec: &ContourSpec) -> Result<LaplaceResult> {
    if !(eps.re > 0.0) {
        return Err(WkbError::InvalidInput(format!("Re eps must be positive, got {}", eps)));
    }
    if z.norm() == 0.0 {
        return Err(WkbError::InvalidInput("z = 0 is the turning point".into()));
    }
    let coeffs = psi.coeffs_at(z)?;
    let phase = airy_phase(z, eps)?;
    let trivial = coeffs.iter().skip(1).all(|c| c.norm() == 0.0) && coeffs[0] == Complex64::new(1.0, 0.0);
    let x_radius = spec.x_radius.unwrap_or_else(|| default_x_radius(&coeffs));
    let limit = 0.8 * x_radius;
    let domain = move |w: Complex64| (z - w * w).norm() <= limit;
    let amp_fn = |w: Complex64| horner(&coeffs, z - w * w);
    let amp = if trivial { Amplitude::Unit } else { Amplitude::Numeric(&amp_fn) };
    Ok(integrate(&phase, AIRY_VALLEYS, amp, spec, &domain)?.result)
}

/// Confluent solution for `(F, h)` with `ψ` built at [`CONFLUENT_ORDERS`].
pub fn confluent_eval<C: Coeff>(f: &TaylorSeries<C>, h: &TaylorSeries<C>, z: Complex64, eps: Complex64, spec: &ContourSpec) -> Result<LaplaceResult> {
    let psi = pde_taylor(f, h, CONFLUENT_ORDERS.0, CONFLUENT_ORDERS.1)?;
    confluent_eval_with(&psi, z, eps, spec)
}

/// Settings for [`local_decomposition`].
#[derive(Clone, Debug)]
pub struct DecompositionParams {
    /// ε-orders of the transport symbol.
    pub orders: usize,
    pub borel: BorelParams,
    pub psi_orders: (usize, usize),
    pub contour: ContourSpec,
}

impl Default for DecompositionParams {
    fn default() -> Self {
        DecompositionParams { orders: 24, borel: BorelParams::with_pade(12, 12), psi_orders: CONFLUENT_ORDERS, contour: ContourSpec::default() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionEntry {
    pub eps: Complex64,
    pub confluent: Complex64,
    pub predicted: Complex64,
    pub rel_error: f64,
    /// In `S₂`: error of the dominant term alone.
    pub one_term_rel_error: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub sector: Sector,
    pub convention: &'static str,
    pub entries: Vec<DecompositionEntry>,
}

impl DecompositionReport {
    pub fn max_rel_error(&self) -> f64 {
        self.entries.iter().map(|e| e.rel_error).fold(0.0, f64::max)
    }
}

/// Compare the confluent solution with Borel sums of the transport symbol:
/// `i√(πε)·s(Φ⁺)` in `S₁` (and `S₋₁`), `i√(πε)Φ⁺ − √(πε)Φ⁻` in `S₂`.
pub fn local_decomposition<C: Coeff>(
    f: &TaylorSeries<C>,
    h: &TaylorSeries<C>,
    z: Complex64,
    eps_grid: &[Complex64],
    sector: Sector,
    params: &DecompositionParams,
) -> Result<DecompositionReport> {
    let actual = classify_sector(z, 0.0)?;
    if actual != sector {
        return Err(WkbError::InvalidInput(format!("z = {} lies in {}, not {}", z, actual, sector)));
    }
    // continue arg z from S₁ across L₁ into S₂
    let arg = match sector {
        Sector::S2 => z.arg().rem_euclid(2.0 * std::f64::consts::PI),
        _ => z.arg(),
    };
    let zb = Branched::new(z.norm(), arg);
    let plus = transport_g(f, params.orders)?;
    let minus = plus.flip_eps();
    let psi = pde_taylor(f, h, params.psi_orders.0, params.psi_orders.1)?;
    let entries = eps_grid
        .par_iter()
        .map(|&eps| -> Result<DecompositionEntry> {
            let confluent = confluent_eval_with(&psi, z, eps, &params.contour)?.value;
            let k: Complex64 = contour_normalization(eps, ());
            let dominant = k * symbol_lateral_sum(&plus, zb, eps, 0.0, &params.borel)?.value;
            let (predicted, one_term) = match sector {
                Sector::S2 => {
                    // −√(πε) = i·(i√(πε))
                    let recessive = k * Complex64::i() * symbol_lateral_sum(&minus, zb, eps, 0.0, &params.borel)?.value;
                    (dominant + recessive, Some((confluent - dominant).norm() / confluent.norm()))
                }
                _ => (dominant, None),
            };
            Ok(DecompositionEntry { eps, confluent, predicted, rel_error: (confluent - predicted).norm() / confluent.norm(), one_term_rel_error: one_term })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DecompositionReport { sector, convention: SECTOR_CONVENTION, entries })
}

/// `(ψ − 1)/x` as coefficients of `x⁰, x¹, …` in `z`.
pub type XPoly<C> = Vec<Series<C>>;

fn xpoly_add<C: Coeff>(a: &mut XPoly<C>, n: usize, s: Series<C>) {
    if a.len() <= n {
        a.resize(n + 1, Series::zero());
    }
    a[n] = &a[n] + &s;
}

/// Map `Σ c_m zᵐ ↦ Σ c_m w(m) z^{m+shift}`.
fn weighted<C: Coeff>(s: &Series<C>, shift: i64, w: impl Fn(i64) -> Option<Exp>) -> Series<C> {
    let terms: Vec<(Exp, C)> = s
        .terms()
        .into_iter()
        .filter_map(|(e, c)| {
            let m = e.to_integer();
            w(m).map(|r| (ex(m + shift, 1), c.scale_ratio(r)))
        })
        .collect();
    Series::from_terms(terms, s.trunc_order().map(|t| t + shift)).expect("integer exponents")
}

/// Picard increments `δ₀ … δ_K` of the integral equation for `φ = (ψ − 1)/x`.
pub fn picard_increments<C: Coeff>(f: &TaylorSeries<C>, h: &TaylorSeries<C>, k_max: usize) -> Result<Vec<XPoly<C>>> {
    check_inputs(f, h)?;
    // θ₀ = h + x·Σ F_m zᵐ/(4m+2)
    let mut delta: XPoly<C> = vec![h.clone()];
    xpoly_add(&mut delta, 1, weighted(f, 0, |m| Some(Exp::new(1, 4 * m + 2))));
    let mut out = vec![delta];
    for _ in 0..k_max {
        let prev = out.last().unwrap();
        let mut next: XPoly<C> = Vec::new();
        for (n, d) in prev.iter().enumerate() {
            let n = n as i64;
            if d.is_zero() {
                continue;
            }
            // 2x∫u∂δ(zu⁴,ux) − ∫∫2∂δ: 2mn/((n+1)(4m+n−2)) z^{m−1}x^{n+1}
            xpoly_add(&mut next, (n + 1) as usize, weighted(d, -1, |m| (m >= 1).then(|| Exp::new(2 * m * n, (n + 1) * (4 * m + n - 2)))));
            // −∫∫t∂²δ: −m(m−1)/((n+2)(4m+n−5)) z^{m−2}x^{n+2}
            xpoly_add(&mut next, (n + 2) as usize, weighted(d, -2, |m| (m >= 2).then(|| Exp::new(-m * (m - 1), (n + 2) * (4 * m + n - 5)))));
            // +∫∫tFδ: 1/((n+2)(4m+n+3)) zᵐx^{n+2}
            let fd = f * d;
            xpoly_add(&mut next, (n + 2) as usize, weighted(&fd, 0, |m| Some(Exp::new(1, (n + 2) * (4 * m + n + 3)))));
        }
        out.push(next);
    }
    Ok(out)
}

/// One sample of the increment-bound comparison.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundSample {
    pub k: u32,
    pub x_abs: f64,
    pub s: f64,
    /// `sup |δₖ(z, x)|` over `|z| = r₀ + s d₀` and `|x| = x_abs`.
    pub empirical: f64,
    pub bound: f64,
}

impl BoundSample {
    pub fn ratio(&self) -> f64 {
        if self.bound == 0.0 {
            if self.empirical == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            self.empirical / self.bound
        }
    }
}

fn xpoly_eval<C: Coeff>(p: &XPoly<C>, z: Complex64, x: Complex64) -> Result<Complex64> {
    let vals: Vec<Complex64> = p.iter().map(|s| s.eval(Branched::principal(z))).collect::<Result<_>>()?;
    Ok(horner(&vals, x))
}

/// Compare Picard increments with [`iteration_bound`] on a `(k, |x|, s)` grid.
pub fn picard_bound_check<C: Coeff>(
    f: &TaylorSeries<C>,
    h: &TaylorSeries<C>,
    radius: &RadiusReport,
    f_norm: f64,
    k_max: usize,
    xs: &[f64],
    ss: &[f64],
) -> Result<Vec<BoundSample>> {
    let deltas = picard_increments(f, h, k_max)?;
    let (nz, nx) = (48, 8);
    let mut grid = Vec::new();
    for (k, d) in deltas.iter().enumerate() {
        for &x_abs in xs {
            for &s in ss {
                grid.push((k, d, x_abs, s));
            }
        }
    }
    grid.into_par_iter()
        .map(|(k, d, x_abs, s)| -> Result<BoundSample> {
            let rs = radius.r0 + s * radius.d0;
            let mut worst = 0.0f64;
            for iz in 0..nz {
                let z = Complex64::from_polar(rs, 2.0 * std::f64::consts::PI * iz as f64 / nz as f64);
                for ix in 0..nx {
                    let x = Complex64::from_polar(x_abs, 2.0 * std::f64::consts::PI * ix as f64 / nx as f64);
                    worst = worst.max(xpoly_eval(d, z, x)?.norm());
                }
            }
            let bound = iteration_bound(k as u32, x_abs, s, radius.m, f_norm, radius.r0, radius.d0, radius.r1);
            Ok(BoundSample { k: k as u32, x_abs, s, empirical: worst, bound })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::GaussRat;

    type S = PuiseuxSeries<GaussRat>;

    #[test]
    fn exponential_case() {
        let lam = GaussRat::ratio(3, 2);
        let psi = pde_taylor(&S::constant(lam.mul(&lam)), &S::constant(lam.clone()), 10, 6).unwrap();
        let mut want = GaussRat::one();
        for (n, a) in psi.a_list.iter().enumerate() {
            if n > 0 {
                want = want.mul(&lam).mul(&GaussRat::ratio(1, n as i64));
            }
            assert_eq!(a.coeff(ex(0, 1)), want);
            assert_eq!(a.terms().len(), 1);
        }
    }

    #[test]
    fn routes_agree() {
        let f = S::poly_i64(&[1, -2, 3]);
        let h = S::poly_i64(&[0, 5]);
        let a = pde_taylor(&f, &h, 8, 8).unwrap();
        let b = pde_taylor_direct(&f, &h, 8, 8).unwrap();
        assert_eq!(a, b);
        assert_eq!(pde_residual(&pde_taylor(&f, &h, 8, 30).unwrap(), &f), 0.0);
    }

    #[test]
    fn constant_psi_residual() {
        let one = BivariateSeries { a_list: vec![S::one(), S::zero(), S::zero()], nx: 2, nz: 4 };
        assert_eq!(pde_residual(&one, &S::zero()), 0.0);
        assert_eq!(pde_residual(&one, &S::one()), 1.0);
    }

    #[test]
    fn picard_sums_to_series() {
        let f = S::poly_i64(&[2, 1, -1]);
        let h = S::poly_i64(&[1, 3]);
        let k = 6;
        let deltas = picard_increments(&f, &h, k).unwrap();
        let psi = pde_taylor(&f, &h, k + 1, 40).unwrap();
        for n in 0..=k {
            let sum = deltas.iter().fold(S::zero(), |acc, d| acc + d.get(n).cloned().unwrap_or_else(S::zero));
            assert_eq!(sum.truncate(ex(40, 1)), psi.a_list[n + 1], "x^{}", n);
        }
    }

    #[test]
    fn radius_formula() {
        let r = convergence_radius(1.0, 2.0, 10.0, 0.0, 0.0).unwrap();
        let e = std::f64::consts::E;
        assert!((r.r_prime - (3.0 / e) * (-1.0 + (1.0 + 1.0 / (9.0 * e)).sqrt())).abs() < 1e-15);
        assert_eq!(r.m, 0.0);
        assert_eq!(convergence_radius(1.0, 2.0, 0.01, 1.0, 1.0).unwrap().r_prime, 0.01);
        assert!(convergence_radius(2.0, 1.0, 1.0, 0.0, 0.0).is_err());
    }
}
