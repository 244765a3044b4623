//! Formal WKB solutions of `Φ″ − (z/ε²)Φ = FΦ` for analytic `F`.
//!
//! Two routes to the same symbol: the transport recursion for
//! `gₙ`, and the Riccati expansion `P = Σ pₙεⁿ` of `−εΦ′/Φ`. The consistency
//! check rebuilds the symbol from the even part of `P` and compares.

use num_complex::Complex64;
use serde::Serialize;

use crate::borel::{borel_pade_sum, BorelParams, LaplaceResult};
use crate::branch::Branched;
use crate::coeff::Coeff;
use crate::error::{Result, WkbError};
use crate::series::{ex, PuiseuxSeries, TaylorSeries};
use crate::symbol::{prefactor, EpsSeries, WkbSymbol};

type Series<C> = PuiseuxSeries<C>;

fn check_potential<C: Coeff>(f: &TaylorSeries<C>) -> Result<()> {
    f.ensure_taylor()
}

/// Elementary symbol `Φ⁺ = e^{−(2/3)z^{3/2}/ε} z^{−1/4} Σ gₙεⁿ` through `ε^N`.
pub fn transport_g<C: Coeff>(f: &TaylorSeries<C>, n: usize) -> Result<WkbSymbol<C>> {
    check_potential(f)?;
    if n == 0 {
        return Err(WkbError::InvalidInput("transport needs N >= 1".into()));
    }
    let inv_lead = Series::<C>::monomial(C::one(), ex(-5, 2)).scale_ratio(ex(1, 32));
    // 16z²F − 5
    let weight = f.shift(ex(2, 1)).scale_ratio(ex(16, 1)) - Series::constant(C::from_i64(5));
    let mut g: Vec<Series<C>> = vec![Series::one()];
    for k in 0..n {
        let gk = &g[k];
        // 32 z^{5/2} g_{k+1}′ = 16 z² g_k″ − 8 z g_k′ − (16 z² F − 5) g_k
        let rhs = gk.derive().derive().shift(ex(2, 1)).scale_ratio(ex(16, 1))
            - gk.derive().shift(ex(1, 1)).scale_ratio(ex(8, 1))
            - &weight * gk;
        let next = (&rhs * &inv_lead).antiderive().map_err(|e| match e {
            WkbError::LogObstruction { coefficient } => WkbError::LogObstruction {
                coefficient: format!("{} at order {}", coefficient, k + 1),
            },
            other => other,
        })?;
        g.push(next);
    }
    Ok(WkbSymbol { sign: 1, prefactor_exp: ex(-1, 4), eps: EpsSeries::new(g) })
}

/// Coefficients `p₀ … p_N` of the Riccati solution `P(z, ε)`.
#[derive(Clone, Debug, PartialEq)]
pub struct RiccatiExpansion<C: Coeff> {
    pub p_coeffs: Vec<PuiseuxSeries<C>>,
}

impl<C: Coeff> RiccatiExpansion<C> {
    /// `Σ_{k even} p_k ε^k` as an ε-series of the same length.
    pub fn even(&self) -> EpsSeries<C> {
        self.part(0)
    }

    pub fn odd(&self) -> EpsSeries<C> {
        self.part(1)
    }

    fn part(&self, parity: usize) -> EpsSeries<C> {
        EpsSeries::new(
            self.p_coeffs
                .iter()
                .enumerate()
                .map(|(k, p)| if k % 2 == parity { p.clone() } else { Series::zero() })
                .collect(),
        )
    }

    /// Grading `min_exp(pₙ) ≥ −(3n−1)/2` for `n ≥ 1`.
    pub fn is_graded(&self) -> bool {
        self.p_coeffs
            .iter()
            .enumerate()
            .skip(1)
            .all(|(n, p)| p.is_zero() || p.min_exp() >= ex(1 - 3 * n as i64, 2))
    }
}

/// Riccati recursion `2p₀pₙ₊₁ = pₙ′ − Σ_{1≤j≤n} pⱼpₙ₊₁₋ⱼ` (plus `F` at `n = 1`).
pub fn riccati_p<C: Coeff>(f: &TaylorSeries<C>, n: usize) -> Result<RiccatiExpansion<C>> {
    check_potential(f)?;
    let mut p: Vec<Series<C>> = vec![Series::monomial(C::one(), ex(1, 2))];
    if n >= 1 {
        p.push(Series::monomial(C::from_ratio(ex(1, 4)), ex(-1, 1)));
    }
    // 1/(2p₀)
    let half_inv = Series::<C>::monomial(C::from_ratio(ex(1, 2)), ex(-1, 2));
    for k in 1..n {
        let mut rhs = p[k].derive();
        for j in 1..=k {
            rhs = rhs - &p[j] * &p[k + 1 - j];
        }
        if k == 1 {
            rhs = rhs + f.clone();
        }
        p.push(&rhs * &half_inv);
    }
    Ok(RiccatiExpansion { p_coeffs: p })
}

/// Outcome of [`symbol_consistency`].
#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    /// ε-orders compared.
    pub orders: usize,
    /// Largest coefficient of `P_odd − (ε/2)P_even′/P_even`.
    pub parity_residual: f64,
    /// Largest coefficient of `C(ε)·Q − Σgₙεⁿ` once `C(ε)` is fixed.
    pub symbol_residual: f64,
    /// Magnitudes of `C₀ … C_N` (the matching constants).
    pub c_eps: Vec<f64>,
}

/// Cross-check the transport symbol against the Riccati representation.
pub fn symbol_consistency<C: Coeff>(f: &TaylorSeries<C>, n: usize) -> Result<ConsistencyReport> {
    if n == 0 {
        return Ok(ConsistencyReport { orders: 0, parity_residual: 0.0, symbol_residual: 0.0, c_eps: Vec::new() });
    }
    let len = n + 1;
    let ric = riccati_p(f, n)?;
    let even = ric.even();
    let odd = ric.odd();

    // (ε/2)·P_even′/P_even
    let ratio = even.derive_z().mul(&even.inv()?);
    let predicted_odd = ratio.shift_eps(1).scale(&C::from_ratio(ex(1, 2))).truncated(len);
    let parity_residual = odd.sub(&predicted_odd).max_magnitude();

    // X = −(1/ε)∫(P_even − p₀): the p₀ part is the exponential prefactor
    let mut x = vec![Series::zero(); len];
    for k in (2..len).step_by(2) {
        x[k - 1] = ric.p_coeffs[k].antiderive()?.neg_series();
    }
    let x = EpsSeries::new(x);
    // P_even/p₀ = 1 + Σ ε^{2k} p_{2k}/p₀
    let p0_inv = Series::<C>::monomial(C::one(), ex(-1, 2));
    let unit = even.mul_z(&p0_inv);
    let q = x.exp()?.mul(&unit.pow_unit(ex(-1, 2))?);

    let g = transport_g(f, n)?;
    let zero = ex(0, 1);
    let mut c: Vec<C> = Vec::with_capacity(len);
    let mut worst = 0.0f64;
    for k in 0..len {
        let mut acc = Series::zero();
        for (j, cj) in c.iter().enumerate() {
            acc = acc + q.get(k - j).scale(cj);
        }
        // q₀ = 1, so the new constant only moves the z⁰ coefficient
        let ck = g.coeff(k).coeff(zero).sub(&acc.coeff(zero));
        acc = acc + q.get(0).scale(&ck);
        c.push(ck);
        worst = worst.max((&g.coeff(k) - &acc).max_magnitude());
    }
    Ok(ConsistencyReport {
        orders: len,
        parity_residual,
        symbol_residual: worst,
        c_eps: c.iter().map(|x| x.magnitude()).collect(),
    })
}

/// Coefficients of `ε^{−1} … ε^{N−1}` in `e^{…}z^{1/4}·(Φ″ − (z/ε²)Φ − FΦ)`.
///
/// After the prefactor is stripped this is
/// `G″ − G′/(2z) + (5/(16z²) − F)G − 2σz^{1/2}G′/ε`.
pub fn wkb_residual<C: Coeff>(sym: &WkbSymbol<C>, f: &TaylorSeries<C>) -> Vec<PuiseuxSeries<C>> {
    let sigma = C::from_i64(sym.sign as i64);
    let root = Series::<C>::monomial(C::from_i64(2).mul(&sigma), ex(1, 2));
    let half_inv_z = Series::<C>::monomial(C::from_ratio(ex(1, 2)), ex(-1, 1));
    let pot = Series::<C>::monomial(C::from_ratio(ex(5, 16)), ex(-2, 1)) - f.clone();
    let len = sym.order();
    let mut out = vec![-(&root * &sym.coeff(0).derive())];
    for k in 0..len.saturating_sub(1) {
        let gk = sym.coeff(k);
        let dg = gk.derive();
        out.push(dg.derive() - &half_inv_z * &dg + &pot * &gk - &root * &sym.coeff(k + 1).derive());
    }
    out
}

/// Borel–Padé sum of a symbol along the ξ-ray of angle `phi`, times its prefactor.
pub fn symbol_lateral_sum<C: Coeff>(
    sym: &WkbSymbol<C>,
    z: Branched,
    eps: Complex64,
    phi: f64,
    params: &BorelParams,
) -> Result<LaplaceResult> {
    if !(eps.re > 0.0) {
        return Err(WkbError::InvalidInput(format!("Re eps must be positive, got {}", eps)));
    }
    let g = sym.eps.eval_coeffs(z)?;
    let sum = borel_pade_sum(&g, eps, phi, params)?;
    let pre = prefactor(sym.sign, sym.prefactor_exp, z, eps);
    Ok(LaplaceResult { value: sum.value * pre, est_error: sum.est_error * pre.norm(), nodes_used: sum.nodes_used, extended: None })
}
