//! Reduction of Schrödinger potentials to the canonical equation and from
//! there to Airy.
//!
//! `ε²Y″ = V(q)Y` with a simple turning point at 0 is mapped by the
//! Liouville change `z(q)` onto `ε²Φ″ = (z + ε²F)Φ`. A second, ε-dependent
//! change `s(z, ε) = z + Σ sₖεᵏ` with `Φ = (∂s/∂z)^{−1/2} y(s)` turns that
//! into the Airy equation; `s` solves
//! `s(s′)² − (ε²/2){s,z} = z + ε²F`.

use serde::Serialize;

use crate::coeff::Coeff;
use crate::error::{Result, WkbError};
use crate::series::{ex, Exp, PuiseuxSeries, TaylorSeries};
use crate::symbol::{EpsSeries, WkbSymbol};

type Series<C> = PuiseuxSeries<C>;

fn int(k: i64) -> Exp {
    Exp::from_integer(k)
}

fn check_normalized<C: Coeff>(v: &TaylorSeries<C>) -> Result<()> {
    v.ensure_taylor()?;
    if !v.coeff(int(0)).is_zero() || v.coeff(int(1)) != C::one() {
        return Err(WkbError::NotSimpleTurningPoint);
    }
    Ok(())
}

/// Liouville map `z(q) = ((3/2)∫₀^q √V)^{2/3}`, known through `q^N`.
pub fn liouville_map<C: Coeff>(v: &TaylorSeries<C>, n: usize) -> Result<TaylorSeries<C>> {
    check_normalized(v)?;
    let top = int(n as i64 + 1);
    // V = q·(1 + …); keep one extra order so the 2/3 power is known through q^N
    let vt = v.truncate(top + 1);
    let w = vt.pow_rational(ex(1, 2))?.antiderive()?.scale_ratio(ex(3, 2));
    Ok(w.pow_rational(ex(2, 3))?.truncate(top))
}

/// `{f, z} = f‴/f′ − (3/2)(f″/f′)²`, known below `z^order`.
pub fn schwarzian<C: Coeff>(f: &TaylorSeries<C>, order: i64) -> Result<TaylorSeries<C>> {
    let d1 = f.derive();
    let d2 = d1.derive();
    let d3 = d2.derive();
    let top = int(order);
    let inv = d1.inv_to(top)?;
    let t = (&d2 * &inv).truncate(top);
    Ok(((&d3 * &inv) - (&t * &t).scale_ratio(ex(3, 2))).truncate(top))
}

/// Induced potential `F(z) = (z/2V(q))·{z,q}` at `q = q(z)`, known through `z^N`.
pub fn induced_potential_f<C: Coeff>(v: &TaylorSeries<C>, n: usize) -> Result<TaylorSeries<C>> {
    check_normalized(v)?;
    let n = n as i64;
    let top = int(n + 1);
    let zq = liouville_map(v, n as usize + 3)?;
    let schw = schwarzian(&zq, n + 1)?;
    // z/V = (z/q)/(V/q), both units
    let z_over_q = zq.shift(int(-1));
    let v_over_q = v.truncate(int(n + 3)).shift(int(-1));
    let ratio = (&z_over_q * &v_over_q.inv_to(top)?).truncate(top).scale_ratio(ex(1, 2));
    let g = (&ratio * &schw).truncate(top);
    let qz = zq.compose_invert(n + 1)?;
    Ok(g.compose(&qz)?.truncate(top))
}

/// `s(z, ε) = Σ sₖ(z)εᵏ` with `s₀ = z`.
#[derive(Clone, PartialEq)]
pub struct ReductionSeries<C> {
    pub s_coeffs: Vec<TaylorSeries<C>>,
}

impl<C: Coeff> std::fmt::Debug for ReductionSeries<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.s_coeffs.iter()).finish()
    }
}

impl<C: Coeff> ReductionSeries<C> {
    pub fn eps(&self) -> EpsSeries<C> {
        EpsSeries::new(self.s_coeffs.clone())
    }

    pub fn coeff(&self, k: usize) -> TaylorSeries<C> {
        self.s_coeffs.get(k).cloned().unwrap_or_else(Series::zero)
    }
}

/// `s(s′)² − (ε²/2){s,·}` for an ε-series whose `ε⁰` term has derivative 1.
fn master_lhs<C: Coeff>(s: &EpsSeries<C>) -> Result<EpsSeries<C>> {
    let d1 = s.derive_z();
    let d2 = d1.derive_z();
    let d3 = d2.derive_z();
    let inv = d1.inv()?;
    let t = d2.mul(&inv);
    let schw = d3.mul(&inv).sub(&t.mul(&t).scale(&C::from_ratio(ex(3, 2))));
    let len = s.len();
    let half = C::from_ratio(ex(-1, 2));
    Ok(s.mul(&d1).mul(&d1).add(&schw.scale(&half).shift_eps(2).truncated(len)))
}

fn canonical_rhs<C: Coeff>(f: &TaylorSeries<C>, len: usize) -> EpsSeries<C> {
    let mut c = vec![Series::zero(); len];
    c[0] = Series::z();
    if len > 2 {
        c[2] = f.clone();
    }
    EpsSeries::new(c)
}

/// Solve `2z y′ + y = r` in Taylor series: `(2m+1)c_m = r_m`.
fn solve_transport_linear<C: Coeff>(r: &Series<C>, order: usize) -> Result<Series<C>> {
    let mut terms = Vec::new();
    for (e, c) in r.terms() {
        if !e.is_integer() || e < int(0) {
            return Err(WkbError::LogObstruction {
                coefficient: format!("resonant z^{} term at order {}", e, order),
            });
        }
        terms.push((e, c.scale_ratio((e * 2 + 1).recip())));
    }
    Series::from_terms(terms, r.trunc_order())
}

/// Order-by-order solution of the master relation through `ε^{N_eps}`,
/// each `sₖ` kept through `z^{N_z}`.
pub fn reduce_to_airy<C: Coeff>(f: &TaylorSeries<C>, n_eps: usize, n_z: usize) -> Result<ReductionSeries<C>> {
    f.ensure_taylor()?;
    let len = n_eps + 1;
    // each order costs up to three derivatives of earlier terms
    let window = int((n_z + 3 * n_eps + 3) as i64);
    let fw = if f.is_exact() { f.clone() } else { f.truncate(window) };
    let mut s = vec![Series::zero(); len];
    s[0] = Series::z();
    for k in 1..len {
        let cur = EpsSeries::new(s[..=k].to_vec());
        let res = master_lhs(&cur)?.sub(&canonical_rhs(&fw, k + 1));
        // linear part in sₖ at order k: 2z sₖ′ + sₖ
        let sk = solve_transport_linear(&res.get(k).neg_series(), k)?;
        if k % 2 == 1 && !sk.is_zero() {
            return Err(WkbError::HolomorphyViolation { order: k, detail: format!("odd term s_{} = {:?}", k, sk) });
        }
        s[k] = sk;
    }
    let top = int(n_z as i64 + 1);
    Ok(ReductionSeries { s_coeffs: s.into_iter().map(|c| c.truncate(top)).collect() })
}

/// Largest coefficient of `s(s′)² − (ε²/2){s,z} − z − ε²F` on retained orders.
pub fn master_residual<C: Coeff>(red: &ReductionSeries<C>, f: &TaylorSeries<C>, n_z: usize) -> Result<f64> {
    let top = int(n_z as i64 + 1);
    let len = red.s_coeffs.len();
    let res = master_lhs(&red.eps())?.sub(&canonical_rhs(f, len));
    Ok(res.coeffs.iter().map(|c| c.truncate(top).max_magnitude()).fold(0.0, f64::max))
}

/// `Φ = a·A + b·ε∂A` with `a`, `b` formal in ε and holomorphic in `z`.
#[derive(Clone, PartialEq, Serialize)]
pub struct BasisDecomposition<C> {
    #[serde(skip)]
    pub a_coeffs: Vec<PuiseuxSeries<C>>,
    #[serde(skip)]
    pub b_coeffs: Vec<PuiseuxSeries<C>>,
    /// `max |aₖ|, max |bₖ|` per order: recorded, not asserted.
    pub growth: Vec<(f64, f64)>,
}

impl<C: Coeff> std::fmt::Debug for BasisDecomposition<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BasisDecomposition").field("a", &self.a_coeffs).field("b", &self.b_coeffs).finish()
    }
}

/// Prefactor-stripped parts of `A⁺` and `ε∂A⁺` through `ε^N`, over `C`.
fn airy_pair<C: Coeff>(n: usize) -> (EpsSeries<C>, EpsSeries<C>) {
    let mut alpha = vec![Series::<C>::one()];
    let mut c = C::one();
    for k in 1..=n as i64 {
        c = c.mul(&C::from_ratio(ex((6 * k - 5) * (6 * k - 1) * -3, 144 * k)));
        alpha.push(Series::monomial(c.clone(), ex(-3 * k, 2)));
    }
    let a = EpsSeries::new(alpha);
    // ε d/dz of e^{−(2/3)z^{3/2}/ε} z^{−1/4} A  →  −z^{1/2}A + ε(A′ − A/(4z))
    let root = Series::<C>::monomial(C::one().neg(), ex(1, 2));
    let quarter = Series::<C>::monomial(C::from_ratio(ex(-1, 4)), int(-1));
    let corr = a.derive_z().add(&a.mul_z(&quarter));
    let b = a.mul_z(&root).add(&corr.shift_eps(1).truncated(n + 1));
    (a, b)
}

fn split_lattice<C: Coeff>(r: &Series<C>) -> (Series<C>, Series<C>) {
    let (mut whole, mut half) = (Vec::new(), Vec::new());
    for (e, c) in r.terms() {
        if e.is_integer() {
            whole.push((e, c));
        } else {
            half.push((e, c));
        }
    }
    let t = r.trunc_order();
    (Series::from_terms(whole, t).unwrap(), Series::from_terms(half, t).unwrap())
}

/// Solve `Φ = a·A + b·ε∂A` order by order.
///
/// At order k the unknowns enter only through `aₖ·1 − bₖ·z^{1/2}`; the two
/// terms live on the integer and half-integer lattices respectively, which
/// splits the residual uniquely. Holomorphy of every `aₖ`, `bₖ` is checked.
pub fn airy_basis_decomposition<C: Coeff>(phi: &WkbSymbol<C>, n: usize) -> Result<BasisDecomposition<C>> {
    if phi.sign != 1 || phi.prefactor_exp != ex(-1, 4) {
        return Err(WkbError::InvalidInput("decomposition needs a symbol with the A+ prefactor".into()));
    }
    if n >= phi.order() {
        return Err(WkbError::InvalidInput(format!("symbol has {} orders, asked for {}", phi.order(), n + 1)));
    }
    let (big_a, big_b) = airy_pair::<C>(n);
    let neg_root_inv = Series::<C>::monomial(C::one().neg(), ex(-1, 2));
    let mut a: Vec<Series<C>> = Vec::with_capacity(n + 1);
    let mut b: Vec<Series<C>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut r = phi.coeff(k);
        for j in 0..k {
            r = r - &a[j] * &big_a.get(k - j) - &b[j] * &big_b.get(k - j);
        }
        let (whole, half) = split_lattice(&r);
        let bk = &half * &neg_root_inv;
        for (name, c) in [("a", &whole), ("b", &bk)] {
            if !c.is_holomorphic() {
                return Err(WkbError::HolomorphyViolation { order: k, detail: format!("{}_{} = {:?}", name, k, c) });
            }
        }
        a.push(whole);
        b.push(bk);
    }
    let growth = a.iter().zip(&b).map(|(x, y)| (x.max_magnitude(), y.max_magnitude())).collect();
    Ok(BasisDecomposition { a_coeffs: a, b_coeffs: b, growth })
}

impl<C: Coeff> BasisDecomposition<C> {
    /// `a·A + b·ε∂A` with the prefactor stripped.
    pub fn reconstruct(&self) -> EpsSeries<C> {
        let n = self.a_coeffs.len().saturating_sub(1);
        let (big_a, big_b) = airy_pair::<C>(n);
        EpsSeries::new(self.a_coeffs.clone()).mul(&big_a).add(&EpsSeries::new(self.b_coeffs.clone()).mul(&big_b))
    }
}

/// Output of [`schrodinger_pipeline`].
#[derive(Clone, Debug)]
pub struct PipelineOutcome<C: Coeff> {
    pub z_map: TaylorSeries<C>,
    pub f: TaylorSeries<C>,
    pub canonical: ReductionSeries<C>,
    /// `s(q, ε) = s_canonical(z(q), ε)`.
    pub composed: ReductionSeries<C>,
    /// Largest coefficient of `s(∂_q s)² − (ε²/2){s,q} − V` on retained orders.
    pub residual: f64,
}

/// Liouville map, induced potential and reduction, composed back to `q`.
pub fn schrodinger_pipeline<C: Coeff>(v: &TaylorSeries<C>, n: usize) -> Result<PipelineOutcome<C>> {
    check_normalized(v)?;
    let n_z = n;
    let n_eps = n;
    // the composed residual differentiates three times per order
    let work = n_z + 3 * n_eps + 3;
    let z_map = liouville_map(v, work)?;
    let f = induced_potential_f(v, work)?;
    let canonical = reduce_to_airy(&f, n_eps, work - 3 * n_eps)?;
    let composed: Vec<Series<C>> = canonical
        .s_coeffs
        .iter()
        .map(|s| s.compose(&z_map))
        .collect::<Result<_>>()?;
    let top = int(n_z as i64 + 1);
    let lhs = master_lhs(&EpsSeries::new(composed.clone()))?;
    let mut target = vec![Series::zero(); lhs.len()];
    target[0] = v.clone();
    let residual = lhs
        .sub(&EpsSeries::new(target))
        .coeffs
        .iter()
        .map(|c| c.truncate(top).max_magnitude())
        .fold(0.0, f64::max);
    let cut = |r: &ReductionSeries<C>| ReductionSeries { s_coeffs: r.s_coeffs.iter().map(|c| c.truncate(top)).collect() };
    Ok(PipelineOutcome {
        z_map: z_map.truncate(top),
        f: f.truncate(top),
        canonical: cut(&canonical),
        composed: ReductionSeries { s_coeffs: composed.iter().map(|c| c.truncate(top)).collect() },
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{GaussRat, MPoly};
    use crate::transport::transport_g;
    use num_rational::BigRational;

    type S = PuiseuxSeries<GaussRat>;

    fn g(n: i64, d: i64) -> GaussRat {
        GaussRat::ratio(n, d)
    }

    #[test]
    fn liouville_quadratic() {
        let z = liouville_map(&S::poly_i64(&[0, 1, 1]), 3).unwrap();
        assert_eq!(z.coeff(int(1)), g(1, 1));
        assert_eq!(z.coeff(int(2)), g(1, 5));
        assert_eq!(z.coeff(int(3)), g(-8, 175));
        assert!(matches!(liouville_map(&S::poly_i64(&[0, 2]), 3), Err(WkbError::NotSimpleTurningPoint)));
    }

    #[test]
    fn induced_f_symbolic() {
        let one = MPoly::constant(BigRational::from_integer(1.into()));
        let v = PuiseuxSeries::taylor(vec![MPoly::zero(), one, MPoly::var(0), MPoly::var(1)], None);
        let f = induced_potential_f(&v, 1).unwrap();
        let want = MPoly::var(1)
            .scale_ratio(ex(3, 7))
            .sub(&MPoly::var(0).mul(&MPoly::var(0)).scale_ratio(ex(9, 35)));
        assert_eq!(f.coeff(int(0)), want);
    }

    #[test]
    fn schwarzian_chain_rule() {
        let z = liouville_map(&S::poly_i64(&[0, 1, 3, -1]), 10).unwrap();
        let q = z.compose_invert(10).unwrap();
        let lhs = schwarzian(&z, 6).unwrap();
        let zq_prime = z.derive();
        let rhs = schwarzian(&q, 9).unwrap().compose(&z).unwrap() * (&zq_prime * &zq_prime);
        assert!((lhs + rhs).truncate(int(6)).is_zero());
    }

    #[test]
    fn constant_and_linear_f() {
        let c = g(3, 4);
        let red = reduce_to_airy(&S::constant(c.clone()), 6, 5).unwrap();
        assert_eq!(red.coeff(2), S::constant(c.clone()).truncate(int(6)));
        for k in [1, 3, 4, 5, 6] {
            assert!(red.coeff(k).is_zero());
        }
        let lam2 = g(2, 1);
        let f = S::monomial(lam2, int(1));
        let red = reduce_to_airy(&f, 4, 6).unwrap();
        assert_eq!(red.coeff(2).coeff(int(1)), g(2, 3));
        assert_eq!(master_residual(&red, &f, 6).unwrap(), 0.0);
    }

    #[test]
    fn decomposition_basics() {
        let (a, b) = airy_pair::<GaussRat>(5);
        let pa = WkbSymbol { sign: 1, prefactor_exp: ex(-1, 4), eps: a };
        let d = airy_basis_decomposition(&pa, 5).unwrap();
        assert_eq!(d.a_coeffs[0], S::one());
        assert!(d.a_coeffs[1..].iter().chain(&d.b_coeffs).all(|c| c.is_zero()));
        let pb = WkbSymbol { sign: 1, prefactor_exp: ex(-1, 4), eps: b };
        let d = airy_basis_decomposition(&pb, 5).unwrap();
        assert_eq!(d.b_coeffs[0], S::one());
        assert!(d.b_coeffs[1..].iter().chain(&d.a_coeffs).all(|c| c.is_zero()));

        let phi = transport_g(&S::constant(g(1, 3)), 6).unwrap();
        let d = airy_basis_decomposition(&phi, 6).unwrap();
        assert_eq!(d.a_coeffs[0].coeff(int(0)), g(1, 1));
        assert!(d.b_coeffs[0].is_zero());
        assert_eq!(d.reconstruct(), phi.eps);
    }

    #[test]
    fn pipeline_fig_potential() {
        let v = S::taylor(vec![g(0, 1), g(1, 1), g(1, 2)], None);
        let out = schrodinger_pipeline(&v, 4).unwrap();
        assert_eq!(out.f.coeff(int(0)), g(-9, 140));
        assert_eq!(out.composed.coeff(2).coeff(int(0)), g(-9, 140));
        assert_eq!(out.residual, 0.0);
    }
}
