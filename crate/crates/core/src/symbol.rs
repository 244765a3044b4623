//! Formal series in `ε` with Puiseux coefficients in `z`, and WKB symbols
//! built on them.

use num_complex::Complex64;

use crate::branch::Branched;
use crate::coeff::Coeff;
use crate::error::{Result, WkbError};
use crate::series::{ex, Exp, PuiseuxSeries};

/// `Σ_{k<len} c_k(z) ε^k + O(ε^len)`.
#[derive(Clone, PartialEq)]
pub struct EpsSeries<C> {
    pub coeffs: Vec<PuiseuxSeries<C>>,
}

impl<C: Coeff> EpsSeries<C> {
    pub fn new(coeffs: Vec<PuiseuxSeries<C>>) -> Self {
        EpsSeries { coeffs }
    }

    pub fn zeros(len: usize) -> Self {
        EpsSeries { coeffs: vec![PuiseuxSeries::zero(); len] }
    }

    /// Known orders (`ε^0 … ε^{len−1}`).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, k: usize) -> PuiseuxSeries<C> {
        self.coeffs.get(k).cloned().unwrap_or_else(PuiseuxSeries::zero)
    }

    pub fn truncated(&self, len: usize) -> Self {
        EpsSeries { coeffs: self.coeffs.iter().take(len).cloned().collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.len().min(o.len());
        EpsSeries { coeffs: (0..n).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.len().min(o.len());
        EpsSeries { coeffs: (0..n).map(|k| &self.coeffs[k] - &o.coeffs[k]).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.len().min(o.len());
        let coeffs = (0..n)
            .map(|k| {
                (0..=k).fold(PuiseuxSeries::zero(), |acc, j| acc + &self.coeffs[j] * &o.coeffs[k - j])
            })
            .collect();
        EpsSeries { coeffs }
    }

    /// Multiply every coefficient by a series in `z`.
    pub fn mul_z(&self, s: &PuiseuxSeries<C>) -> Self {
        EpsSeries { coeffs: self.coeffs.iter().map(|c| c * s).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        EpsSeries { coeffs: self.coeffs.iter().map(|x| x.scale(c)).collect() }
    }

    /// Multiply by `ε^k`; the known window grows by `k`.
    pub fn shift_eps(&self, k: usize) -> Self {
        let mut coeffs = vec![PuiseuxSeries::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        EpsSeries { coeffs }
    }

    /// `ε ↦ −ε`.
    pub fn flip(&self) -> Self {
        let m1 = C::one().neg();
        EpsSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { c.scale(&m1) } else { c.clone() })
                .collect(),
        }
    }

    pub fn derive_z(&self) -> Self {
        EpsSeries { coeffs: self.coeffs.iter().map(|c| c.derive()).collect() }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_empty() {
            return Ok(self.clone());
        }
        let b0 = self.coeffs[0].inv()?;
        let mut b = vec![b0.clone()];
        for k in 1..self.len() {
            let s = (1..=k).fold(PuiseuxSeries::zero(), |acc, j| acc + &self.coeffs[j] * &b[k - j]);
            b.push(-(&s * &b0));
        }
        Ok(EpsSeries { coeffs: b })
    }

    /// `exp(X)` for `X` with vanishing `ε^0` term.
    pub fn exp(&self) -> Result<Self> {
        if self.coeffs.first().is_some_and(|c| !c.is_zero()) {
            return Err(WkbError::InvalidInput("exp of a series with nonzero constant term".into()));
        }
        let mut e = vec![PuiseuxSeries::one()];
        for k in 1..self.len() {
            let s = (1..=k).fold(PuiseuxSeries::zero(), |acc, j| {
                acc + (&self.coeffs[j] * &e[k - j]).scale_ratio(ex(j as i64, 1))
            });
            e.push(s.scale_ratio(ex(1, k as i64)));
        }
        Ok(EpsSeries { coeffs: e })
    }

    /// `(1 + Y)^r` where `self = 1 + Y` and `Y` has no `ε^0` term.
    pub fn pow_unit(&self, r: Exp) -> Result<Self> {
        if self.is_empty() {
            return Ok(self.clone());
        }
        if self.coeffs[0] != PuiseuxSeries::one() {
            return Err(WkbError::InvalidInput("pow_unit needs leading term 1".into()));
        }
        let mut b = vec![PuiseuxSeries::one()];
        for k in 1..self.len() {
            let mut s = PuiseuxSeries::zero();
            for j in 1..=k {
                let w = (r + 1) * Exp::from_integer(j as i64) - Exp::from_integer(k as i64);
                if w != Exp::from_integer(0) {
                    s = s + (&self.coeffs[j] * &b[k - j]).scale_ratio(w);
                }
            }
            b.push(s.scale_ratio(ex(1, k as i64)));
        }
        Ok(EpsSeries { coeffs: b })
    }

    /// Largest coefficient magnitude over all orders.
    pub fn max_magnitude(&self) -> f64 {
        self.coeffs.iter().map(|c| c.max_magnitude()).fold(0.0, f64::max)
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D + Copy) -> EpsSeries<D> {
        EpsSeries { coeffs: self.coeffs.iter().map(|c| c.map_coeffs(f)).collect() }
    }

    /// Numeric coefficients `c_k(z)` at a branched point.
    pub fn eval_coeffs(&self, z: Branched) -> Result<Vec<Complex64>> {
        self.coeffs.iter().map(|c| c.eval(z)).collect()
    }
}

/// `exp(−σ·(2/3)z^{3/2}/ε) · z^{p} · Σ g_n(z) εⁿ`.
#[derive(Clone, PartialEq)]
pub struct WkbSymbol<C> {
    /// `σ = ±1`.
    pub sign: i8,
    pub prefactor_exp: Exp,
    pub eps: EpsSeries<C>,
}

impl<C: Coeff> WkbSymbol<C> {
    /// Number of known ε-orders.
    pub fn order(&self) -> usize {
        self.eps.len()
    }

    pub fn coeff(&self, n: usize) -> PuiseuxSeries<C> {
        self.eps.get(n)
    }

    /// The symbol obtained by `ε ↦ −ε`.
    pub fn flip_eps(&self) -> Self {
        WkbSymbol { sign: -self.sign, prefactor_exp: self.prefactor_exp, eps: self.eps.flip() }
    }

    /// Elementary normalization: `g₀ = 1` and `min_exp(gₙ) ≥ −3n/2`.
    pub fn is_elementary(&self) -> bool {
        self.eps.coeffs.first().is_none_or(|g| *g == PuiseuxSeries::one())
            && self
                .eps
                .coeffs
                .iter()
                .enumerate()
                .all(|(n, g)| g.is_zero() || g.min_exp() >= ex(-3 * n as i64, 2))
    }
}

impl<C: Coeff> std::fmt::Debug for EpsSeries<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

impl<C: Coeff> std::fmt::Debug for WkbSymbol<C> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WkbSymbol")
            .field("sign", &self.sign)
            .field("prefactor_exp", &self.prefactor_exp)
            .field("eps", &self.eps)
            .finish()
    }
}

/// Exponential prefactor `exp(−σ(2/3)z^{3/2}/ε)·z^{p}` on the given branch.
pub fn prefactor(sign: i8, p: Exp, z: Branched, eps: Complex64) -> Complex64 {
    let action = z.pow(1.5) * (2.0 / 3.0);
    (-(sign as f64) * action / eps).exp() * z.pow(*p.numer() as f64 / *p.denom() as f64)
}

/// Log of the prefactor, useful when the exponential over- or underflows.
pub fn log_prefactor(sign: i8, p: Exp, z: Branched, eps: Complex64) -> Complex64 {
    let action = z.pow(1.5) * (2.0 / 3.0);
    let pw = *p.numer() as f64 / *p.denom() as f64;
    -(sign as f64) * action / eps + Complex64::new(z.modulus.ln() * pw, z.arg * pw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::GaussRat;

    type S = PuiseuxSeries<GaussRat>;

    #[test]
    fn exp_log_consistency() {
        // exp(ε z) = Σ (εz)^k/k!
        let x = EpsSeries::new(vec![S::zero(), S::z(), S::zero(), S::zero(), S::zero()]);
        let e = x.exp().unwrap();
        assert_eq!(e.get(3), S::monomial(GaussRat::ratio(1, 6), ex(3, 1)));
        let u = EpsSeries::new(vec![S::one(), S::z(), S::zero(), S::zero()]);
        let sq = u.pow_unit(ex(1, 2)).unwrap();
        assert_eq!(sq.mul(&sq), u);
        assert_eq!(u.mul(&u.inv().unwrap()).get(2), S::zero());
    }
}
