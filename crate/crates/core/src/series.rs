//! Truncated Puiseux series `Σ c_e z^e + O(z^trunc)`.
//!
//! Storage is dense on a lattice `(1/denom)ℤ`. Everything below `trunc` that
//! is not stored is zero; everything at or above `trunc` is unknown. Exact
//! series (finite sums) have no truncation.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;

use crate::branch::Branched;
use crate::coeff::Coeff;
use crate::error::{Result, WkbError};

pub type Exp = Ratio<i64>;

/// Base exponent lattice: half-integers.
pub const BASE_DENOM: i64 = 2;
/// Widened lattice used only by intermediate fractional powers.
pub const WIDE_DENOM: i64 = 6;

#[derive(Clone, PartialEq)]
pub struct PuiseuxSeries<C> {
    denom: i64,
    val: i64,
    coeffs: Vec<C>,
    trunc: Option<i64>,
}

/// A Puiseux series with integer exponents `≥ 0`; checked with
/// [`PuiseuxSeries::ensure_taylor`] at API boundaries.
pub type TaylorSeries<C> = PuiseuxSeries<C>;

fn exp_units(e: Exp, d: i64) -> Option<i64> {
    let x = e * Exp::from_integer(d);
    x.is_integer().then(|| x.to_integer())
}

fn min_opt(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<C: Coeff> PuiseuxSeries<C> {
    pub fn zero() -> Self {
        PuiseuxSeries { denom: 1, val: 0, coeffs: Vec::new(), trunc: None }
    }

    /// `O(z^e)` with nothing known below it beyond zero.
    pub fn big_o(e: Exp) -> Self {
        let d = *e.denom();
        PuiseuxSeries { denom: d, val: 0, coeffs: Vec::new(), trunc: Some(*e.numer()) }.normalized()
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, Exp::from_integer(0))
    }

    /// `c·z^e` (exact).
    pub fn monomial(c: C, e: Exp) -> Self {
        PuiseuxSeries { denom: *e.denom(), val: *e.numer(), coeffs: vec![c], trunc: None }.normalized()
    }

    /// The variable `z`.
    pub fn z() -> Self {
        Self::monomial(C::one(), Exp::from_integer(1))
    }

    /// Build from `(exponent, coefficient)` pairs; exponents must be
    /// half-integers and lie below `trunc`.
    pub fn from_terms(terms: Vec<(Exp, C)>, trunc: Option<Exp>) -> Result<Self> {
        for (e, _) in &terms {
            if exp_units(*e, BASE_DENOM).is_none() {
                return Err(WkbError::LatticeMismatch { exponent: e.to_string() });
            }
            if let Some(t) = trunc {
                if *e >= t {
                    return Err(WkbError::InvalidInput(format!(
                        "exponent {} at or above truncation {}",
                        e, t
                    )));
                }
            }
        }
        if let Some(t) = trunc {
            if exp_units(t, BASE_DENOM).is_none() {
                return Err(WkbError::LatticeMismatch { exponent: t.to_string() });
            }
        }
        Ok(Self::from_terms_on(BASE_DENOM, terms, trunc))
    }

    fn from_terms_on(d: i64, terms: Vec<(Exp, C)>, trunc: Option<Exp>) -> Self {
        let units: Vec<(i64, C)> =
            terms.into_iter().map(|(e, c)| (exp_units(e, d).expect("lattice"), c)).collect();
        let tr = trunc.map(|t| exp_units(t, d).expect("lattice"));
        if units.is_empty() {
            return PuiseuxSeries { denom: d, val: 0, coeffs: Vec::new(), trunc: tr }.normalized();
        }
        let lo = units.iter().map(|u| u.0).min().unwrap();
        let hi = units.iter().map(|u| u.0).max().unwrap();
        let mut coeffs = vec![C::zero(); (hi - lo + 1) as usize];
        for (u, c) in units {
            let slot = &mut coeffs[(u - lo) as usize];
            *slot = slot.add(&c);
        }
        PuiseuxSeries { denom: d, val: lo, coeffs, trunc: tr }.normalized()
    }

    /// Taylor series from coefficients of `z^0, z^1, …`.
    pub fn taylor(coeffs: Vec<C>, trunc: Option<i64>) -> Self {
        PuiseuxSeries { denom: 1, val: 0, coeffs, trunc }.normalized()
    }

    /// Polynomial with exact small-integer coefficients.
    pub fn poly_i64(coeffs: &[i64]) -> Self {
        Self::taylor(coeffs.iter().map(|&c| C::from_i64(c)).collect(), None)
    }

    // ---------------------------------------------------------------- shape

    fn normalized(mut self) -> Self {
        if let Some(t) = self.trunc {
            let keep = (t - self.val).clamp(0, self.coeffs.len() as i64) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.val = 0;
            }
            Some(k) => {
                self.coeffs.drain(..k);
                self.val += k as i64;
            }
        }
        // narrow the lattice as far as the data allows
        let mut g = self.denom;
        if let Some(t) = self.trunc {
            g = g.gcd(&t);
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                g = g.gcd(&(self.val + i as i64));
            }
        }
        if g > 1 {
            let step = g as usize;
            let coeffs: Vec<C> = self.coeffs.iter().step_by(step).cloned().collect();
            self.coeffs = coeffs;
            self.val /= g;
            self.denom /= g;
            self.trunc = self.trunc.map(|t| t / g);
        }
        if self.coeffs.is_empty() && self.trunc.is_none() {
            self.denom = 1;
        }
        self
    }

    fn regrid(&self, d: i64) -> Self {
        debug_assert_eq!(d % self.denom, 0);
        let k = d / self.denom;
        if k == 1 {
            return self.clone();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() * k as usize);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                for _ in 1..k {
                    coeffs.push(C::zero());
                }
            }
            coeffs.push(c.clone());
        }
        PuiseuxSeries { denom: d, val: self.val * k, coeffs, trunc: self.trunc.map(|t| t * k) }
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let d = a.denom.lcm(&b.denom);
        (a.regrid(d), b.regrid(d))
    }

    pub fn is_exact(&self) -> bool {
        self.trunc.is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lattice denominator currently in use.
    pub fn lattice(&self) -> i64 {
        self.denom
    }

    /// Lowest stored exponent (`trunc` for an unknown-zero series).
    pub fn min_exp(&self) -> Exp {
        match (self.coeffs.is_empty(), self.trunc) {
            (true, Some(t)) => Exp::new(t, self.denom),
            (true, None) => Exp::from_integer(0),
            _ => Exp::new(self.val, self.denom),
        }
    }

    /// Highest stored exponent, if any.
    pub fn max_exp(&self) -> Option<Exp> {
        (!self.coeffs.is_empty()).then(|| Exp::new(self.val + self.coeffs.len() as i64 - 1, self.denom))
    }

    pub fn trunc_order(&self) -> Option<Exp> {
        self.trunc.map(|t| Exp::new(t, self.denom))
    }

    fn lead_units(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            self.trunc
        } else {
            Some(self.val)
        }
    }

    pub fn leading(&self) -> Option<(Exp, &C)> {
        self.coeffs.first().map(|c| (Exp::new(self.val, self.denom), c))
    }

    /// Coefficient of `z^e` (zero when absent; unknown entries also read zero).
    pub fn coeff(&self, e: Exp) -> C {
        match exp_units(e, self.denom) {
            Some(u) if u >= self.val && u < self.val + self.coeffs.len() as i64 => {
                self.coeffs[(u - self.val) as usize].clone()
            }
            _ => C::zero(),
        }
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> Vec<(Exp, C)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Exp::new(self.val + i as i64, self.denom), c.clone()))
            .collect()
    }

    /// Forget everything at or above `e`.
    pub fn truncate(&self, e: Exp) -> Self {
        let d = self.denom.lcm(e.denom());
        let mut s = self.regrid(d);
        let t = exp_units(e, d).unwrap();
        s.trunc = min_opt(s.trunc, Some(t));
        s.normalized()
    }

    pub fn is_taylor(&self) -> bool {
        self.terms().iter().all(|(e, _)| e.is_integer() && *e >= Exp::from_integer(0))
            && self.trunc_order().is_none_or(|t| t.is_integer())
    }

    pub fn ensure_taylor(&self) -> Result<()> {
        if self.is_taylor() {
            Ok(())
        } else {
            Err(WkbError::NotTaylor(format!("{:?}", self)))
        }
    }

    /// Holomorphy scan: all stored exponents are integers `≥ 0`.
    pub fn is_holomorphic(&self) -> bool {
        self.terms().iter().all(|(e, _)| e.is_integer() && *e >= Exp::from_integer(0))
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> PuiseuxSeries<D> {
        PuiseuxSeries {
            denom: self.denom,
            val: self.val,
            coeffs: self.coeffs.iter().map(f).collect(),
            trunc: self.trunc,
        }
        .normalized()
    }

    /// Largest coefficient magnitude.
    pub fn max_magnitude(&self) -> f64 {
        self.coeffs.iter().map(|c| c.magnitude()).fold(0.0, f64::max)
    }

    // ----------------------------------------------------------- arithmetic

    pub fn scale(&self, c: &C) -> Self {
        PuiseuxSeries {
            denom: self.denom,
            val: self.val,
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
            trunc: self.trunc,
        }
        .normalized()
    }

    pub fn scale_ratio(&self, r: Exp) -> Self {
        self.scale(&C::from_ratio(r))
    }

    /// Multiply by `z^e`.
    pub fn shift(&self, e: Exp) -> Self {
        let d = self.denom.lcm(e.denom());
        let mut s = self.regrid(d);
        let u = exp_units(e, d).unwrap();
        s.val += u;
        s.trunc = s.trunc.map(|t| t + u);
        s.normalized()
    }

    fn add_signed(&self, other: &Self, negate: bool) -> Self {
        let (a, b) = Self::common(self, other);
        let trunc = min_opt(a.trunc, b.trunc);
        let ends = [
            (!a.coeffs.is_empty()).then(|| (a.val, a.val + a.coeffs.len() as i64)),
            (!b.coeffs.is_empty()).then(|| (b.val, b.val + b.coeffs.len() as i64)),
        ];
        let lo = ends.iter().flatten().map(|e| e.0).min();
        let Some(lo) = lo else {
            return PuiseuxSeries { denom: a.denom, val: 0, coeffs: Vec::new(), trunc }.normalized();
        };
        let mut hi = ends.iter().flatten().map(|e| e.1).max().unwrap();
        if let Some(t) = trunc {
            hi = hi.min(t);
        }
        let n = (hi - lo).max(0) as usize;
        let mut coeffs = vec![C::zero(); n];
        for (k, c) in a.coeffs.iter().enumerate() {
            let u = a.val + k as i64 - lo;
            if (u as usize) < n {
                coeffs[u as usize] = coeffs[u as usize].add(c);
            }
        }
        for (k, c) in b.coeffs.iter().enumerate() {
            let u = b.val + k as i64 - lo;
            if (u as usize) < n {
                let slot = &mut coeffs[u as usize];
                *slot = if negate { slot.sub(c) } else { slot.add(c) };
            }
        }
        PuiseuxSeries { denom: a.denom, val: lo, coeffs, trunc }.normalized()
    }

    pub fn add_series(&self, other: &Self) -> Self {
        self.add_signed(other, false)
    }

    pub fn sub_series(&self, other: &Self) -> Self {
        self.add_signed(other, true)
    }

    pub fn neg_series(&self) -> Self {
        self.scale(&C::one().neg())
    }

    pub fn mul_series(&self, other: &Self) -> Self {
        let (a, b) = Self::common(self, other);
        let d = a.denom;
        if (a.is_exact() && a.coeffs.is_empty()) || (b.is_exact() && b.coeffs.is_empty()) {
            return Self::zero();
        }
        let trunc = match (a.lead_units(), b.lead_units()) {
            (Some(la), Some(lb)) => min_opt(a.trunc.map(|t| t + lb), b.trunc.map(|t| t + la)),
            _ => None,
        };
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return PuiseuxSeries { denom: d, val: 0, coeffs: Vec::new(), trunc }.normalized();
        }
        let lo = a.val + b.val;
        let mut n = a.coeffs.len() + b.coeffs.len() - 1;
        if let Some(t) = trunc {
            n = n.min((t - lo).max(0) as usize);
        }
        let mut coeffs = vec![C::zero(); n];
        for (i, x) in a.coeffs.iter().enumerate() {
            if i >= n || x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate().take(n - i) {
                if !y.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&x.mul(y));
                }
            }
        }
        PuiseuxSeries { denom: d, val: lo, coeffs, trunc }.normalized()
    }

    /// Number of known lattice steps past the leading term, or `None` if exact.
    fn relative_precision(&self) -> Option<i64> {
        self.trunc.map(|t| t - self.val)
    }

    /// Multiplicative inverse. Exact non-monomial series must be truncated
    /// first, since their inverse does not terminate.
    pub fn inv(&self) -> Result<Self> {
        if self.coeffs.is_empty() {
            return Err(WkbError::DivisionByZero);
        }
        let a0inv = self.coeffs[0].inv().ok_or(WkbError::DivisionByZero)?;
        let n = match self.relative_precision() {
            Some(n) => n as usize,
            None if self.coeffs.len() == 1 => 1,
            None => return Err(WkbError::NeedsTruncation("inverse of an exact non-monomial series")),
        };
        let mut b: Vec<C> = Vec::with_capacity(n);
        b.push(a0inv.clone());
        for k in 1..n {
            let mut s = C::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                s = s.add(&self.coeffs[j].mul(&b[k - j]));
            }
            b.push(s.mul(&a0inv).neg());
        }
        let trunc = self.relative_precision().map(|p| -self.val + p);
        Ok(PuiseuxSeries { denom: self.denom, val: -self.val, coeffs: b, trunc }.normalized())
    }

    pub fn div_series(&self, other: &Self) -> Result<Self> {
        // exact division by a monomial stays exact
        Ok(self.mul_series(&other.inv()?))
    }

    /// Inverse known below `trunc`; exact inputs are truncated as needed.
    pub fn inv_to(&self, trunc: Exp) -> Result<Self> {
        if self.coeffs.is_empty() {
            return Err(WkbError::DivisionByZero);
        }
        let lead = self.min_exp();
        let base = if self.is_exact() { self.truncate(trunc + lead + lead) } else { self.clone() };
        Ok(base.inv()?.truncate(trunc))
    }

    /// `self^r` around the leading monomial, restricted to the half-integer
    /// lattice.
    pub fn pow_rational(&self, r: Exp) -> Result<Self> {
        self.pow_on(r, BASE_DENOM)
    }

    /// As [`pow_rational`](Self::pow_rational) but allows exponents in
    /// `(1/6)ℤ` for intermediate results such as `(…)^{2/3}`.
    pub fn pow_rational_widened(&self, r: Exp) -> Result<Self> {
        self.pow_on(r, WIDE_DENOM)
    }

    fn pow_on(&self, r: Exp, max_denom: i64) -> Result<Self> {
        if r == Exp::from_integer(1) {
            return Ok(self.clone());
        }
        if self.coeffs.is_empty() {
            if r > Exp::from_integer(0) && self.is_exact() {
                return Ok(Self::zero());
            }
            return Err(WkbError::DivisionByZero);
        }
        let lead = Exp::new(self.val, self.denom);
        let new_lead = lead * r;
        if max_denom % new_lead.denom() != 0 || max_denom % self.denom != 0 {
            return Err(WkbError::LatticeMismatch { exponent: new_lead.to_string() });
        }
        let a0 = &self.coeffs[0];
        let b0 = a0.pow_ratio(r).ok_or_else(|| WkbError::NonRepresentable(format!("({:?})^({})", a0, r)))?;
        let n = match self.relative_precision() {
            Some(n) => n as usize,
            None if self.coeffs.len() == 1 => 1,
            None if r.is_integer() && r >= Exp::from_integer(0) => {
                let mut acc = Self::one();
                for _ in 0..r.to_integer() {
                    acc = acc.mul_series(self);
                }
                return Ok(acc);
            }
            None => return Err(WkbError::NeedsTruncation("fractional power of an exact non-monomial series")),
        };
        let a0inv = a0.inv().ok_or(WkbError::DivisionByZero)?;
        let mut b: Vec<C> = Vec::with_capacity(n);
        b.push(b0);
        for k in 1..n {
            let mut s = C::zero();
            for j in 1..=k.min(self.coeffs.len() - 1) {
                // ((r+1)j − k) a_j b_{k−j}
                let w = (r + Exp::from_integer(1)) * Exp::from_integer(j as i64) - Exp::from_integer(k as i64);
                if w != Exp::from_integer(0) {
                    s = s.add(&self.coeffs[j].mul(&b[k - j]).scale_ratio(w));
                }
            }
            b.push(s.mul(&a0inv).scale_ratio(Exp::new(1, k as i64)));
        }
        let d = self.denom.lcm(new_lead.denom());
        let step = d / self.denom;
        let lead_u = exp_units(new_lead, d).unwrap();
        let terms: Vec<(Exp, C)> = b
            .into_iter()
            .enumerate()
            .map(|(k, c)| (Exp::new(lead_u + (k as i64) * step, d), c))
            .collect();
        let trunc = self.relative_precision().map(|p| Exp::new(lead_u + p * step, d));
        Ok(Self::from_terms_on(d, terms, trunc))
    }

    // ------------------------------------------------------------- calculus

    pub fn derive(&self) -> Self {
        let terms: Vec<(Exp, C)> = self
            .terms()
            .into_iter()
            .filter(|(e, _)| *e != Exp::from_integer(0))
            .map(|(e, c)| (e - 1, c.scale_ratio(e)))
            .collect();
        let trunc = self.trunc_order().map(|t| t - 1);
        Self::from_terms_on(self.denom, terms, trunc)
    }

    /// Term-by-term antiderivative with zero constant; fails on a nonzero
    /// `z^{-1}` coefficient.
    pub fn antiderive(&self) -> Result<Self> {
        let mut terms = Vec::new();
        for (e, c) in self.terms() {
            if e == Exp::from_integer(-1) {
                return Err(WkbError::LogObstruction { coefficient: format!("{:?}", c) });
            }
            let k = e + 1;
            terms.push((k, c.scale_ratio(k.recip())));
        }
        let trunc = self.trunc_order().map(|t| t + 1);
        Ok(Self::from_terms_on(self.denom, terms, trunc))
    }

    // ---------------------------------------------------------- composition

    /// `self ∘ g` for a Taylor series `self` and a Taylor series `g` with `g(0) = 0`.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        self.ensure_taylor()?;
        g.ensure_taylor()?;
        if !g.coeff(Exp::from_integer(0)).is_zero() || (g.coeffs.is_empty() && !g.is_exact() && g.trunc == Some(0)) {
            return Err(WkbError::InvalidInput("inner series must vanish at 0".into()));
        }
        let top = match self.trunc {
            Some(t) => t,
            None => self.max_exp().map_or(0, |e| e.to_integer() + 1),
        };
        let mut acc = match self.trunc {
            Some(_) => Self::big_o(Exp::from_integer(0)),
            None => Self::zero(),
        };
        for k in (0..top).rev() {
            acc = g.mul_series(&acc).add_series(&Self::constant(self.coeff(Exp::from_integer(k))));
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `self(g(z)) = z`, known below `order`
    /// (and below the truncation of `self`).
    pub fn compose_invert(&self, order: i64) -> Result<Self> {
        self.ensure_taylor()?;
        if !self.coeff(Exp::from_integer(0)).is_zero() {
            return Err(WkbError::NotInvertible("f(0) != 0".into()));
        }
        let f1inv = self
            .coeff(Exp::from_integer(1))
            .inv()
            .ok_or_else(|| WkbError::NotInvertible("f'(0) = 0".into()))?;
        let top = match self.trunc {
            Some(t) => t.min(order),
            None => order,
        };
        let mut g: Vec<C> = vec![C::zero(), f1inv.clone()];
        for n in 2..top {
            let gs = Self::taylor(g.clone(), None);
            let f_cut = self.truncate(Exp::from_integer(n + 1));
            let comp = f_cut.compose(&gs)?;
            let r = comp.coeff(Exp::from_integer(n));
            g.push(r.mul(&f1inv).neg());
        }
        g.truncate(top.max(0) as usize);
        Ok(Self::taylor(g, Some(top)))
    }

    // ----------------------------------------------------------- evaluation

    /// Numeric value at a point carrying an explicit branch of `arg z`.
    pub fn eval(&self, z: Branched) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in self.terms() {
            let v = c.to_c64().ok_or_else(|| WkbError::InvalidInput("symbolic coefficient".into()))?;
            acc += v * z.pow(*e.numer() as f64 / *e.denom() as f64);
        }
        Ok(acc)
    }
}

impl<C: Coeff> fmt::Debug for PuiseuxSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms().iter().map(|(e, c)| format!("{:?}*z^{}", c, e)).collect();
        let body = if parts.is_empty() { "0".to_string() } else { parts.join(" + ") };
        match self.trunc_order() {
            Some(t) => write!(f, "{} + O(z^{})", body, t),
            None => write!(f, "{}", body),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl<C: Coeff> $tr<&PuiseuxSeries<C>> for &PuiseuxSeries<C> {
            type Output = PuiseuxSeries<C>;
            fn $m(self, rhs: &PuiseuxSeries<C>) -> PuiseuxSeries<C> {
                self.$imp(rhs)
            }
        }
        impl<C: Coeff> $tr<PuiseuxSeries<C>> for PuiseuxSeries<C> {
            type Output = PuiseuxSeries<C>;
            fn $m(self, rhs: PuiseuxSeries<C>) -> PuiseuxSeries<C> {
                self.$imp(&rhs)
            }
        }
        impl<C: Coeff> $tr<&PuiseuxSeries<C>> for PuiseuxSeries<C> {
            type Output = PuiseuxSeries<C>;
            fn $m(self, rhs: &PuiseuxSeries<C>) -> PuiseuxSeries<C> {
                self.$imp(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_series);
forward_binop!(Sub, sub, sub_series);
forward_binop!(Mul, mul, mul_series);

impl<C: Coeff> Neg for &PuiseuxSeries<C> {
    type Output = PuiseuxSeries<C>;
    fn neg(self) -> PuiseuxSeries<C> {
        self.neg_series()
    }
}

impl<C: Coeff> Neg for PuiseuxSeries<C> {
    type Output = PuiseuxSeries<C>;
    fn neg(self) -> PuiseuxSeries<C> {
        self.neg_series()
    }
}

/// Shorthand for a rational exponent.
pub fn ex(n: i64, d: i64) -> Exp {
    Exp::new(n, d)
}
