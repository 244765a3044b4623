//! Coefficient rings for formal series.
//!
//! Three rings are provided: exact Gaussian rationals, `f64` complex numbers
//! and multivariate rational polynomials (for identities in symbolic
//! parameters).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Ring of series coefficients.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    /// Multiplicative inverse, `None` when not a unit.
    fn inv(&self) -> Option<Self>;
    /// `self^r`, `None` when the power leaves the ring.
    fn pow_ratio(&self, r: Ratio<i64>) -> Option<Self>;
    /// Numeric value, `None` for symbolic coefficients.
    fn to_c64(&self) -> Option<Complex64>;
    /// Size used in residual reports.
    fn magnitude(&self) -> f64;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }
    fn from_ratio(r: Ratio<i64>) -> Self {
        Self::from_rational(&ratio_big(r))
    }
    fn scale_ratio(&self, r: Ratio<i64>) -> Self {
        self.mul(&Self::from_ratio(r))
    }
}

pub fn ratio_big(r: Ratio<i64>) -> BigRational {
    BigRational::new((*r.numer()).into(), (*r.denom()).into())
}

pub fn big_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // very large numerator/denominator: scale through bit lengths
        let n = r.numer().bits() as i64;
        let d = r.denom().bits() as i64;
        let shift = n - d;
        let scaled = if shift > 0 {
            BigRational::new(r.numer().clone(), r.denom().clone() << (shift as usize))
        } else {
            BigRational::new(r.numer().clone() << ((-shift) as usize), r.denom().clone())
        };
        scaled.to_f64().unwrap_or(0.0) * 2f64.powi(shift as i32)
    })
}

/// Exact `q`-th root of a nonnegative rational, if it exists.
fn exact_root(r: &BigRational, q: u32) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().nth_root(q);
    let d = r.denom().nth_root(q);
    if num_traits::pow(n.clone(), q as usize) == *r.numer()
        && num_traits::pow(d.clone(), q as usize) == *r.denom()
    {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

fn int_pow<C: Coeff>(c: &C, p: i64) -> Option<C> {
    let base = if p < 0 { c.inv()? } else { c.clone() };
    let mut e = p.unsigned_abs();
    let mut acc = C::one();
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b);
        }
        b = b.mul(&b);
        e >>= 1;
    }
    Some(acc)
}

/// Gaussian rational `re + i·im`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }
    pub fn real(re: BigRational) -> Self {
        GaussRat { re, im: BigRational::zero() }
    }
    pub fn ratio(n: i64, d: i64) -> Self {
        GaussRat::real(BigRational::new(n.into(), d.into()))
    }
    pub fn i() -> Self {
        GaussRat { re: BigRational::zero(), im: BigRational::one() }
    }
    /// Exact conversion of a finite float pair.
    pub fn from_c64(c: Complex64) -> Option<Self> {
        Some(GaussRat {
            re: BigRational::from_float(c.re)?,
            im: BigRational::from_float(c.im)?,
        })
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else {
            write!(f, "({} + {}i)", self.re, self.im)
        }
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Coeff for GaussRat {
    fn zero() -> Self {
        GaussRat::real(BigRational::zero())
    }
    fn one() -> Self {
        GaussRat::real(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        GaussRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }
    fn sub(&self, o: &Self) -> Self {
        GaussRat { re: &self.re - &o.re, im: &self.im - &o.im }
    }
    fn mul(&self, o: &Self) -> Self {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussRat::real(&self.re * &o.re);
        }
        GaussRat {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    fn neg(&self) -> Self {
        GaussRat { re: -self.re.clone(), im: -self.im.clone() }
    }
    fn from_rational(r: &BigRational) -> Self {
        GaussRat::real(r.clone())
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(GaussRat::real(self.re.recip()));
        }
        let n = &self.re * &self.re + &self.im * &self.im;
        Some(GaussRat { re: &self.re / &n, im: -(&self.im / &n) })
    }
    fn pow_ratio(&self, r: Ratio<i64>) -> Option<Self> {
        if r.is_integer() {
            return int_pow(self, r.to_integer());
        }
        if !self.im.is_zero() {
            return None;
        }
        let q = u32::try_from(*r.denom()).ok()?;
        let root = exact_root(&self.re, q)?;
        int_pow(&GaussRat::real(root), *r.numer())
    }
    fn to_c64(&self) -> Option<Complex64> {
        Some(Complex64::new(big_to_f64(&self.re), big_to_f64(&self.im)))
    }
    fn magnitude(&self) -> f64 {
        let c = self.to_c64().unwrap_or_default();
        c.norm()
    }
}

impl Coeff for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(big_to_f64(r), 0.0)
    }
    fn inv(&self) -> Option<Self> {
        if Coeff::is_zero(self) {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
    fn pow_ratio(&self, r: Ratio<i64>) -> Option<Self> {
        if r.is_integer() {
            return int_pow(self, r.to_integer());
        }
        if Coeff::is_zero(self) {
            return None;
        }
        Some(self.powf(*r.numer() as f64 / *r.denom() as f64))
    }
    fn to_c64(&self) -> Option<Complex64> {
        Some(*self)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

/// Polynomial over ℚ in symbolic parameters `v0, v1, …`.
///
/// Exponent vectors are stored with trailing zeros trimmed so that equal
/// polynomials compare equal structurally.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    terms: BTreeMap<Vec<u32>, BigRational>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl MPoly {
    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MPoly { terms }
    }
    /// The parameter `v_i`.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(e, BigRational::one());
        MPoly { terms }
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }
    pub fn coefficient(&self, exps: &[u32]) -> BigRational {
        self.terms.get(&trim(exps.to_vec())).cloned().unwrap_or_else(BigRational::zero)
    }
    pub fn constant_term(&self) -> Option<BigRational> {
        if self.terms.keys().all(|e| e.is_empty()) {
            Some(self.coefficient(&[]))
        } else {
            None
        }
    }
    /// Substitute numeric values for the parameters.
    pub fn eval(&self, vals: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .enumerate()
                    .fold(Complex64::new(big_to_f64(c), 0.0), |acc, (i, &p)| acc * vals[i].powu(p))
            })
            .sum()
    }
    fn combine(&self, o: &Self, sign: i32) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &o.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigRational::zero);
            if sign > 0 {
                *entry += c;
            } else {
                *entry -= c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MPoly { terms }
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(i, &p)| if p == 1 { format!("v{}", i) } else { format!("v{}^{}", i, p) })
                    .collect();
                if mono.is_empty() {
                    format!("{}", c)
                } else {
                    format!("{}*{}", c, mono.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Coeff for MPoly {
    fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }
    fn one() -> Self {
        MPoly::constant(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        self.combine(o, 1)
    }
    fn sub(&self, o: &Self) -> Self {
        self.combine(o, -1)
    }
    fn mul(&self, o: &Self) -> Self {
        let mut terms: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let n = ea.len().max(eb.len());
                let e: Vec<u32> = (0..n)
                    .map(|i| ea.get(i).copied().unwrap_or(0) + eb.get(i).copied().unwrap_or(0))
                    .collect();
                let entry = terms.entry(e).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        MPoly { terms }
    }
    fn neg(&self) -> Self {
        MPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
    fn from_rational(r: &BigRational) -> Self {
        MPoly::constant(r.clone())
    }
    fn inv(&self) -> Option<Self> {
        let c = self.constant_term()?;
        if c.is_zero() {
            return None;
        }
        Some(MPoly::constant(c.recip()))
    }
    fn pow_ratio(&self, r: Ratio<i64>) -> Option<Self> {
        if r.is_integer() {
            return int_pow(self, r.to_integer());
        }
        let c = self.constant_term()?;
        let q = u32::try_from(*r.denom()).ok()?;
        let root = exact_root(&c, q)?;
        int_pow(&MPoly::constant(root), *r.numer())
    }
    fn to_c64(&self) -> Option<Complex64> {
        self.constant_term().map(|c| Complex64::new(big_to_f64(&c), 0.0))
    }
    fn magnitude(&self) -> f64 {
        self.terms.values().map(|c| big_to_f64(c).abs()).fold(0.0, f64::max)
    }
}

/// Parse `"p/q"`, an integer, or an exact decimal such as `"-1.25e-3"`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{}{}", ip, fp).trim_start_matches('0').parse().unwrap_or_else(|_| BigInt::zero());
    let scale = exp - fp.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

/// Render a rational as `"p/q"` (or `"p"` when integral).
pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_inverse() {
        let z = GaussRat::new(BigRational::from_integer(3.into()), BigRational::from_integer(4.into()));
        let w = z.inv().unwrap();
        assert_eq!(z.mul(&w), GaussRat::one());
    }

    #[test]
    fn rational_roots() {
        let r = GaussRat::ratio(8, 27);
        assert_eq!(r.pow_ratio(Ratio::new(2, 3)), Some(GaussRat::ratio(4, 9)));
        assert_eq!(GaussRat::ratio(2, 1).pow_ratio(Ratio::new(1, 2)), None);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("-9/140"), Some(BigRational::new((-9).into(), 140.into())));
        assert_eq!(parse_rational("0.5"), Some(BigRational::new(1.into(), 2.into())));
        assert_eq!(parse_rational("1.5e2"), Some(BigRational::from_integer(150.into())));
        assert_eq!(parse_rational("2"), Some(BigRational::from_integer(2.into())));
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn mpoly_ring() {
        let v = MPoly::var(0);
        let w = MPoly::var(1);
        let s = v.add(&w);
        let sq = s.mul(&s);
        let expect = v.mul(&v).add(&w.mul(&w)).add(&v.mul(&w).mul(&MPoly::from_i64(2)));
        assert_eq!(sq, expect);
        assert_eq!(v.sub(&v), MPoly::zero());
    }
}
