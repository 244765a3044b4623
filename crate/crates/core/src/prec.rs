//! Working precision for the numeric kernels.
//!
//! Quadratures and Padé evaluations are written once against [`Scalar`] and
//! run either in `f64` complex arithmetic or in multiprecision complex
//! arithmetic ([`MpComplex`]) when more than 16 decimal digits are requested.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::coeff::GaussRat;
use crate::error::{Result, WkbError};
use crate::quad::gauss_legendre;

const RM: RoundingMode = RoundingMode::ToEven;

/// Working precision in decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Precision(u32);

impl Precision {
    pub const DOUBLE: Precision = Precision(16);

    pub fn new(digits: u32) -> Result<Self> {
        if digits < 15 {
            return Err(WkbError::InvalidInput(format!("precision must be at least 15 digits, got {}", digits)));
        }
        Ok(Precision(digits))
    }

    pub fn digits(self) -> u32 {
        self.0
    }

    pub fn is_double(self) -> bool {
        self.0 <= 16
    }

    /// Mantissa bits, with a guard margin.
    pub fn bits(self) -> usize {
        (self.0 as f64 * std::f64::consts::LOG2_10).ceil() as usize + 24
    }

    /// `ln` of the smallest relative contribution worth keeping.
    pub fn log_cutoff(self) -> f64 {
        self.0 as f64 * std::f64::consts::LN_10 + 8.0
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision::DOUBLE
    }
}

/// Complex arithmetic used by the generic kernels.
pub trait Scalar: Clone + Send + Sync + fmt::Debug + 'static {
    type Ctx: Copy + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn lift(z: Complex64, ctx: Self::Ctx) -> Self;
    fn from_gauss(g: &GaussRat, ctx: Self::Ctx) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn exp(&self) -> Self;
    /// Principal square root.
    fn sqrt(&self) -> Self;
    /// Principal logarithm.
    fn ln(&self) -> Self;
    fn pi(ctx: Self::Ctx) -> Self;
    fn to_c64(&self) -> Complex64;
    fn extended(&self) -> Option<MpComplex>;
    /// Gauss–Legendre nodes and weights on `[−1, 1]`.
    fn legendre(n: usize, ctx: Self::Ctx) -> Arc<Vec<(Self, Self)>>;

    fn zero(ctx: Self::Ctx) -> Self {
        Self::lift(Complex64::new(0.0, 0.0), ctx)
    }
    fn one(ctx: Self::Ctx) -> Self {
        Self::lift(Complex64::new(1.0, 0.0), ctx)
    }
    fn mul_c(&self, z: Complex64) -> Self {
        self.mul(&Self::lift(z, self.ctx()))
    }
    fn add_c(&self, z: Complex64) -> Self {
        self.add(&Self::lift(z, self.ctx()))
    }
    fn ratio(n: i64, d: i64, ctx: Self::Ctx) -> Self {
        Self::lift(Complex64::new(n as f64, 0.0), ctx).div(&Self::lift(Complex64::new(d as f64, 0.0), ctx))
    }
    fn norm(&self) -> f64 {
        self.to_c64().norm()
    }
}

/// Horner evaluation of `Σ c_k x^k`.
pub fn horner_s<S: Scalar>(c: &[S], x: &S) -> S {
    let mut it = c.iter().rev();
    let mut acc = match it.next() {
        Some(a) => a.clone(),
        None => return S::zero(x.ctx()),
    };
    for a in it {
        acc = acc.mul(x).add(a);
    }
    acc
}

/// `z^p` on the determination `ln z = ln|z| + i·arg`.
pub fn polar_pow<S: Scalar>(modulus: f64, arg: f64, p: (i64, i64), ctx: S::Ctx) -> S {
    if modulus == 0.0 {
        return if p.0 == 0 { S::one(ctx) } else { S::zero(ctx) };
    }
    let ln = S::lift(Complex64::new(modulus, 0.0), ctx).ln().add_c(Complex64::new(0.0, arg));
    ln.mul(&S::ratio(p.0, p.1, ctx)).exp()
}

impl Scalar for Complex64 {
    type Ctx = ();

    fn ctx(&self) {}
    fn lift(z: Complex64, _: ()) -> Self {
        z
    }
    fn from_gauss(g: &GaussRat, _: ()) -> Self {
        Complex64::new(crate::coeff::big_to_f64(&g.re), crate::coeff::big_to_f64(&g.im))
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
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exp(&self) -> Self {
        Complex64::exp(*self)
    }
    fn sqrt(&self) -> Self {
        Complex64::sqrt(*self)
    }
    fn ln(&self) -> Self {
        Complex64::ln(*self)
    }
    fn pi(_: ()) -> Self {
        Complex64::new(std::f64::consts::PI, 0.0)
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn extended(&self) -> Option<MpComplex> {
        None
    }
    fn legendre(n: usize, _: ()) -> Arc<Vec<(Self, Self)>> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<(Complex64, Complex64)>>>>> = OnceLock::new();
        let map = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = map.lock().unwrap_or_else(|e| e.into_inner());
        guard
            .entry(n)
            .or_insert_with(|| {
                let r = gauss_legendre(n);
                Arc::new(
                    r.nodes.iter().zip(&r.weights).map(|(x, w)| (Complex64::new(*x, 0.0), Complex64::new(*w, 0.0))).collect(),
                )
            })
            .clone()
    }
}

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

fn bf(x: f64, bits: usize) -> BigFloat {
    BigFloat::from_f64(x, bits)
}

#[allow(clippy::useless_conversion)]
fn bf_to_f64(x: &BigFloat) -> f64 {
    match x.as_raw_parts() {
        None => f64::NAN,
        Some((m, _, s, e, _)) => {
            if x.is_zero() || m.is_empty() {
                return 0.0;
            }
            let wbits = 8 * std::mem::size_of_val(&m[0]);
            // limbs are u32 on 32-bit targets
            let top = u64::from(m[m.len() - 1]);
            let (top, bits) = if wbits == 32 && m.len() > 1 {
                ((top << 32) | u64::from(m[m.len() - 2]), 64)
            } else {
                (top, wbits as i32)
            };
            let v = top as f64 * 2f64.powi(e - bits);
            if s == Sign::Neg {
                -v
            } else {
                v
            }
        }
    }
}

fn bigint_to_bf(n: &BigInt, bits: usize) -> BigFloat {
    with_cc(|cc| BigFloat::parse(&n.to_string(), Radix::Dec, bits, RM, cc))
}

/// Multiprecision complex number; all operands share one precision.
#[derive(Clone)]
pub struct MpComplex {
    re: BigFloat,
    im: BigFloat,
    bits: usize,
}

impl MpComplex {
    pub fn bits(&self) -> usize {
        self.bits
    }

    fn new(re: BigFloat, im: BigFloat, bits: usize) -> Self {
        MpComplex { re, im, bits }
    }

    fn real_atan2(y: &BigFloat, x: &BigFloat, bits: usize) -> BigFloat {
        with_cc(|cc| {
            let pi = cc.pi(bits, RM);
            if x.is_zero() && y.is_zero() {
                return bf(0.0, bits);
            }
            if x.abs_cmp(y).is_none_or(|c| c >= 0) {
                let a = y.div(x, bits, RM).atan(bits, RM, cc);
                if x.is_negative() {
                    if y.is_negative() {
                        a.sub(&pi, bits, RM)
                    } else {
                        a.add(&pi, bits, RM)
                    }
                } else {
                    a
                }
            } else {
                let half = pi.div(&bf(2.0, bits), bits, RM);
                let a = x.div(y, bits, RM).atan(bits, RM, cc);
                if y.is_negative() {
                    half.neg().sub(&a, bits, RM)
                } else {
                    half.sub(&a, bits, RM)
                }
            }
        })
    }

    /// Decimal rendering of both parts at full working precision.
    pub fn to_strings(&self) -> [String; 2] {
        let f = |x: &BigFloat| with_cc(|cc| x.format(Radix::Dec, RM, cc).unwrap_or_else(|_| "nan".into()));
        [f(&self.re), f(&self.im)]
    }

    /// `|self|` at working precision, as an `MpComplex` with zero imaginary part.
    pub fn abs(&self) -> MpComplex {
        let b = self.bits;
        let s = self.re.mul(&self.re, b, RM).add(&self.im.mul(&self.im, b, RM), b, RM);
        MpComplex::new(s.sqrt(b, RM), bf(0.0, b), b)
    }

    /// `|a − b| / |b|` evaluated at working precision.
    pub fn rel_diff(a: &MpComplex, b: &MpComplex) -> f64 {
        let d = a.sub(b).abs();
        let n = b.abs();
        if n.re.is_zero() {
            return f64::INFINITY;
        }
        bf_to_f64(&d.re.div(&n.re, a.bits, RM))
    }
}

impl fmt::Debug for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [r, i] = self.to_strings();
        write!(f, "({} + {}i)", r, i)
    }
}

impl PartialEq for MpComplex {
    fn eq(&self, o: &Self) -> bool {
        self.re.cmp(&o.re) == Some(0) && self.im.cmp(&o.im) == Some(0)
    }
}

impl Serialize for MpComplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl Scalar for MpComplex {
    type Ctx = usize;

    fn ctx(&self) -> usize {
        self.bits
    }
    fn lift(z: Complex64, bits: usize) -> Self {
        MpComplex::new(bf(z.re, bits), bf(z.im, bits), bits)
    }
    fn from_gauss(g: &GaussRat, bits: usize) -> Self {
        let part = |r: &num_rational::BigRational| {
            bigint_to_bf(r.numer(), bits).div(&bigint_to_bf(r.denom(), bits), bits, RM)
        };
        MpComplex::new(part(&g.re), part(&g.im), bits)
    }
    fn add(&self, o: &Self) -> Self {
        let b = self.bits;
        MpComplex::new(self.re.add(&o.re, b, RM), self.im.add(&o.im, b, RM), b)
    }
    fn sub(&self, o: &Self) -> Self {
        let b = self.bits;
        MpComplex::new(self.re.sub(&o.re, b, RM), self.im.sub(&o.im, b, RM), b)
    }
    fn mul(&self, o: &Self) -> Self {
        let b = self.bits;
        let re = self.re.mul(&o.re, b, RM).sub(&self.im.mul(&o.im, b, RM), b, RM);
        let im = self.re.mul(&o.im, b, RM).add(&self.im.mul(&o.re, b, RM), b, RM);
        MpComplex::new(re, im, b)
    }
    fn div(&self, o: &Self) -> Self {
        let b = self.bits;
        let d = o.re.mul(&o.re, b, RM).add(&o.im.mul(&o.im, b, RM), b, RM);
        let re = self.re.mul(&o.re, b, RM).add(&self.im.mul(&o.im, b, RM), b, RM);
        let im = self.im.mul(&o.re, b, RM).sub(&self.re.mul(&o.im, b, RM), b, RM);
        MpComplex::new(re.div(&d, b, RM), im.div(&d, b, RM), b)
    }
    fn neg(&self) -> Self {
        MpComplex::new(self.re.neg(), self.im.neg(), self.bits)
    }
    fn exp(&self) -> Self {
        let b = self.bits;
        with_cc(|cc| {
            let m = self.re.exp(b, RM, cc);
            if self.im.is_zero() {
                return MpComplex::new(m, bf(0.0, b), b);
            }
            let c = self.im.cos(b, RM, cc);
            let s = self.im.sin(b, RM, cc);
            MpComplex::new(m.mul(&c, b, RM), m.mul(&s, b, RM), b)
        })
    }
    fn sqrt(&self) -> Self {
        let b = self.bits;
        if self.im.is_zero() && !self.re.is_negative() {
            return MpComplex::new(self.re.sqrt(b, RM), bf(0.0, b), b);
        }
        let r = self.abs().re;
        let two = bf(2.0, b);
        let t = r.add(&self.re.abs(), b, RM).div(&two, b, RM).sqrt(b, RM);
        let other = self.im.abs().div(&t.mul(&two, b, RM), b, RM);
        if !self.re.is_negative() {
            let im = if self.im.is_negative() { other.neg() } else { other };
            MpComplex::new(t, im, b)
        } else {
            let im = if self.im.is_negative() { t.neg() } else { t };
            MpComplex::new(other, im, b)
        }
    }
    fn ln(&self) -> Self {
        let b = self.bits;
        let n2 = self.re.mul(&self.re, b, RM).add(&self.im.mul(&self.im, b, RM), b, RM);
        let lm = with_cc(|cc| n2.ln(b, RM, cc)).div(&bf(2.0, b), b, RM);
        MpComplex::new(lm, Self::real_atan2(&self.im, &self.re, b), b)
    }
    fn pi(bits: usize) -> Self {
        MpComplex::new(with_cc(|cc| cc.pi(bits, RM)), bf(0.0, bits), bits)
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(bf_to_f64(&self.re), bf_to_f64(&self.im))
    }
    fn extended(&self) -> Option<MpComplex> {
        Some(self.clone())
    }
    fn legendre(n: usize, bits: usize) -> Arc<Vec<(Self, Self)>> {
        type Key = (usize, usize);
        static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Vec<(MpComplex, MpComplex)>>>>> = OnceLock::new();
        let map = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(r) = map.lock().unwrap_or_else(|e| e.into_inner()).get(&(n, bits)) {
            return r.clone();
        }
        let rule = Arc::new(refine_legendre(n, bits));
        map.lock().unwrap_or_else(|e| e.into_inner()).insert((n, bits), rule.clone());
        rule
    }
}

/// Newton-polish the double-precision Legendre nodes at `bits` precision.
fn refine_legendre(n: usize, bits: usize) -> Vec<(MpComplex, MpComplex)> {
    let seed = gauss_legendre(n);
    let one = bf(1.0, bits);
    let eval = |x: &BigFloat| -> (BigFloat, BigFloat) {
        // P_n(x) and P_n'(x) by the three-term recurrence
        let (mut p0, mut p1) = (one.clone(), bf(0.0, bits));
        for j in 0..n {
            let p2 = p1;
            p1 = p0;
            let a = bf((2 * j + 1) as f64, bits).mul(x, bits, RM).mul(&p1, bits, RM);
            let c = bf(j as f64, bits).mul(&p2, bits, RM);
            p0 = a.sub(&c, bits, RM).div(&bf((j + 1) as f64, bits), bits, RM);
        }
        let num = bf(n as f64, bits).mul(&x.mul(&p0, bits, RM).sub(&p1, bits, RM), bits, RM);
        let dp = num.div(&x.mul(x, bits, RM).sub(&one, bits, RM), bits, RM);
        (p0, dp)
    };
    let half = n.div_ceil(2);
    let mut nodes = vec![None; n];
    for i in 0..half {
        let mut x = bf(seed.nodes[n - 1 - i], bits);
        let mut dp = one.clone();
        let passes = (bits as f64 / 40.0).log2().ceil().max(1.0) as usize + 2;
        for _ in 0..passes {
            let (p, d) = eval(&x);
            x = x.sub(&p.div(&d, bits, RM), bits, RM);
            dp = d;
        }
        let (_, d) = eval(&x);
        if !d.is_zero() {
            dp = d;
        }
        let w = bf(2.0, bits).div(&one.sub(&x.mul(&x, bits, RM), bits, RM).mul(&dp.mul(&dp, bits, RM), bits, RM), bits, RM);
        let zero = bf(0.0, bits);
        let wc = MpComplex::new(w, zero.clone(), bits);
        nodes[n - 1 - i] = Some((MpComplex::new(x.clone(), zero.clone(), bits), wc.clone()));
        nodes[i] = Some((MpComplex::new(x.neg(), zero, bits), wc));
    }
    nodes.into_iter().map(|x| x.expect("all nodes set")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiprecision_elementary() {
        let bits = Precision::new(40).unwrap().bits();
        let one = MpComplex::one(bits);
        let third = MpComplex::ratio(1, 3, bits);
        let back = third.mul_c(Complex64::new(3.0, 0.0)).sub(&one);
        assert!(back.abs().to_c64().re < 1e-40);
        let z = MpComplex::lift(Complex64::new(-0.3, 1.7), bits);
        let r = z.ln().exp().sub(&z);
        assert!(r.abs().to_c64().re < 1e-38);
        let s = z.sqrt();
        assert!(s.mul(&s).sub(&z).abs().to_c64().re < 1e-38);
        assert!((z.to_c64() - Complex64::new(-0.3, 1.7)).norm() == 0.0);
    }

    #[test]
    fn multiprecision_legendre() {
        let bits = Precision::new(40).unwrap().bits();
        let rule = MpComplex::legendre(20, bits);
        // ∫ x^38 = 2/39 exactly for a 20-point rule
        let mut s = MpComplex::zero(bits);
        for (x, w) in rule.iter() {
            let mut p = MpComplex::one(bits);
            for _ in 0..38 {
                p = p.mul(x);
            }
            s = s.add(&p.mul(w));
        }
        let exact = MpComplex::ratio(2, 39, bits);
        assert!(MpComplex::rel_diff(&s, &exact) < 1e-38);
    }
}
