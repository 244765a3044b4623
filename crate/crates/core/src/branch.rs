//! Points of the punctured plane with an explicit argument, so that
//! fractional powers follow a chosen continuous determination.

use std::f64::consts::PI;

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Branched {
    pub modulus: f64,
    pub arg: f64,
}

impl Branched {
    pub fn new(modulus: f64, arg: f64) -> Self {
        Branched { modulus, arg }
    }

    /// Principal determination, `arg ∈ (−π, π]`.
    pub fn principal(z: Complex64) -> Self {
        Branched { modulus: z.norm(), arg: z.arg() }
    }

    /// Determination of `arg z` closest to `reference`.
    pub fn near(z: Complex64, reference: f64) -> Self {
        let mut a = z.arg();
        while a - reference > PI {
            a -= 2.0 * PI;
        }
        while reference - a > PI {
            a += 2.0 * PI;
        }
        Branched { modulus: z.norm(), arg: a }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::from_polar(self.modulus, self.arg)
    }

    /// `z^p` on this determination.
    pub fn pow(&self, p: f64) -> Complex64 {
        if self.modulus == 0.0 {
            return if p == 0.0 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
        }
        Complex64::from_polar(self.modulus.powf(p), self.arg * p)
    }

    /// Shift along a small displacement keeping the determination continuous.
    pub fn offset(&self, dz: Complex64) -> Self {
        Branched::near(self.value() + dz, self.arg)
    }
}

impl From<Complex64> for Branched {
    fn from(z: Complex64) -> Self {
        Branched::principal(z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn continuation_past_negative_axis() {
        let z = Branched::new(1.0, PI);
        let w = z.pow(1.5);
        assert!((w - Complex64::new(0.0, -1.0)).norm() < 1e-15);
        let s = z.offset(Complex64::new(0.0, -0.1));
        assert!(s.arg > PI);
    }
}
