//! Dense complex polynomials: evaluation and simultaneous root finding.

use num_complex::Complex64;

/// Horner evaluation of `Σ c_k x^k`.
pub fn horner(c: &[Complex64], x: Complex64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * x + a)
}

pub fn derivative(c: &[Complex64]) -> Vec<Complex64> {
    c.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect()
}

fn trim(c: &[Complex64]) -> &[Complex64] {
    let mut n = c.len();
    while n > 0 && c[n - 1].norm() == 0.0 {
        n -= 1;
    }
    &c[..n]
}

/// All roots by the Aberth–Ehrlich iteration.
pub fn roots(c: &[Complex64]) -> Vec<Complex64> {
    let c = trim(c);
    if c.len() < 2 {
        return Vec::new();
    }
    let deg = c.len() - 1;
    let lead = c[deg];
    let monic: Vec<Complex64> = c.iter().map(|a| a / lead).collect();
    let dc = derivative(&monic);
    // Cauchy-type bound for the initial circle
    let radius = monic[..deg].iter().map(|a| a.norm()).fold(0.0, f64::max).powf(1.0 / deg as f64).max(1e-3);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(radius, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / deg as f64 + 0.4))
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let p = horner(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / horner(&dc, z[i]);
            let s: Complex64 = (0..deg).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                moved = moved.max(w.norm() / z[i].norm().max(1e-300));
            }
        }
        if moved < 1e-15 {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_roots() {
        // (x-1)(x+2)(x-3i)
        let one = Complex64::new(1.0, 0.0);
        let r = [one, Complex64::new(-2.0, 0.0), Complex64::new(0.0, 3.0)];
        let mut c = vec![one];
        for a in r {
            let mut n = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (k, x) in c.iter().enumerate() {
                n[k + 1] += x;
                n[k] -= x * a;
            }
            c = n;
        }
        let found = roots(&c);
        for a in r {
            assert!(found.iter().any(|z| (z - a).norm() < 1e-12));
        }
    }
}
