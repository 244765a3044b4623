//! Padé approximants computed in exact Gaussian-rational arithmetic.

use crate::coeff::{Coeff, GaussRat};
use crate::error::{Result, WkbError};

/// `[L/M]` approximant `P/Q` with `Q(0) = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pade {
    pub num: Vec<GaussRat>,
    pub den: Vec<GaussRat>,
}

/// Solve `A x = b` exactly; `None` when singular.
pub(crate) fn solve<C: Coeff>(mut a: Vec<Vec<C>>, mut b: Vec<C>) -> Option<Vec<C>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].inv()?;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].mul(&inv);
            for k in col..n {
                let t = f.mul(&a[col][k]);
                a[r][k] = a[r][k].sub(&t);
            }
            let t = f.mul(&b[col]);
            b[r] = b[r].sub(&t);
        }
    }
    Some((0..n).map(|i| b[i].mul(&a[i][i].inv().unwrap())).collect())
}

/// Padé `[l/m]` of `Σ c_k x^k`; needs `c.len() ≥ l + m + 1`. A singular
/// system lowers the denominator degree until it becomes solvable.
pub fn pade(c: &[GaussRat], l: usize, m: usize) -> Result<Pade> {
    if c.len() < l + m + 1 {
        return Err(WkbError::InvalidInput(format!(
            "Pade [{}/{}] needs {} coefficients, got {}",
            l,
            m,
            l + m + 1,
            c.len()
        )));
    }
    let at = |k: i64| -> GaussRat { if k < 0 { GaussRat::zero() } else { c[k as usize].clone() } };
    let mut mm = m;
    loop {
        let den = if mm == 0 {
            vec![GaussRat::one()]
        } else {
            // Σ_{j=1}^{m} q_j c_{k-j} = -c_k, k = l+1..l+m
            let a: Vec<Vec<GaussRat>> = (1..=mm)
                .map(|i| (1..=mm).map(|j| at((l + i) as i64 - j as i64)).collect())
                .collect();
            let b: Vec<GaussRat> = (1..=mm).map(|i| at((l + i) as i64).neg()).collect();
            match solve(a, b) {
                Some(q) => std::iter::once(GaussRat::one()).chain(q).collect(),
                None => {
                    mm -= 1;
                    continue;
                }
            }
        };
        let num = (0..=l)
            .map(|k| {
                (0..=k.min(mm)).fold(GaussRat::zero(), |acc, j| acc.add(&den[j].mul(&c[k - j])))
            })
            .collect();
        return Ok(Pade { num, den });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_is_exact() {
        // 1/(1-2x) = Σ 2^k x^k
        let c: Vec<GaussRat> = (0..6).map(|k| GaussRat::ratio(1 << k, 1)).collect();
        let p = pade(&c, 2, 2).unwrap();
        assert_eq!(p.num, vec![GaussRat::one(), GaussRat::zero(), GaussRat::zero()]);
        assert_eq!(p.den, vec![GaussRat::one(), GaussRat::ratio(-2, 1)]);
    }
}
