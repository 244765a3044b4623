//! Self-verification suites.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use wkb_core::airy::{airy_borel_sum, airy_contour, airy_symbol, stokes_jump};
use wkb_core::borel::BorelParams;
use wkb_core::contour::ContourSpec;
use wkb_core::hardy::{hardy_ode_residual, hardy_s_t, OdeConvention};
use wkb_core::json::{series_from_json, series_to_json};
use wkb_core::pde::{local_decomposition, pde_taylor, pde_taylor_direct, DecompositionParams};
use wkb_core::reduction::{airy_basis_decomposition, induced_potential_f, liouville_map, master_residual, reduce_to_airy};
use wkb_core::stokes::{potential_stokes_curves, Sector, TraceParams};
use wkb_core::transport::{symbol_consistency, transport_g};
use wkb_core::{ex, Branched, Coeff, GaussRat, MPoly, PuiseuxSeries, Result};

type S = PuiseuxSeries<GaussRat>;

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = (&'static str, fn() -> Result<(bool, String)>);

fn g(n: i64, d: i64) -> GaussRat {
    GaussRat::ratio(n, d)
}

fn airy_closed_form() -> Result<(bool, String)> {
    let ok = transport_g(&S::zero(), 30)? == airy_symbol(30);
    Ok((ok, "alpha_n vs transport recursion, n <= 30".into()))
}

fn transport_consistency() -> Result<(bool, String)> {
    let r = symbol_consistency(&S::poly_i64(&[1, -2, 3]), 6)?;
    Ok((r.parity_residual == 0.0 && r.symbol_residual == 0.0, format!("parity {} symbol {}", r.parity_residual, r.symbol_residual)))
}

fn pde_routes() -> Result<(bool, String)> {
    let f = S::taylor(vec![g(1, 2), g(-1, 3), g(1, 1)], None);
    let h = S::taylor(vec![g(2, 1), g(1, 1)], None);
    let a = pde_taylor(&f, &h, 12, 12)?;
    let b = pde_taylor_direct(&f, &h, 12, 12)?;
    let d = a.max_difference(&b);
    Ok((d == 0.0, format!("max difference {}", d)))
}

fn pde_exponential() -> Result<(bool, String)> {
    let psi = pde_taylor(&S::constant(g(4, 1)), &S::constant(g(2, 1)), 12, 4)?;
    let mut fact = 1i64;
    let mut ok = true;
    for (n, a) in psi.a_list.iter().enumerate() {
        if n > 0 {
            fact *= n as i64;
        }
        ok &= *a == S::constant(g(1 << n, fact)).truncate(ex(4, 1));
    }
    Ok((ok, "F = 4, h = 2 gives a_n = 2^n/n!".into()))
}

fn liouville() -> Result<(bool, String)> {
    let z = liouville_map(&S::poly_i64(&[0, 1, 1]), 3)?;
    let ok = z.coeff(ex(2, 1)) == g(1, 5) && z.coeff(ex(3, 1)) == g(-8, 175);
    Ok((ok, "V = q + q^2 gives q + q^2/5 - 8q^3/175".into()))
}

fn induced_f_symbolic() -> Result<(bool, String)> {
    let v = PuiseuxSeries::taylor(vec![MPoly::zero(), MPoly::one(), MPoly::var(0), MPoly::var(1)], None);
    let f0 = induced_potential_f(&v, 1)?.coeff(ex(0, 1));
    let want = MPoly::var(1).scale_ratio(ex(3, 7)).sub(&MPoly::var(0).mul(&MPoly::var(0)).scale_ratio(ex(9, 35)));
    Ok((f0 == want, format!("F(0) = {:?}", f0)))
}

fn master_relation() -> Result<(bool, String)> {
    let f = S::poly_i64(&[2, -1, 0, 3]);
    let red = reduce_to_airy(&f, 8, 6)?;
    let r = master_residual(&red, &f, 6)?;
    Ok((r == 0.0, format!("residual {} through eps^8", r)))
}

fn basis_decomposition() -> Result<(bool, String)> {
    let phi = transport_g(&S::constant(g(1, 3)), 6)?;
    let d = airy_basis_decomposition(&phi, 6)?;
    let ok = d.reconstruct() == phi.eps && d.a_coeffs[0].coeff(ex(0, 1)) == g(1, 1) && d.b_coeffs[0].is_zero();
    Ok((ok, "F = 1/3, reconstruction through eps^6".into()))
}

fn hardy_identities() -> Result<(bool, String)> {
    for n in 1..=8 {
        let p = hardy_s_t(n)?;
        let (a, b) = p.identity_residuals();
        if !a.is_zero() || !b.is_zero() || !p.is_quasi_homogeneous() {
            return Ok((false, format!("n = {}", n)));
        }
    }
    let t3 = hardy_s_t(3)?.t.to_string();
    Ok((t3 == "2*zh^2 - 1/2*z", format!("T3 = {}", t3)))
}

fn json_round_trip() -> Result<(bool, String)> {
    let s = airy_symbol(6).coeff(5).truncate(ex(0, 1));
    let back: S = series_from_json(&series_to_json(&s))?;
    Ok((back == s, "series JSON round trip".into()))
}

fn borel_vs_contour() -> Result<(bool, String)> {
    let eps = Complex64::new(0.1, 0.0);
    let z = Complex64::new(1.0, 0.0);
    let b = airy_borel_sum(Branched::principal(z), eps, 24, &BorelParams::with_pade(12, 12))?;
    let c = airy_contour(z, eps, &ContourSpec::default())?;
    let r = b.rel_diff(&c);
    Ok((r < 1e-8, format!("rel error {:.3e}", r)))
}

fn jump() -> Result<(bool, String)> {
    let j = stokes_jump(Branched::new(0.8, 2.0 * PI / 3.0), Complex64::new(0.05, 0.0), 24)?;
    Ok((j.rel_error < 1e-4, format!("rel error {:.3e}", j.rel_error)))
}

fn tracing() -> Result<(bool, String)> {
    let v = S::taylor(vec![g(0, 1), g(1, 1), g(1, 2)], None);
    let d = potential_stokes_curves(&v, 0.0, &TraceParams { extent: 1.0, ..Default::default() })?;
    let r = d.max_residual();
    Ok((r < 1e-10, format!("max |Im integral| {:.3e}", r)))
}

fn hardy_ode() -> Result<(bool, String)> {
    let p = hardy_s_t(2)?;
    let c = hardy_ode_residual(&p, Complex64::new(1.0, 0.0), Complex64::new(0.1, 0.0), OdeConvention::EpsSquared, &ContourSpec::default())?;
    Ok((c.relative_residual < 1e-6, format!("relative residual {:.3e}", c.relative_residual)))
}

fn sector_one() -> Result<(bool, String)> {
    let z = Complex64::from_polar(0.6, 0.9);
    let r = local_decomposition(&S::zero(), &S::zero(), z, &[Complex64::new(0.05, 0.0)], Sector::S1, &DecompositionParams::default())?;
    let e = r.max_rel_error();
    Ok((e < 1e-6, format!("rel error {:.3e}", e)))
}

const IDENTITIES: &[Check] = &[
    ("airy_closed_form", airy_closed_form),
    ("transport_consistency", transport_consistency),
    ("pde_routes_agree", pde_routes),
    ("pde_exponential_case", pde_exponential),
    ("liouville_map", liouville),
    ("induced_potential_symbolic", induced_f_symbolic),
    ("master_relation", master_relation),
    ("airy_basis_decomposition", basis_decomposition),
    ("hardy_identities", hardy_identities),
    ("series_json_round_trip", json_round_trip),
];

const NUMERIC: &[Check] = &[
    ("borel_vs_contour", borel_vs_contour),
    ("stokes_jump", jump),
    ("stokes_tracing", tracing),
    ("hardy_ode", hardy_ode),
    ("sector_s1_decomposition", sector_one),
];

pub fn suite(name: &str) -> Option<Vec<CheckOutcome>> {
    let checks: Vec<Check> = match name {
        "identities" => IDENTITIES.to_vec(),
        "numeric" => NUMERIC.to_vec(),
        "all" => IDENTITIES.iter().chain(NUMERIC).cloned().collect(),
        _ => return None,
    };
    Some(
        checks
            .par_iter()
            .map(|(name, f)| match f() {
                Ok((passed, detail)) => CheckOutcome { name, passed, detail },
                Err(e) => CheckOutcome { name, passed: false, detail: e.to_string() },
            })
            .collect(),
    )
}
