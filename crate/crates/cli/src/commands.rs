//! One function per subcommand; each returns JSON plus optional plot rows.

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{json, Value};

use wkb_core::airy::{airy_borel_sum, airy_contour};
use wkb_core::borel::{BorelParams, LaplaceResult};
use wkb_core::contour::ContourSpec;
use wkb_core::hardy::{hardy_ode_residual, hardy_phi_eval, hardy_polynomial, hardy_s_t, OdeConvention};
use wkb_core::json::series_to_json;
use wkb_core::pde::{confluent_eval, convergence_radius, disk_sup_norm, pde_residual, pde_taylor};
use wkb_core::prec::Precision;
use wkb_core::reduction::{master_residual, schrodinger_pipeline};
use wkb_core::stokes::{canonical_stokes_lines_to, classify_sector, potential_stokes_curves, StokesDiagram, TraceParams};
use wkb_core::transport::{symbol_consistency, symbol_lateral_sum, transport_g};
use wkb_core::{Branched, GaussRat, PuiseuxSeries, WkbError};

use crate::args::{load_optional, load_polyline, load_series};
use crate::CliError;

pub struct Report {
    pub json: Value,
    pub csv: Option<String>,
}

fn series_list(list: &[PuiseuxSeries<GaussRat>]) -> Value {
    Value::Array(list.iter().map(series_to_json).collect())
}

fn c_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn extended(r: &LaplaceResult) -> Value {
    r.extended.as_ref().map_or(Value::Null, |x| json!(x.to_strings()))
}

fn csv_row(cells: &[String]) -> String {
    let mut s = cells.join(",");
    s.push('\n');
    s
}

fn e17(x: f64) -> String {
    format!("{:.17e}", x)
}

pub fn airy(z: Complex64, eps: &[Complex64], orders: usize, pade: Option<(usize, usize)>, precision: Precision) -> Result<Report, CliError> {
    let (l, m) = pade.unwrap_or((orders / 2, orders / 2));
    if l + m > orders {
        return Err(CliError::Usage(format!("Pade ({},{}) needs at least {} orders", l, m, l + m)));
    }
    let params = BorelParams::with_pade(l, m).at_precision(precision);
    let spec = ContourSpec::default().at_precision(precision);
    let zb = Branched::principal(z);
    let rows = eps
        .par_iter()
        .map(|&e| -> Result<Value, WkbError> {
            let b = airy_borel_sum(zb, e, orders, &params)?;
            let c = airy_contour(z, e, &spec)?;
            let mut v = json!({
                "z": c_json(z),
                "eps": c_json(e),
                "value": c_json(b.value),
                "est_error": b.est_error,
                "oracle": c_json(c.value),
                "rel_error": b.rel_diff(&c),
            });
            if !precision.is_double() {
                v["value_digits"] = extended(&b);
                v["oracle_digits"] = extended(&c);
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut csv = csv_row(&["eps_re", "eps_im", "value_re", "value_im", "oracle_re", "oracle_im", "rel_error"].map(String::from));
    for r in &rows {
        let g = |k: &str, i: usize| e17(r[k][i].as_f64().unwrap_or(f64::NAN));
        csv.push_str(&csv_row(&[g("eps", 0), g("eps", 1), g("value", 0), g("value", 1), g("oracle", 0), g("oracle", 1), e17(r["rel_error"].as_f64().unwrap_or(f64::NAN))]));
    }
    let json = json!({
        "command": "airy",
        "params": {"orders": orders, "pade": [l, m], "precision": precision.digits(), "contour_tolerance": spec.tolerance},
        "results": if rows.len() == 1 { rows[0].clone() } else { Value::Array(rows) },
    });
    Ok(Report { json, csv: Some(csv) })
}

pub fn transport(f: &Option<String>, orders: usize) -> Result<Report, CliError> {
    let f = load_optional(f)?;
    let sym = transport_g(&f, orders)?;
    let report = symbol_consistency(&f, orders)?;
    let mut csv = csv_row(&["n".into(), "min_exp".into(), "max_abs_coeff".into()]);
    for (n, g) in sym.eps.coeffs.iter().enumerate() {
        csv.push_str(&csv_row(&[n.to_string(), g.min_exp().to_string(), e17(g.max_magnitude())]));
    }
    let json = json!({
        "command": "transport",
        "F": series_to_json(&f),
        "prefactor": {"sign": sym.sign, "z_power": sym.prefactor_exp.to_string()},
        "g": series_list(&sym.eps.coeffs),
        "consistency": report,
    });
    Ok(Report { json, csv: Some(csv) })
}

pub fn pde(f: &Option<String>, h: &Option<String>, (nx, nz): (usize, usize), radii: (f64, f64, f64)) -> Result<Report, CliError> {
    let (f, h) = (load_optional(f)?, load_optional(h)?);
    let psi = pde_taylor(&f, &h, nx, nz)?;
    let (r0, r1, big_r) = radii;
    let radius = convergence_radius(r0, r1, big_r, disk_sup_norm(&f, r1)?, disk_sup_norm(&h, r1)?)?;
    let mut csv = csv_row(&["n".into(), "max_abs_coeff".into()]);
    for (n, a) in psi.a_list.iter().enumerate() {
        csv.push_str(&csv_row(&[n.to_string(), e17(a.max_magnitude())]));
    }
    let json = json!({
        "command": "pde",
        "orders": [nx, nz],
        "a": series_list(&psi.a_list),
        "residual": pde_residual(&psi, &f),
        "radius": radius,
    });
    Ok(Report { json, csv: Some(csv) })
}

pub fn confluent(
    f: &Option<String>,
    h: &Option<String>,
    z: Complex64,
    eps: &[Complex64],
    contour: &str,
    precision: Precision,
) -> Result<Report, CliError> {
    let (f, h) = (load_optional(f)?, load_optional(h)?);
    let spec = match contour {
        "default" => ContourSpec::default(),
        path => ContourSpec::polyline(load_polyline(path)?),
    }
    .at_precision(precision);
    let results = eps
        .par_iter()
        .map(|&e| confluent_eval(&f, &h, z, e, &spec))
        .collect::<Result<Vec<_>, _>>()?;
    let mut csv = csv_row(&["eps_re", "eps_im", "value_re", "value_im", "est_error"].map(String::from));
    let rows: Vec<Value> = eps
        .iter()
        .zip(&results)
        .map(|(e, r)| {
            csv.push_str(&csv_row(&[e17(e.re), e17(e.im), e17(r.value.re), e17(r.value.im), e17(r.est_error)]));
            json!({"eps": c_json(*e), "value": c_json(r.value), "est_error": r.est_error, "nodes_used": r.nodes_used})
        })
        .collect();
    let json = json!({
        "command": "confluent",
        "z": c_json(z),
        "sector": classify_sector(z, 0.0).map(|s| s.to_string()).unwrap_or_else(|_| "turning point".into()),
        "params": {"precision": precision.digits(), "contour": contour, "tolerance": spec.tolerance},
        "results": rows,
    });
    Ok(Report { json, csv: Some(csv) })
}

#[allow(clippy::too_many_arguments)]
pub fn borel(
    f: &Option<String>,
    z: Complex64,
    arg: Option<f64>,
    eps: &[Complex64],
    orders: usize,
    pade: Option<(usize, usize)>,
    phi: f64,
    precision: Precision,
) -> Result<Report, CliError> {
    let f = load_optional(f)?;
    let sym = transport_g(&f, orders)?;
    let (l, m) = pade.unwrap_or((orders / 2, orders / 2));
    let params = BorelParams::with_pade(l, m).at_precision(precision);
    let zb = match arg {
        Some(a) => Branched::new(z.norm(), a),
        None => Branched::principal(z),
    };
    let results = eps
        .par_iter()
        .map(|&e| symbol_lateral_sum(&sym, zb, e, phi, &params))
        .collect::<Result<Vec<_>, _>>()?;
    let mut csv = csv_row(&["eps_re", "eps_im", "value_re", "value_im", "est_error"].map(String::from));
    let rows: Vec<Value> = eps
        .iter()
        .zip(&results)
        .map(|(e, r)| {
            csv.push_str(&csv_row(&[e17(e.re), e17(e.im), e17(r.value.re), e17(r.value.im), e17(r.est_error)]));
            json!({"eps": c_json(*e), "value": c_json(r.value), "est_error": r.est_error, "nodes_used": r.nodes_used})
        })
        .collect();
    let json = json!({
        "command": "borel",
        "z": c_json(z),
        "arg": zb.arg,
        "params": {"orders": orders, "pade": [l, m], "phi": phi, "precision": precision.digits()},
        "results": rows,
    });
    Ok(Report { json, csv: Some(csv) })
}

pub fn stokes(v: &str, alpha: f64, extent: f64, step: f64) -> Result<Report, CliError> {
    let diagram: StokesDiagram = if v == "builtin:canonical" {
        canonical_stokes_lines_to(alpha, extent)
    } else {
        let pot = load_series(v)?;
        let params = TraceParams { step, extent, ..Default::default() };
        potential_stokes_curves(&pot, alpha, &params)?
    };
    let json = json!({
        "command": "stokes",
        "alpha": alpha,
        "extent": extent,
        "ray_angles": diagram.ray_angles(),
        "max_residual": diagram.max_residual(),
        "nodes_per_line": diagram.lines.iter().map(|l| l.nodes.len()).collect::<Vec<_>>(),
        "sector_convention": diagram.sector_convention,
    });
    Ok(Report { json, csv: Some(diagram.to_csv()) })
}

pub fn reduce(v: &str, orders: usize) -> Result<Report, CliError> {
    let v = load_series(v)?;
    let out = schrodinger_pipeline(&v, orders)?;
    let f0 = out.f.coeff(wkb_core::ex(0, 1));
    let canonical_residual = master_residual(&out.canonical, &out.f, orders)?;
    let mut csv = csv_row(&["k".into(), "s_k_at_0".into()]);
    for (k, s) in out.composed.s_coeffs.iter().enumerate() {
        csv.push_str(&csv_row(&[k.to_string(), e17(s.coeff(wkb_core::ex(0, 1)).re_f64())]));
    }
    let json = json!({
        "command": "reduce",
        "orders": orders,
        "z_map": series_to_json(&out.z_map),
        "F": series_to_json(&out.f),
        "F0": f0.re_f64(),
        "F0_exact": wkb_core::json::JsonCoeff::to_json(&f0),
        "s_canonical": series_list(&out.canonical.s_coeffs),
        "s_composed": series_list(&out.composed.s_coeffs),
        "residual": {"canonical": canonical_residual, "composed": out.residual},
    });
    Ok(Report { json, csv: Some(csv) })
}

pub fn hardy(n: usize, eval: Option<(Complex64, Complex64)>, convention: OdeConvention, precision: Precision) -> Result<Report, CliError> {
    let pair = hardy_s_t(n)?;
    let p = hardy_polynomial(n + 2)?;
    let (r1, r2) = pair.identity_residuals();
    let mut json = json!({
        "command": "hardy",
        "n": n,
        "P": p.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "S": pair.s.coefficient_list(),
        "T": pair.t.coefficient_list(),
        "S_text": pair.s.to_string(),
        "T_text": pair.t.to_string(),
        "identities_hold": r1.is_zero() && r2.is_zero(),
        "quasi_homogeneous": pair.is_quasi_homogeneous(),
    });
    let mut csv = None;
    if let Some((z, eps)) = eval {
        let spec = ContourSpec::default().at_precision(precision);
        let value = hardy_phi_eval(&pair, z, eps, &spec)?;
        let check = hardy_ode_residual(&pair, z, eps, convention, &ContourSpec::default())?;
        json["eval"] = json!({
            "z": c_json(z),
            "eps": c_json(eps),
            "value": c_json(value.value),
            "est_error": value.est_error,
            "ode": check,
        });
        // profile along the ray through z, t·z for t in [1/2, 3/2]
        let samples: Vec<Complex64> = (0..=40).map(|k| z * (0.5 + 0.025 * k as f64)).collect();
        let values = samples
            .par_iter()
            .map(|&w| hardy_phi_eval(&pair, w, eps, &spec))
            .collect::<Result<Vec<_>, _>>()?;
        let mut rows = csv_row(&["z_re", "z_im", "value_re", "value_im"].map(String::from));
        for (w, r) in samples.iter().zip(&values) {
            rows.push_str(&csv_row(&[e17(w.re), e17(w.im), e17(r.value.re), e17(r.value.im)]));
        }
        csv = Some(rows);
    }
    Ok(Report { json, csv })
}

trait RealPart {
    fn re_f64(&self) -> f64;
}

impl RealPart for GaussRat {
    fn re_f64(&self) -> f64 {
        wkb_core::coeff::big_to_f64(&self.re)
    }
}
