//! Browser bindings: each export takes plain numbers or JSON text and
//! returns JSON text for the page to draw.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use num_complex::Complex64;
use serde::Serialize;
use wasm_bindgen::prelude::*;

use wkb_core::airy::{airy_borel_sum, airy_contour};
use wkb_core::borel::BorelParams;
use wkb_core::contour::ContourSpec;
use wkb_core::hardy::{hardy_phi_eval, hardy_s_t};
use wkb_core::json::parse_series;
use wkb_core::stokes::{canonical_stokes_lines_to, potential_stokes_curves, TraceParams};
use wkb_core::{Branched, GaussRat};

#[derive(Serialize)]
struct Polyline {
    branch_id: i8,
    points: Vec<(f64, f64)>,
}

#[derive(Serialize)]
struct StokesView {
    lines: Vec<Polyline>,
    ray_angles: Vec<f64>,
    max_residual: f64,
}

fn to_json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

/// Stokes curves of `V` (series JSON, or empty for the canonical model).
pub fn stokes_view(v: &str, alpha: f64, extent: f64) -> Result<String, String> {
    let diagram = if v.trim().is_empty() {
        canonical_stokes_lines_to(alpha, extent)
    } else {
        let pot = parse_series::<GaussRat>(v).map_err(|e| e.to_string())?;
        potential_stokes_curves(&pot, alpha, &TraceParams { extent, ..Default::default() }).map_err(|e| e.to_string())?
    };
    let lines = diagram
        .lines
        .iter()
        .map(|l| Polyline { branch_id: l.branch_id, points: l.nodes.iter().map(|q| (q.re, q.im)).collect() })
        .collect();
    to_json(&StokesView { lines, ray_angles: diagram.ray_angles(), max_residual: diagram.max_residual() })
}

#[derive(Serialize)]
struct AiryPoint {
    eps: f64,
    borel: (f64, f64),
    contour: (f64, f64),
    rel_error: f64,
}

/// Borel-Pade sum against the contour integral over a log-spaced ε grid.
pub fn airy_sweep(z_re: f64, z_im: f64, eps_min: f64, eps_max: f64, count: usize, orders: usize) -> Result<String, String> {
    if !(eps_min > 0.0 && eps_max >= eps_min) || count == 0 {
        return Err("need 0 < eps_min <= eps_max and count >= 1".into());
    }
    let z = Complex64::new(z_re, z_im);
    let params = BorelParams::for_order(orders);
    let spec = ContourSpec::default();
    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        let t = if count == 1 { 0.0 } else { k as f64 / (count - 1) as f64 };
        let eps = eps_min * (eps_max / eps_min).powf(t);
        let e = Complex64::new(eps, 0.0);
        let b = airy_borel_sum(Branched::principal(z), e, orders, &params).map_err(|e| e.to_string())?;
        let c = airy_contour(z, e, &spec).map_err(|e| e.to_string())?;
        out.push(AiryPoint { eps, borel: (b.value.re, b.value.im), contour: (c.value.re, c.value.im), rel_error: b.rel_diff(&c) });
    }
    to_json(&out)
}

#[derive(Serialize)]
struct HardyView {
    s: String,
    t: String,
    samples: Vec<(f64, f64, f64)>,
}

/// `Sₙ`, `Tₙ` and `Φₙ(x, ε)` for real `x` in `[x_min, x_max]` (all positive).
pub fn hardy_profile(n: usize, eps: f64, x_min: f64, x_max: f64, count: usize) -> Result<String, String> {
    if !(x_min > 0.0 && x_max >= x_min) || count == 0 || !(eps > 0.0) {
        return Err("need 0 < x_min <= x_max, eps > 0 and count >= 1".into());
    }
    let pair = hardy_s_t(n).map_err(|e| e.to_string())?;
    let spec = ContourSpec::default();
    let mut samples = Vec::with_capacity(count);
    for k in 0..count {
        let t = if count == 1 { 0.0 } else { k as f64 / (count - 1) as f64 };
        let x = x_min + (x_max - x_min) * t;
        let v = hardy_phi_eval(&pair, Complex64::new(x, 0.0), Complex64::new(eps, 0.0), &spec).map_err(|e| e.to_string())?;
        samples.push((x, v.value.re, v.value.im));
    }
    to_json(&HardyView { s: pair.s.to_string(), t: pair.t.to_string(), samples })
}

#[wasm_bindgen(js_name = stokesDiagram)]
pub fn stokes_diagram_js(v: &str, alpha: f64, extent: f64) -> Result<String, JsError> {
    stokes_view(v, alpha, extent).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = airySweep)]
pub fn airy_sweep_js(z_re: f64, z_im: f64, eps_min: f64, eps_max: f64, count: usize, orders: usize) -> Result<String, JsError> {
    airy_sweep(z_re, z_im, eps_min, eps_max, count, orders).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = hardyProfile)]
pub fn hardy_profile_js(n: usize, eps: f64, x_min: f64, x_max: f64, count: usize) -> Result<String, JsError> {
    hardy_profile(n, eps, x_min, x_max, count).map_err(|e| JsError::new(&e))
}
