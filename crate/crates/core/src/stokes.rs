//! Stokes lines `Im e^{−iα}∫₀^q √V = 0` around a simple turning point.
//!
//! Sector convention (counterclockwise from `L₀`): `S₁` between `L₀` and
//! `L₁`, `S₂` between `L₁` and `L₋₁`, `S₋₁` between `L₋₁` and `L₀`, where
//! `L_k` is the canonical ray at angle `2α/3 + 2πk/3`.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Result, WkbError};
use crate::coeff::Coeff;
use crate::quad::{adaptive, gauss_legendre};

/// Printed wherever sectors are reported.
pub const SECTOR_CONVENTION: &str =
    "S1 between L0 and L1 (ccw), S2 between L1 and L-1, S-1 between L-1 and L0; L_k at arg z = 2a/3 + 2pi k/3";

/// Angular half-width of a Stokes line for [`classify_sector`].
pub const LINE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sector {
    S1,
    S2,
    SMinus1,
    /// On the line `L_k`, `k ∈ {−1, 0, 1}`.
    OnLine(i8),
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sector::S1 => write!(f, "S1"),
            Sector::S2 => write!(f, "S2"),
            Sector::SMinus1 => write!(f, "S-1"),
            Sector::OnLine(k) => write!(f, "ON_LINE(L{})", k),
        }
    }
}

impl std::str::FromStr for Sector {
    type Err = WkbError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "S1" | "s1" => Ok(Sector::S1),
            "S2" | "s2" => Ok(Sector::S2),
            "S-1" | "s-1" | "Sm1" => Ok(Sector::SMinus1),
            other => Err(WkbError::InvalidInput(format!("unknown sector {:?}", other))),
        }
    }
}

fn wrap(theta: f64) -> f64 {
    // keep in-range angles bit-exact
    if theta > -PI && theta <= PI {
        return theta;
    }
    let t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t - 2.0 * PI
    } else {
        t
    }
}

/// Sector of `z` relative to the canonical lines for direction `alpha`.
pub fn classify_sector(z: Complex64, alpha: f64) -> Result<Sector> {
    if z.norm() == 0.0 || !z.is_finite() {
        return Err(WkbError::InvalidInput("z = 0 is the turning point".into()));
    }
    let theta = wrap(z.arg() - 2.0 * alpha / 3.0);
    for k in [-1i8, 0, 1] {
        if wrap(theta - 2.0 * PI * k as f64 / 3.0).abs() <= LINE_TOLERANCE {
            return Ok(Sector::OnLine(k));
        }
    }
    Ok(if theta > 0.0 && theta < 2.0 * PI / 3.0 {
        Sector::S1
    } else if theta < 0.0 && theta > -2.0 * PI / 3.0 {
        Sector::SMinus1
    } else {
        Sector::S2
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct StokesLine {
    pub branch_id: i8,
    /// Tangent direction at the turning point.
    pub initial_angle: f64,
    pub nodes: Vec<Complex64>,
    /// `|Im e^{−iα}∫₀^q √V|` at each node, by independent quadrature.
    pub residuals: Vec<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StokesDiagram {
    pub direction_alpha: f64,
    pub turning_points: Vec<Complex64>,
    pub lines: Vec<StokesLine>,
    pub sector_convention: &'static str,
}

impl StokesDiagram {
    /// Tangent angles of the lines at the turning point, in `(−π, π]`.
    pub fn ray_angles(&self) -> Vec<f64> {
        self.lines.iter().map(|l| wrap(l.initial_angle)).collect()
    }

    pub fn max_residual(&self) -> f64 {
        self.lines.iter().flat_map(|l| l.residuals.iter().cloned()).fold(0.0, f64::max)
    }

    /// `q_re,q_im,branch_id` rows with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("q_re,q_im,branch_id\n");
        for l in &self.lines {
            for q in &l.nodes {
                out.push_str(&format!("{:.17e},{:.17e},{}\n", q.re, q.im, l.branch_id));
            }
        }
        out
    }
}

/// Angle of the canonical line `L_k`.
pub fn canonical_angle(alpha: f64, k: i8) -> f64 {
    2.0 * alpha / 3.0 + 2.0 * PI * k as f64 / 3.0
}

/// The three rays of `(2/3)z^{3/2}` out to `|z| = extent`.
pub fn canonical_stokes_lines_to(alpha: f64, extent: f64) -> StokesDiagram {
    let lines = [0i8, 1, -1]
        .iter()
        .map(|&k| StokesLine {
            branch_id: k,
            initial_angle: canonical_angle(alpha, k),
            nodes: vec![Complex64::new(0.0, 0.0), Complex64::from_polar(extent, canonical_angle(alpha, k))],
            residuals: vec![0.0, 0.0],
        })
        .collect();
    StokesDiagram { direction_alpha: alpha, turning_points: vec![Complex64::new(0.0, 0.0)], lines, sector_convention: SECTOR_CONVENTION }
}

pub fn canonical_stokes_lines(alpha: f64) -> StokesDiagram {
    canonical_stokes_lines_to(alpha, 1.0)
}

/// Analytic potential with a simple zero at the origin.
pub trait Potential: Sync {
    fn value(&self, q: Complex64) -> Complex64;
}

impl Potential for crate::series::PuiseuxSeries<crate::coeff::GaussRat> {
    fn value(&self, q: Complex64) -> Complex64 {
        self.terms()
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (e, c)| {
                acc + c.to_c64().unwrap_or_default() * q.powi(e.to_integer() as i32)
            })
    }
}

/// A potential given by a closure.
pub struct FnPotential<F>(pub F);

impl<F: Fn(Complex64) -> Complex64 + Sync> Potential for FnPotential<F> {
    fn value(&self, q: Complex64) -> Complex64 {
        (self.0)(q)
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct TraceParams {
    /// Arc-length step.
    pub step: f64,
    /// Stop a line once `|q| ≥ extent`.
    pub extent: f64,
    /// Radius of the disk where `V` is analytic.
    pub region: f64,
    /// Hard cap on nodes per line.
    pub max_nodes: usize,
    /// Largest accepted `|Im e^{−iα}∫√V|` at a node.
    pub tolerance: f64,
}

impl Default for TraceParams {
    fn default() -> Self {
        TraceParams { step: 0.02, extent: 1.5, region: f64::INFINITY, max_nodes: 5000, tolerance: 1e-10 }
    }
}

fn sqrt_near(v: Complex64, reference: Complex64) -> Complex64 {
    let s = v.sqrt();
    if (s - reference).norm() <= (s + reference).norm() {
        s
    } else {
        -s
    }
}

struct Tracer<'a> {
    v: &'a dyn Potential,
    rot: Complex64,
}

impl Tracer<'_> {
    /// `∫_a^b √V` by 12-point Gauss–Legendre with the branch continued from `root_a`.
    fn segment(&self, a: Complex64, b: Complex64, root_a: Complex64) -> (Complex64, Complex64) {
        let rule = gauss_legendre(12);
        let half = (b - a) * 0.5;
        let mid = (a + b) * 0.5;
        // sample in order so the branch follows continuously
        let mut idx: Vec<usize> = (0..rule.nodes.len()).collect();
        idx.sort_by(|&i, &j| rule.nodes[i].partial_cmp(&rule.nodes[j]).unwrap());
        let mut r = root_a;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in idx {
            let q = mid + half * rule.nodes[i];
            r = sqrt_near(self.v.value(q), r);
            acc += r * rule.weights[i];
        }
        let root_b = sqrt_near(self.v.value(b), r);
        (acc * half, root_b)
    }

    /// `∫₀^q √V` along the straight segment, via `t = q s²`; `hint` fixes the branch at `q`.
    fn action_from_origin(&self, q: Complex64, hint: Complex64) -> Complex64 {
        // g(s) = √V(q s²)/s is smooth and nonvanishing on [0, 1]
        let g1 = sqrt_near(self.v.value(q), hint);
        let rule = gauss_legendre(24);
        let mut acc = Complex64::new(0.0, 0.0);
        for (x, w) in rule.nodes.iter().zip(&rule.weights) {
            let s = 0.5 * (x + 1.0);
            let root = sqrt_near(self.v.value(q * s * s), g1 * s);
            acc += root * 2.0 * q * s * (0.5 * w);
        }
        acc
    }

    fn im(&self, w: Complex64) -> f64 {
        (w * self.rot).im
    }
}

/// Trace the three Stokes curves of `V` from the origin.
pub fn potential_stokes_curves(v: &dyn Potential, alpha: f64, params: &TraceParams) -> Result<StokesDiagram> {
    if !(params.step > 0.0) || !(params.extent > 0.0) {
        return Err(WkbError::InvalidInput("step and extent must be positive".into()));
    }
    let h0 = 1e-6;
    let slope = v.value(Complex64::new(h0, 0.0)) / h0;
    if v.value(Complex64::new(0.0, 0.0)).norm() > 1e-12 || slope.norm() < 1e-8 {
        return Err(WkbError::NotSimpleTurningPoint);
    }
    let tr = Tracer { v, rot: Complex64::from_polar(1.0, -alpha) };
    let mut lines = Vec::new();
    for k in [0i8, 1, -1] {
        let theta = (2.0 / 3.0) * (alpha - slope.arg() / 2.0 + PI * k as f64);
        lines.push(trace_line(&tr, k, theta, params)?);
    }
    for l in &mut lines {
        l.residuals = verify_line(v, alpha, &l.nodes);
        let worst = l.residuals.iter().cloned().fold(0.0, f64::max);
        if worst > params.tolerance {
            return Err(WkbError::IdentityFailure(format!(
                "line {} has node residual {:e} above {:e}",
                l.branch_id, worst, params.tolerance
            )));
        }
    }
    Ok(StokesDiagram { direction_alpha: alpha, turning_points: vec![Complex64::new(0.0, 0.0)], lines, sector_convention: SECTOR_CONVENTION })
}

fn trace_line(tr: &Tracer, k: i8, theta: f64, p: &TraceParams) -> Result<StokesLine> {
    let dir0 = Complex64::from_polar(1.0, theta);
    let mut q = dir0 * p.step;
    // branch of √V at the first node: the one making W ≈ (2/3)√V·q real
    let mut root = tr.v.value(q).sqrt();
    let field = |root: Complex64| {
        let d = tr.rot.conj() / root;
        d / d.norm()
    };
    let sign = if (field(root) * dir0.conj()).re >= 0.0 { 1.0 } else { -1.0 };
    // the field dq ∝ e^{iα}/√V is outward for one sign of the root
    if sign < 0.0 {
        root = -root;
    }
    let mut w = tr.action_from_origin(q, root);
    // corrector at the first node
    for _ in 0..4 {
        let n = dir0 * Complex64::i();
        let dim = tr.im(root * n);
        if dim.abs() < 1e-300 {
            break;
        }
        let dq = n * (-tr.im(w) / dim);
        q += dq;
        root = sqrt_near(tr.v.value(q), root);
        w = tr.action_from_origin(q, root);
    }
    let mut nodes = vec![Complex64::new(0.0, 0.0), q];
    while q.norm() < p.extent {
        if nodes.len() >= p.max_nodes {
            break;
        }
        if q.norm() >= p.region {
            return Err(WkbError::TraceEscape(format!("{} on line {}", q, k)));
        }
        // RK2 predictor on the unit direction field
        let t1 = field(root);
        let mid = q + t1 * (0.5 * p.step);
        let rmid = sqrt_near(tr.v.value(mid), root);
        let t2 = field(rmid);
        let mut next = q + t2 * p.step;
        let (mut dw, mut rnext) = tr.segment(q, next, root);
        // corrector: move along the normal until Im vanishes
        for _ in 0..6 {
            let resid = tr.im(w + dw);
            if resid.abs() < 1e-15 * (1.0 + w.norm()) {
                break;
            }
            let n = t2 * Complex64::i();
            let dim = tr.im(rnext * n);
            if dim.abs() < 1e-300 {
                break;
            }
            next += n * (-resid / dim);
            let seg = tr.segment(q, next, root);
            dw = seg.0;
            rnext = seg.1;
        }
        if tr.v.value(next).norm() < 1e-10 {
            return Err(WkbError::TraceEscape(format!("line {} runs into another turning point near {}", k, next)));
        }
        w += dw;
        q = next;
        root = rnext;
        nodes.push(q);
    }
    Ok(StokesLine { branch_id: k, initial_angle: theta, nodes, residuals: Vec::new() })
}

/// `|Im e^{−iα}∫₀^q √V|` at every node by adaptive quadrature along the polyline.
pub fn verify_line(v: &dyn Potential, alpha: f64, nodes: &[Complex64]) -> Vec<f64> {
    let rot = Complex64::from_polar(1.0, -alpha);
    let mut out = vec![0.0];
    if nodes.len() < 2 {
        return out;
    }
    // first segment from the origin: t = q₁s², smooth integrand g(s)·2q₁s
    let q1 = nodes[1];
    let tr = Tracer { v, rot };
    let g_end = {
        // branch at q₁ chosen so W(q₁)·e^{−iα} is as real as possible
        let r = v.value(q1).sqrt();
        let wp = tr.action_from_origin(q1, r);
        let wm = tr.action_from_origin(q1, -r);
        if (wp * rot).im.abs() <= (wm * rot).im.abs() {
            r
        } else {
            -r
        }
    };
    let mut f0 = |s: f64| {
        let root = if s == 0.0 { Complex64::new(0.0, 0.0) } else { sqrt_near(v.value(q1 * s * s), g_end * s) };
        root * 2.0 * q1 * s
    };
    let (mut w, _) = adaptive(&mut f0, 0.0, 1.0, 1e-14);
    out.push((w * rot).im.abs());
    let mut root = g_end;
    for pair in nodes[1..].windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let ra = root;
        let mut f = |t: f64| {
            let q = a + (b - a) * t;
            // the segment is short, so the root stays close to its start value
            sqrt_near(v.value(q), ra) * (b - a)
        };
        let (dw, _) = adaptive(&mut f, 0.0, 1.0, 1e-14);
        w += dw;
        root = sqrt_near(v.value(b), ra);
        out.push((w * rot).im.abs());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sectors() {
        assert_eq!(classify_sector(Complex64::from_polar(1.0, PI / 3.0), 0.0).unwrap(), Sector::S1);
        assert_eq!(classify_sector(Complex64::from_polar(1.0, PI), 0.0).unwrap(), Sector::S2);
        assert_eq!(classify_sector(Complex64::from_polar(1.0, -PI / 3.0), 0.0).unwrap(), Sector::SMinus1);
        assert_eq!(classify_sector(Complex64::from_polar(1.0, 2.0 * PI / 3.0), 0.0).unwrap(), Sector::OnLine(1));
        assert!(classify_sector(Complex64::new(0.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn linear_potential_gives_rays() {
        let v = FnPotential(|q: Complex64| q);
        let d = potential_stokes_curves(&v, 0.0, &TraceParams::default()).unwrap();
        for l in &d.lines {
            let want = canonical_angle(0.0, l.branch_id);
            for q in l.nodes.iter().skip(1) {
                assert!(wrap(q.arg() - want).abs() < 1e-9, "{} vs {}", q.arg(), want);
            }
        }
    }
}
