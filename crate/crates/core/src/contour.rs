//! Saddle-point contour integration of `∫ e^{−P(ẑ)/ε} A(ẑ) dẑ` for a
//! polynomial phase `P`.
//!
//! The contour joining two asymptotic valleys is assembled from steepest
//! descent branches through saddles: every simple saddle contributes an edge
//! between the two valleys its descent branches reach, and a breadth-first
//! search picks a chain of edges from the start valley to the end valley.
//! Branches are traced numerically, stopped once `Re f` has dropped by a set
//! depth, and integrated segment by segment with Gauss–Legendre rules.

use std::collections::VecDeque;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::borel::LaplaceResult;
use crate::coeff::GaussRat;
use crate::error::{Result, WkbError};
use crate::poly::{derivative, horner, roots};
use crate::prec::{horner_s, MpComplex, Precision, Scalar};

/// Bound on the variation of the phase across one quadrature piece.
const PIECE_VARIATION: f64 = 4.0;

/// Which path to integrate along.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum PathSpec {
    /// The model's default valley pair.
    Default,
    /// From valley `from` to valley `to` (indices of the valley centers).
    Valleys { from: i64, to: i64 },
    /// An explicit polyline; its ends must sit deep in descent regions.
    Polyline(Vec<Complex64>),
}

/// Truncated integration path with quadrature parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContourSpec {
    pub path: PathSpec,
    /// Gauss–Legendre nodes per segment; the error estimate halves this.
    pub nodes_per_segment: usize,
    /// Relative error above which the quadrature is rejected.
    pub tolerance: f64,
    /// Depth of `Re f` descent below the saddle before a branch is cut.
    pub depth: f64,
    /// Radius in `x = z − ẑ²` of the amplitude's convergence domain.
    pub x_radius: Option<f64>,
    pub precision: Precision,
}

impl Default for ContourSpec {
    fn default() -> Self {
        ContourSpec { path: PathSpec::Default, nodes_per_segment: 8, tolerance: 1e-8, depth: 60.0, x_radius: None, precision: Precision::DOUBLE }
    }
}

impl ContourSpec {
    pub fn polyline(nodes: Vec<Complex64>) -> Self {
        ContourSpec { path: PathSpec::Polyline(nodes), ..Default::default() }
    }
    pub fn valleys(from: i64, to: i64) -> Self {
        ContourSpec { path: PathSpec::Valleys { from, to }, ..Default::default() }
    }

    pub fn at_precision(mut self, precision: Precision) -> Self {
        self.precision = precision;
        self
    }

    fn effective_depth(&self) -> f64 {
        self.depth.max(self.precision.log_cutoff() + 5.0)
    }

    fn rule_size(&self) -> usize {
        self.nodes_per_segment.max(4 + self.precision.digits() as usize / 2)
    }
}

/// Amplitude `A(ẑ)` multiplying the exponential.
#[derive(Clone, Copy)]
pub enum Amplitude<'a> {
    Unit,
    /// Evaluated in `f64` and lifted to the working precision.
    Numeric(&'a (dyn Fn(Complex64) -> Complex64 + Sync)),
}

impl Amplitude<'_> {
    pub fn at_f64(&self, w: Complex64) -> Complex64 {
        match self {
            Amplitude::Unit => Complex64::new(1.0, 0.0),
            Amplitude::Numeric(f) => f(w),
        }
    }

    fn at<S: Scalar>(&self, w: &S) -> Option<S> {
        match self {
            Amplitude::Unit => None,
            Amplitude::Numeric(f) => Some(S::lift(f(w.to_c64()), w.ctx())),
        }
    }
}

/// Result plus the polylines actually integrated (for plotting).
#[derive(Clone, Debug, Serialize)]
pub struct ContourOutcome {
    pub result: LaplaceResult,
    pub pieces: Vec<Vec<Complex64>>,
    pub saddles_used: Vec<Complex64>,
    pub truncated: bool,
}

struct Branch {
    nodes: Vec<Complex64>,
    valley: Option<i64>,
}

/// Phase `f(ẑ) = −P(ẑ)/ε` with its steepest-descent geometry.
pub struct Phase {
    exact: Vec<GaussRat>,
    p: Vec<Complex64>,
    dp: Vec<Complex64>,
    ddp: Vec<Complex64>,
    eps: Complex64,
    degree: usize,
    saddles: Vec<Complex64>,
    scale: f64,
}

impl Phase {
    /// `p` holds the coefficients of `P` in increasing degree.
    pub fn new(p: Vec<Complex64>, eps: Complex64) -> Result<Self> {
        let exact = p
            .iter()
            .map(|c| GaussRat::from_c64(*c).ok_or_else(|| WkbError::InvalidInput("non-finite phase coefficient".into())))
            .collect::<Result<Vec<_>>>()?;
        Self::exact(exact, eps)
    }

    /// Phase with exactly known coefficients, used at extended precision.
    pub fn exact(mut exact: Vec<GaussRat>, eps: Complex64) -> Result<Self> {
        use crate::coeff::Coeff;
        while exact.len() > 1 && exact.last().is_some_and(|c| c.is_zero()) {
            exact.pop();
        }
        let p: Vec<Complex64> = exact.iter().map(|g| Complex64::from_gauss(g, ())).collect();
        if p.len() < 3 {
            return Err(WkbError::InvalidInput("phase must have degree at least 2".into()));
        }
        if eps.norm() == 0.0 || !eps.is_finite() {
            return Err(WkbError::InvalidInput("eps must be finite and nonzero".into()));
        }
        let dp = derivative(&p);
        let ddp = derivative(&dp);
        let degree = p.len() - 1;
        let saddles = roots(&dp);
        let lead = p[degree];
        let natural = (eps.norm() / lead.norm()).powf(1.0 / degree as f64);
        let spread = saddles.iter().map(|s| s.norm()).fold(0.0, f64::max);
        Ok(Phase { exact, p, dp, ddp, eps, degree, saddles, scale: natural.max(spread).max(1e-8) })
    }

    pub fn saddles(&self) -> &[Complex64] {
        &self.saddles
    }

    pub fn f(&self, w: Complex64) -> Complex64 {
        -horner(&self.p, w) / self.eps
    }

    fn df(&self, w: Complex64) -> Complex64 {
        -horner(&self.dp, w) / self.eps
    }

    fn ddf(&self, w: Complex64) -> Complex64 {
        -horner(&self.ddp, w) / self.eps
    }

    /// Number of valleys at infinity.
    pub fn valley_count(&self) -> i64 {
        self.degree as i64
    }

    /// Direction of the center of valley `k`.
    pub fn valley_angle(&self, k: i64) -> f64 {
        let m = self.degree as f64;
        let c = self.p[self.degree];
        let kk = k.rem_euclid(self.degree as i64) as f64;
        (self.eps.arg() - c.arg() + 2.0 * PI * kk) / m
    }

    fn classify(&self, w: Complex64) -> Option<i64> {
        let m = self.degree as i64;
        let half = PI / (2.0 * self.degree as f64);
        (0..m).find(|&k| {
            let d = (w.arg() - self.valley_angle(k) + PI).rem_euclid(2.0 * PI) - PI;
            d.abs() < 0.5 * half
        })
    }

    fn nearest_other_saddle(&self, w: Complex64, own: usize) -> f64 {
        self.saddles
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != own)
            .map(|(_, s)| (w - s).norm())
            .fold(f64::INFINITY, f64::min)
    }

    fn direction(&self, w: Complex64) -> Complex64 {
        let d = self.df(w).conj();
        let n = d.norm();
        if n == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            -d / n
        }
    }

    fn rk4(&self, w: Complex64, h: f64) -> Complex64 {
        let k1 = self.direction(w);
        let k2 = self.direction(w + k1 * (0.5 * h));
        let k3 = self.direction(w + k2 * (0.5 * h));
        let k4 = self.direction(w + k3 * h);
        w + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
    }

    /// Trace one steepest-descent branch out of saddle `idx`.
    fn trace(&self, idx: usize, sign: f64, depth: f64, domain: &dyn Fn(Complex64) -> bool) -> (Branch, bool) {
        let s = self.saddles[idx];
        let f0 = self.f(s).re;
        let f2 = self.ddf(s);
        let degenerate = Branch { nodes: vec![s], valley: None };
        if f2.norm() < 1e-14 * self.f(s).norm().max(1.0) / (self.scale * self.scale) {
            return (degenerate, false);
        }
        // f ≈ f0 + f2 (w−s)²/2 decreases fastest along e^{i(π−arg f2)/2}
        let d = Complex64::from_polar(sign, (PI - f2.arg()) / 2.0);
        let near = 1e-4 * self.scale;
        let h0 = (0.5 / f2.norm()).sqrt().min(0.2 * self.nearest_other_saddle(s, idx));
        let mut w = s + d * h0;
        let mut nodes = vec![s, w];
        let mut truncated = false;
        let mut deep = false;
        for _ in 0..20000 {
            if self.f(w).re < f0 - depth {
                deep = true;
                break;
            }
            if !domain(w) {
                truncated = true;
                break;
            }
            let g = self.df(w).norm();
            let other = self.nearest_other_saddle(w, idx);
            if other < near || g == 0.0 {
                return (degenerate, false);
            }
            let h = (0.5 / g).min(0.1 * ((w - s).norm() + h0)).min(0.25 * other).min(0.1 * self.scale.max((w).norm()));
            w = self.rk4(w, h);
            nodes.push(w);
        }
        if !deep && !truncated {
            return (degenerate, false);
        }
        // keep going (geometry only) until the valley is unambiguous
        let mut probe = w;
        let mut valley = None;
        for _ in 0..4000 {
            if probe.norm() > 2.0 * self.scale {
                if let Some(k) = self.classify(probe) {
                    valley = Some(k);
                    break;
                }
            }
            let other = self.nearest_other_saddle(probe, idx);
            if other < near {
                break;
            }
            let h = (0.05 * probe.norm().max(self.scale)).min(0.25 * other);
            probe = self.rk4(probe, h);
        }
        (Branch { nodes, valley }, truncated)
    }

    fn variation(&self, a: Complex64, b: Complex64) -> f64 {
        let len = b - a;
        let mid = 0.5 * (a + b);
        (self.df(mid) * len).norm() + 0.5 * (self.ddf(mid) * len * len).norm()
    }

    /// Coarsen a traced polyline: consecutive nodes are merged while the
    /// chord keeps the phase variation below the per-piece bound.
    fn chords(&self, nodes: &[Complex64]) -> Vec<Complex64> {
        let mut out = vec![nodes[0]];
        let mut anchor = nodes[0];
        for k in 1..nodes.len() {
            let next = nodes[k];
            if k + 1 < nodes.len() && self.variation(anchor, nodes[k + 1]) <= PIECE_VARIATION {
                continue;
            }
            out.push(next);
            anchor = next;
        }
        out
    }

    /// Fine and coarse Gauss–Legendre sums along a polyline.
    fn integrate_polyline<S: Scalar>(&self, nodes: &[Complex64], amp: Amplitude, n: usize, ctx: S::Ctx) -> (S, S) {
        let fine = S::legendre(2 * n, ctx);
        let coarse = S::legendre(n, ctx);
        let coeffs: Vec<S> = self.exact.iter().map(|g| S::from_gauss(g, ctx)).collect();
        let minv = S::one(ctx).div(&S::lift(self.eps, ctx)).neg();
        let mut vf = S::zero(ctx);
        let mut vc = S::zero(ctx);
        for seg in self.chords(nodes).windows(2) {
            let (a, b) = (seg[0], seg[1]);
            let len = b - a;
            // subdivide so that f varies by a bounded amount per piece
            let pieces = ((self.variation(a, b) / PIECE_VARIATION).ceil() as usize).clamp(1, 4000);
            let a_s = S::lift(a, ctx);
            let step = S::lift(len, ctx).div(&S::lift(Complex64::new(pieces as f64, 0.0), ctx));
            let half = step.mul_c(Complex64::new(0.5, 0.0));
            for k in 0..pieces {
                let c = a_s.add(&step.mul_c(Complex64::new(k as f64 + 0.5, 0.0)));
                for (rule, acc) in [(&fine, &mut vf), (&coarse, &mut vc)] {
                    let mut piece = S::zero(ctx);
                    for (x, wt) in rule.iter() {
                        let w = c.add(&half.mul(x));
                        let mut term = horner_s(&coeffs, &w).mul(&minv).exp();
                        if let Some(av) = amp.at(&w) {
                            term = term.mul(&av);
                        }
                        piece = piece.add(&term.mul(wt));
                    }
                    *acc = acc.add(&piece.mul(&half));
                }
            }
        }
        (vf, vc)
    }

    fn tail_bound(&self, end: Complex64, amp: Amplitude) -> f64 {
        (self.f(end).exp() * amp.at_f64(end)).norm() / self.df(end).norm().max(1e-300)
    }

    /// Integrate from valley `from` to valley `to` along a saddle chain.
    pub fn integrate_valleys(
        &self,
        from: i64,
        to: i64,
        amp: Amplitude,
        spec: &ContourSpec,
        domain: &dyn Fn(Complex64) -> bool,
    ) -> Result<ContourOutcome> {
        let m = self.valley_count();
        let (from, to) = (from.rem_euclid(m), to.rem_euclid(m));
        if from == to {
            return Err(WkbError::InvalidInput("start and end valleys coincide".into()));
        }
        // edges: (valley_a, valley_b, saddle index, branch_a, branch_b)
        let mut edges = Vec::new();
        let mut any_trunc = false;
        for idx in 0..self.saddles.len() {
            let (b1, t1) = self.trace(idx, 1.0, spec.effective_depth(), domain);
            let (b2, t2) = self.trace(idx, -1.0, spec.effective_depth(), domain);
            if let (Some(v1), Some(v2)) = (b1.valley, b2.valley) {
                if v1 != v2 {
                    edges.push((v1, v2, idx, b1, b2, t1 || t2));
                }
            }
        }
        // breadth-first search over valleys
        let mut prev: Vec<Option<(usize, bool)>> = vec![None; m as usize];
        let mut seen = vec![false; m as usize];
        seen[from as usize] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for (ei, e) in edges.iter().enumerate() {
                let (next, forward) = if e.0 == v {
                    (e.1, true)
                } else if e.1 == v {
                    (e.0, false)
                } else {
                    continue;
                };
                if !seen[next as usize] {
                    seen[next as usize] = true;
                    prev[next as usize] = Some((ei, forward));
                    queue.push_back(next);
                }
            }
        }
        if !seen[to as usize] {
            return Err(WkbError::ContourFailure(format!(
                "no saddle chain joins valley {} to valley {} (Stokes configuration?)",
                from, to
            )));
        }
        let mut chain = Vec::new();
        let mut v = to;
        while v != from {
            let (ei, forward) = prev[v as usize].unwrap();
            chain.push((ei, forward));
            let e = &edges[ei];
            v = if forward { e.0 } else { e.1 };
        }
        chain.reverse();
        let mut pieces = Vec::new();
        let mut used = Vec::new();
        for (ei, forward) in chain {
            let e = &edges[ei];
            any_trunc |= e.5;
            // in along the branch from the entry valley, out along the other
            let (inward, outward) = if forward { (&e.3, &e.4) } else { (&e.4, &e.3) };
            let mut path: Vec<Complex64> = inward.nodes.iter().rev().cloned().collect();
            path.extend(outward.nodes.iter().skip(1));
            pieces.push(path);
            used.push(self.saddles[e.2]);
        }
        let result = self.sum_pieces(&pieces, amp, spec)?;
        Ok(ContourOutcome { result, pieces, saddles_used: used, truncated: any_trunc })
    }

    fn sum_pieces(&self, pieces: &[Vec<Complex64>], amp: Amplitude, spec: &ContourSpec) -> Result<LaplaceResult> {
        fn run<S: Scalar>(ph: &Phase, pieces: &[Vec<Complex64>], amp: Amplitude, spec: &ContourSpec, ctx: S::Ctx) -> Result<LaplaceResult> {
            let n = spec.rule_size();
            let mut total = S::zero(ctx);
            let mut coarse = S::zero(ctx);
            let mut tail = 0.0;
            for path in pieces {
                let (f, c) = ph.integrate_polyline::<S>(path, amp, n, ctx);
                total = total.add(&f);
                coarse = coarse.add(&c);
                tail += ph.tail_bound(path[0], amp) + ph.tail_bound(*path.last().unwrap(), amp);
            }
            let est = total.sub(&coarse).norm() + tail;
            let nodes: usize = pieces.iter().map(|p| p.len()).sum::<usize>() * 3 * n;
            let value = total.to_c64();
            if !(est <= spec.tolerance * value.norm()) {
                return Err(WkbError::ContourFailure(format!(
                    "estimated error {:e} exceeds tolerance for value {}",
                    est, value
                )));
            }
            Ok(LaplaceResult::new(&total, est, nodes))
        }
        if spec.precision.is_double() {
            run::<Complex64>(self, pieces, amp, spec, ())
        } else {
            run::<MpComplex>(self, pieces, amp, spec, spec.precision.bits())
        }
    }

    /// Integrate along an explicit polyline.
    pub fn integrate_path(
        &self,
        nodes: &[Complex64],
        amp: Amplitude,
        spec: &ContourSpec,
        domain: &dyn Fn(Complex64) -> bool,
    ) -> Result<ContourOutcome> {
        if nodes.len() < 2 {
            return Err(WkbError::InvalidInput("polyline needs at least two nodes".into()));
        }
        if let Some(bad) = nodes.iter().find(|w| !domain(**w)) {
            return Err(WkbError::DomainExit(format!("node {} lies outside the amplitude's domain", bad)));
        }
        let pieces = vec![nodes.to_vec()];
        let result = self.sum_pieces(&pieces, amp, spec)?;
        Ok(ContourOutcome { result, pieces, saddles_used: Vec::new(), truncated: false })
    }
}

/// Dispatch on the path kind; `default_pair` fixes the valleys for `Default`.
pub fn integrate(
    phase: &Phase,
    default_pair: (i64, i64),
    amp: Amplitude,
    spec: &ContourSpec,
    domain: &dyn Fn(Complex64) -> bool,
) -> Result<ContourOutcome> {
    match &spec.path {
        PathSpec::Default => phase.integrate_valleys(default_pair.0, default_pair.1, amp, spec, domain),
        PathSpec::Valleys { from, to } => phase.integrate_valleys(*from, *to, amp, spec, domain),
        PathSpec::Polyline(nodes) => phase.integrate_path(nodes, amp, spec, domain),
    }
}
