//! Fixed, deterministic quadrature rules on `[-1, 1]` and their affine maps.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::orthopoly::legendre_with_derivative;

pub const MAX_GAUSS_ORDER: usize = 4096;

/// Panel width used when splitting long intervals.
pub const PANEL_WIDTH: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    GaussLegendre,
    /// Nodes and weights for `∫ f(x) (1-x²)^{-1/2} dx`.
    GaussChebyshev,
    TanhSinh,
    CompositeGL,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuadRule {
    pub kind: RuleKind,
    pub order: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Distance from each node to the nearest endpoint of `[-1, 1]`, kept
    /// separately because `1 - |x|` cancels catastrophically near the ends.
    /// Only filled for tanh-sinh rules.
    pub endpoint_distance: Vec<f64>,
}

impl QuadRule {
    /// Applies the rule on `[-1, 1]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    /// Applies the rule after mapping `[-1, 1]` onto `[a, b]`.
    pub fn integrate_on<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        half * self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(mid + half * x))
            .sum::<f64>()
    }

    /// Mapped nodes and weights on `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (b + a);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Gauss-Legendre rule of order `m`: nodes are the roots of `P_m` found by
/// Newton's method, weights `2/((1-x²) P_m'(x)²)`.
pub fn gauss_legendre_rule(m: usize) -> Result<QuadRule> {
    if m == 0 || m > MAX_GAUSS_ORDER {
        return Err(Error::InvalidArgument(format!(
            "Gauss-Legendre order must be in 1..={MAX_GAUSS_ORDER}, got {m}"
        )));
    }
    let mut nodes = vec![0.0; m];
    let mut weights = vec![0.0; m];
    let mf = m as f64;
    for i in 0..m.div_ceil(2) {
        // Tricomi's initial guess, refined by Newton.
        let theta = PI * (i as f64 + 0.75) / (mf + 0.5);
        let mut x = (theta.cos()) * (1.0 - (1.0 - 1.0 / mf) / (8.0 * mf * mf));
        let mut converged = false;
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(m, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() <= 1e-15 {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::Convergence { order: m, index: i });
        }
        let (_, dp) = legendre_with_derivative(m, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    Ok(QuadRule {
        kind: RuleKind::GaussLegendre,
        order: m,
        nodes,
        weights,
        endpoint_distance: Vec::new(),
    })
}

/// Gauss-Chebyshev rule: nodes `cos((2j+1)π/2m)`, equal weights `π/m`.
pub fn gauss_chebyshev_rule(m: usize) -> Result<QuadRule> {
    if m == 0 {
        return Err(Error::InvalidArgument("Gauss-Chebyshev order must be positive".into()));
    }
    let mf = m as f64;
    let nodes = (0..m)
        .map(|j| ((2.0 * j as f64 + 1.0) * PI / (2.0 * mf)).cos())
        .collect();
    Ok(QuadRule {
        kind: RuleKind::GaussChebyshev,
        order: m,
        nodes,
        weights: vec![PI / mf; m],
        endpoint_distance: Vec::new(),
    })
}

/// Tanh-sinh (double exponential) rule with step `2^{-level}`.
///
/// Every node stays strictly inside `(-1, 1)`; the rule integrates integrands with
/// integrable endpoint singularities such as `(1-y²)^{-1/2}`.
pub fn tanh_sinh_rule(level: u32) -> QuadRule {
    let h = 0.5f64.powi(level as i32);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut dist = Vec::new();
    let half_pi = 0.5 * PI;
    let mut k: i64 = 0;
    loop {
        let t = k as f64 * h;
        let u = half_pi * t.sinh();
        let cu = u.cosh();
        let w = h * half_pi * t.cosh() / (cu * cu);
        // 1 - tanh(u) = 2 / (e^{2u} + 1)
        let d = 2.0 / ((2.0 * u).exp() + 1.0);
        if w < 1e-300 || d < 1e-300 {
            break;
        }
        // Nodes that round to 1 are pulled to the largest double below 1;
        // integrands that care use `endpoint_distance` instead.
        let x = u.tanh().min(1.0 - f64::EPSILON / 2.0);
        if k == 0 {
            nodes.push(0.0);
            weights.push(w);
            dist.push(1.0);
        } else {
            nodes.push(x);
            weights.push(w);
            dist.push(d);
            nodes.push(-x);
            weights.push(w);
            dist.push(d);
        }
        k += 1;
    }
    QuadRule {
        kind: RuleKind::TanhSinh,
        order: nodes.len(),
        nodes,
        weights,
        endpoint_distance: dist,
    }
}

/// Integrates `f(x, d)` over `[-1, 1]` with a tanh-sinh rule, where `d` is the
/// distance from `x` to the nearest endpoint.
pub fn integrate_tanh_sinh<F: Fn(f64, f64) -> f64>(f: F, level: u32) -> f64 {
    let rule = tanh_sinh_rule(level);
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .zip(&rule.endpoint_distance)
        .map(|((&x, &w), &d)| w * f(x, d))
        .sum()
}

fn check_finite(what: &'static str, x: f64, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation { what, x })
    }
}

/// Gauss-Legendre estimate of `∫_a^b f`, split into `⌈(b-a)/2⌉` panels when
/// `b - a > 4`.
pub fn integrate_interval<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, m: usize) -> Result<f64> {
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(Error::InvalidArgument(format!("integration interval [{a}, {b}]")));
    }
    let rule = gauss_legendre_rule(m)?;
    let panels = if b - a > 2.0 * PANEL_WIDTH {
        ((b - a) / PANEL_WIDTH).ceil() as usize
    } else {
        1
    };
    integrate_panels_with(&rule, &f, &uniform_breaks(a, b, panels))
}

/// `[a, b]` cut into `panels` equal pieces, as breakpoints.
pub fn uniform_breaks(a: f64, b: f64, panels: usize) -> Vec<f64> {
    let panels = panels.max(1);
    let step = (b - a) / panels as f64;
    let mut v: Vec<f64> = (0..panels).map(|i| a + step * i as f64).collect();
    v.push(b);
    v
}

/// Breakpoints covering `[a, b]` that include every interior point of
/// `cuts` and keep each panel no wider than `max_width`.
pub fn panel_breaks(a: f64, b: f64, cuts: &[f64], max_width: f64) -> Vec<f64> {
    let mut fixed = vec![a];
    let mut inner: Vec<f64> = cuts.iter().copied().filter(|&c| c > a && c < b).collect();
    inner.sort_by(f64::total_cmp);
    inner.dedup();
    fixed.extend(inner);
    fixed.push(b);
    let mut out = vec![a];
    for w in fixed.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let pieces = ((hi - lo) / max_width).ceil().max(1.0) as usize;
        let step = (hi - lo) / pieces as f64;
        for i in 1..pieces {
            out.push(lo + step * i as f64);
        }
        out.push(hi);
    }
    out
}

/// Composite integration over consecutive panels given by `breaks`.
pub fn integrate_panels_with<F: Fn(f64) -> f64>(rule: &QuadRule, f: &F, breaks: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    for w in breaks.windows(2) {
        for (x, wt) in rule.mapped(w[0], w[1]) {
            total += wt * check_finite("integrate", x, f(x))?;
        }
    }
    Ok(total)
}

/// Nodes and weights of a composite rule over `breaks`.
pub fn composite_rule(rule: &QuadRule, breaks: &[f64]) -> QuadRule {
    let mut nodes = Vec::with_capacity(rule.len() * breaks.len());
    let mut weights = Vec::with_capacity(rule.len() * breaks.len());
    for w in breaks.windows(2) {
        for (x, wt) in rule.mapped(w[0], w[1]) {
            nodes.push(x);
            weights.push(wt);
        }
    }
    QuadRule {
        kind: RuleKind::CompositeGL,
        order: rule.order,
        nodes,
        weights,
        endpoint_distance: Vec::new(),
    }
}

/// `Σ (π/m) f(cos((2j+1)π/2m))`, the Gauss-Chebyshev estimate of
/// `∫ f(x) (1-x²)^{-1/2} dx`.
pub fn integrate_chebyshev_weighted<F: Fn(f64) -> f64>(f: F, m: usize) -> Result<f64> {
    let rule = gauss_chebyshev_rule(m)?;
    let mut total = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        total += w * check_finite("integrate_chebyshev_weighted", x, f(x))?;
    }
    Ok(total)
}
