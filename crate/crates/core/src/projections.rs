//! Truncated Hermite, scaled Hermite, Legendre and Chebyshev expansions of a
//! [`Signal`], their measured errors, and the explicit error bounds they obey.
//!
//! Coefficients are always taken against orthonormal functions:
//! `h_k^α(x) = α^{-1/2} h_k(x/α)` on the line, `√(k+1/2) P_k` on `(-1, 1)`,
//! and `√(2/(c_k π)) T_k` on `(-1, 1)` with the weight `(1-x²)^{-1/2}`.

use std::f64::consts::{E, PI};
use std::fmt::Write as _;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::concentration::Signal;
use crate::error::{domain, regime, Error, Result};
use crate::orthopoly::{
    bessel_j_ladder, chebyshev_norm_factor, legendre_ladder, legendre_norm_factor, spherical_bessel_ladder,
    times_i_pow, CHEBYSHEV_KAPPA, INTERVAL_SLACK,
};
use crate::quadrature::{gauss_legendre_rule, panel_breaks, QuadRule};

/// Gauss-Legendre order used on each panel of a coefficient integral.
const PANEL_ORDER: usize = 32;

/// Extra Hermite scales beyond the oscillatory region, in units of `α`.
const HERMITE_MARGIN: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Basis {
    Hermite,
    ScaledHermite { alpha: f64 },
    Legendre,
    Chebyshev,
}

impl Basis {
    /// The dilation `α` (1 for the unscaled Hermite basis).
    pub fn alpha(&self) -> Option<f64> {
        match *self {
            Basis::Hermite => Some(1.0),
            Basis::ScaledHermite { alpha } => Some(alpha),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Basis::Hermite => "hermite",
            Basis::ScaledHermite { .. } => "scaled_hermite",
            Basis::Legendre => "legendre",
            Basis::Chebyshev => "chebyshev",
        }
    }

    fn on_interval(&self) -> bool {
        matches!(self, Basis::Legendre | Basis::Chebyshev)
    }
}

/// `Σ_{k≤order} coeffs[k] φ_k` in one of the orthonormal systems.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion {
    pub basis: Basis,
    pub order: usize,
    pub coeffs: Vec<f64>,
}

impl Expansion {
    pub fn new(basis: Basis, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument(
                "an expansion needs at least one coefficient".into(),
            ));
        }
        if let Some(a) = basis.alpha() {
            if !(a > 0.0) || !a.is_finite() {
                return Err(Error::InvalidArgument(format!("scale α = {a} must be positive")));
            }
        }
        Ok(Self {
            basis,
            order: coeffs.len() - 1,
            coeffs,
        })
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        eval_expansion(self, x)
    }

    /// CSV with `#key=value` metadata lines followed by `k,coefficient` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("#schema=1\n");
        let _ = writeln!(out, "#basis={}", self.basis.name());
        if let Basis::ScaledHermite { alpha } = self.basis {
            let _ = writeln!(out, "#alpha={alpha:.16e}");
        }
        let _ = writeln!(out, "#order={}", self.order);
        out.push_str("k,coefficient\n");
        for (k, c) in self.coeffs.iter().enumerate() {
            let _ = writeln!(out, "{k},{c:.16e}");
        }
        out
    }

    /// Inverse of [`Expansion::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let perr = |line: usize, message: String| Error::Parse { line, message };
        let mut schema = None;
        let mut basis_name = None;
        let mut alpha = None;
        let mut order = None;
        let mut body_start = 0usize;
        let mut first_body_line = 1usize;
        for (i, line) in text.split_inclusive('\n').enumerate() {
            let trimmed = line.trim();
            let Some(meta) = trimmed.strip_prefix('#') else {
                first_body_line = i + 1;
                break;
            };
            body_start += line.len();
            first_body_line = i + 2;
            let (k, v) = meta
                .split_once('=')
                .ok_or_else(|| perr(i + 1, format!("expected #key=value, got {trimmed:?}")))?;
            let (k, v) = (k.trim(), v.trim());
            let slot = match k {
                "schema" => &mut schema,
                "basis" => &mut basis_name,
                "alpha" => &mut alpha,
                "order" => &mut order,
                _ => return Err(perr(i + 1, format!("unknown metadata key {k:?}"))),
            };
            if slot.replace((i + 1, v.to_string())).is_some() {
                return Err(perr(i + 1, format!("duplicate metadata key {k:?}")));
            }
        }
        match &schema {
            Some((_, v)) if v == "1" => {}
            Some((l, v)) => return Err(perr(*l, format!("unsupported schema {v:?}"))),
            None => return Err(perr(1, "missing #schema=1".into())),
        }
        let (bl, bname) = basis_name.ok_or_else(|| perr(1, "missing #basis".into()))?;
        let basis = match (bname.as_str(), alpha) {
            ("hermite", None) => Basis::Hermite,
            ("legendre", None) => Basis::Legendre,
            ("chebyshev", None) => Basis::Chebyshev,
            ("scaled_hermite", Some((al, av))) => {
                let a: f64 = av.parse().map_err(|_| perr(al, format!("invalid alpha {av:?}")))?;
                if !(a > 0.0) || !a.is_finite() {
                    return Err(perr(al, format!("alpha {a} must be positive")));
                }
                Basis::ScaledHermite { alpha: a }
            }
            ("scaled_hermite", None) => return Err(perr(bl, "scaled_hermite needs #alpha".into())),
            ("hermite" | "legendre" | "chebyshev", Some((al, _))) => {
                return Err(perr(al, format!("#alpha is not valid for basis {bname}")))
            }
            _ => return Err(perr(bl, format!("unknown basis {bname:?}"))),
        };
        let (ol, ov) = order.ok_or_else(|| perr(1, "missing #order".into()))?;
        let order: usize = ov.parse().map_err(|_| perr(ol, format!("invalid order {ov:?}")))?;
        if order > 1_000_000 {
            return Err(perr(ol, format!("order {order} is unreasonably large")));
        }

        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(&text.as_bytes()[body_start..]);
        let headers = reader
            .headers()
            .map_err(|e| perr(first_body_line, e.to_string()))?
            .clone();
        if headers.len() != 2 || &headers[0] != "k" || &headers[1] != "coefficient" {
            return Err(perr(first_body_line, "expected header k,coefficient".into()));
        }
        let mut coeffs = Vec::with_capacity(order + 1);
        for (row, rec) in reader.records().enumerate() {
            let line = first_body_line + 1 + row;
            let rec = rec.map_err(|e| perr(line, e.to_string()))?;
            if rec.len() != 2 {
                return Err(perr(line, format!("expected 2 fields, got {}", rec.len())));
            }
            let k: usize = rec[0]
                .parse()
                .map_err(|_| perr(line, format!("invalid index {:?}", &rec[0])))?;
            if k != coeffs.len() {
                return Err(perr(line, format!("expected index {}, got {k}", coeffs.len())));
            }
            if k > order {
                return Err(perr(line, format!("index {k} exceeds order {order}")));
            }
            let c: f64 = rec[1]
                .parse()
                .map_err(|_| perr(line, format!("invalid coefficient {:?}", &rec[1])))?;
            if !c.is_finite() {
                return Err(perr(line, "non-finite coefficient".into()));
            }
            coeffs.push(c);
        }
        if coeffs.len() != order + 1 {
            return Err(perr(
                first_body_line,
                format!("order {order} needs {} rows, found {}", order + 1, coeffs.len()),
            ));
        }
        Expansion::new(basis, coeffs)
    }
}

/// Panel rule on `[a, b]` with breakpoints, keeping panels narrower than
/// three periods of the fastest oscillation `freq`.
fn oscillation_rule(a: f64, b: f64, cuts: &[f64], freq: f64) -> Result<QuadRule> {
    let width = (6.0 * PI / freq.max(1e-300)).min(1.0);
    let rule = gauss_legendre_rule(PANEL_ORDER)?;
    Ok(crate::quadrature::composite_rule(
        &rule,
        &panel_breaks(a, b, cuts, width),
    ))
}

/// Computes the first `order + 1` coefficients of `f` in `basis`.
///
/// Band-limited signals on `(-1, 1)` use the exact Bessel-integral route
/// (see [`legendre_inner_products`]); everything else uses composite
/// Gauss-Legendre quadrature split at the signal's breakpoints.
pub fn expand(f: &Signal, basis: Basis, order: usize) -> Result<Expansion> {
    let coeffs = match basis {
        Basis::Hermite | Basis::ScaledHermite { .. } => hermite_coefficients(f, basis.alpha().unwrap_or(1.0), order)?,
        Basis::Legendre => {
            if f.bandlimit().is_some() {
                legendre_inner_products(f, order)?
                    .into_iter()
                    .enumerate()
                    .map(|(k, v)| legendre_norm_factor(k) * v)
                    .collect()
            } else {
                legendre_coefficients_quadrature(f, order)?
            }
        }
        Basis::Chebyshev => {
            if !f.weight_integrable() {
                return Err(Error::ChebyshevIntegrability(f.name.clone()));
            }
            if f.bandlimit().is_some() {
                chebyshev_inner_products(f, order)?
                    .into_iter()
                    .enumerate()
                    .map(|(k, v)| chebyshev_norm_factor(k) * v)
                    .collect()
            } else {
                chebyshev_coefficients_quadrature(f, order)?
            }
        }
    };
    Expansion::new(basis, coeffs)
}

fn signal_frequency(f: &Signal) -> f64 {
    f.bandlimit().unwrap_or(0.0)
}

fn hermite_coefficients(f: &Signal, alpha: f64, order: usize) -> Result<Vec<f64>> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!("scale α = {alpha} must be positive")));
    }
    let reach = alpha * ((2.0 * order as f64 + 1.0).sqrt() + HERMITE_MARGIN);
    let (a, b) = match f.support() {
        Some((lo, hi)) => (lo.max(-reach), hi.min(reach)),
        None => (-reach, reach),
    };
    if a >= b {
        return Ok(vec![0.0; order + 1]);
    }
    let freq = (2.0 * order as f64 + 1.0).sqrt() / alpha + signal_frequency(f);
    let rule = oscillation_rule(a, b, &f.breakpoints(), freq)?;
    let scale = alpha.powf(-0.5);
    let partial: Vec<Vec<f64>> = rule
        .nodes
        .par_iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| -> Result<Vec<f64>> {
            let fx = f.eval(x);
            let h = crate::orthopoly::hermite_function_batch(order, x / alpha)?;
            Ok(h.values.iter().map(|hk| w * fx * scale * hk).collect())
        })
        .collect::<Result<_>>()?;
    Ok(sum_columns(&partial, order + 1))
}

/// Column sums in a fixed order, so results do not depend on thread count.
fn sum_columns(rows: &[Vec<f64>], width: usize) -> Vec<f64> {
    let mut out = vec![0.0; width];
    for r in rows {
        for (o, v) in out.iter_mut().zip(r) {
            *o += v;
        }
    }
    out
}

fn legendre_coefficients_quadrature(f: &Signal, order: usize) -> Result<Vec<f64>> {
    let freq = order as f64 + 1.0 + signal_frequency(f);
    let rule = oscillation_rule(-1.0, 1.0, &f.breakpoints(), freq)?;
    let rows: Vec<Vec<f64>> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| {
            let fx = f.eval(x);
            legendre_ladder(order, x)
                .into_iter()
                .enumerate()
                .map(|(k, p)| w * fx * legendre_norm_factor(k) * p)
                .collect()
        })
        .collect();
    Ok(sum_columns(&rows, order + 1))
}

fn chebyshev_coefficients_quadrature(f: &Signal, order: usize) -> Result<Vec<f64>> {
    // ∫ f(x) T_k(x) (1-x²)^{-1/2} dx = ∫_0^π f(cos θ) cos(kθ) dθ
    let cuts: Vec<f64> = f
        .breakpoints()
        .into_iter()
        .filter(|b| b.abs() < 1.0)
        .map(f64::acos)
        .collect();
    let freq = order as f64 + 1.0 + signal_frequency(f);
    let rule = oscillation_rule(0.0, PI, &cuts, freq)?;
    let rows: Vec<Vec<f64>> = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&th, &w)| {
            let fx = f.eval(th.cos());
            (0..=order)
                .map(|k| w * fx * chebyshev_norm_factor(k) * (k as f64 * th).cos())
                .collect()
        })
        .collect();
    Ok(sum_columns(&rows, order + 1))
}

fn band_rule(f: &Signal) -> Result<(f64, QuadRule)> {
    let c = f.bandlimit().ok_or_else(|| Error::Signal {
        name: f.name.clone(),
        reason: "the spectral route needs a band-limited signal".into(),
    })?;
    let rule = gauss_legendre_rule(PANEL_ORDER)?;
    Ok((
        c,
        crate::quadrature::composite_rule(&rule, &panel_breaks(-c, c, &[0.0], 1.0)),
    ))
}

/// `⟨f, P_k⟩_{L²(-1,1)}` for `k = 0..=k_max` and band-limited `f`, through
/// `⟨f, P_k⟩ = √(2/π) i^k ∫_{-c}^{c} f̂(ξ) j_k(ξ) dξ`.
///
/// The integrand is smooth, so the result keeps full relative accuracy even
/// when the inner product is far below the roundoff level of `‖f‖`.
pub fn legendre_inner_products(f: &Signal, k_max: usize) -> Result<Vec<f64>> {
    let (_, rule) = band_rule(f)?;
    let acc = spectral_sum(f, &rule, k_max, spherical_bessel_ladder);
    Ok(acc
        .into_iter()
        .enumerate()
        .map(|(k, z)| (times_i_pow(k, 1.0) * z).re * (2.0 / PI).sqrt())
        .collect())
}

/// `⟨f, T_k⟩_{L²([-1,1], dμ)}` for band-limited `f`, through
/// `⟨f, T_k⟩ = (2π)^{-1/2} κ i^k ∫_{-c}^{c} f̂(ξ) J_k(ξ) dξ` with `κ = π`.
pub fn chebyshev_inner_products(f: &Signal, k_max: usize) -> Result<Vec<f64>> {
    let (_, rule) = band_rule(f)?;
    let acc = spectral_sum(f, &rule, k_max, bessel_j_ladder);
    Ok(acc
        .into_iter()
        .enumerate()
        .map(|(k, z)| (times_i_pow(k, 1.0) * z).re * CHEBYSHEV_KAPPA / (2.0 * PI).sqrt())
        .collect())
}

fn spectral_sum(f: &Signal, rule: &QuadRule, k_max: usize, ladder: fn(usize, f64) -> Vec<f64>) -> Vec<Complex64> {
    let mut acc = vec![Complex64::new(0.0, 0.0); k_max + 1];
    for (&xi, &w) in rule.nodes.iter().zip(&rule.weights) {
        let fh = f.fourier(xi).unwrap_or_default();
        for (a, j) in acc.iter_mut().zip(ladder(k_max, xi)) {
            *a += fh * (w * j);
        }
    }
    acc
}

/// `‖f − 𝓛_N f‖_{L²(-1,1)}` for band-limited `f`, summed from the tail of the
/// Legendre coefficients (Parseval).
pub fn legendre_tail_spectral(f: &Signal, n: usize) -> Result<f64> {
    let k_max = tail_horizon(f, n)?;
    let ip = legendre_inner_products(f, k_max)?;
    Ok(tail_norm(
        ip.iter()
            .enumerate()
            .skip(n + 1)
            .map(|(k, v)| legendre_norm_factor(k) * v),
    ))
}

/// `‖f − 𝓣_N f‖_{L²([-1,1], dμ)}` for band-limited `f`, from the coefficient tail.
pub fn chebyshev_tail_spectral(f: &Signal, n: usize) -> Result<f64> {
    let k_max = tail_horizon(f, n)?;
    let ip = chebyshev_inner_products(f, k_max)?;
    Ok(tail_norm(
        ip.iter()
            .enumerate()
            .skip(n + 1)
            .map(|(k, v)| chebyshev_norm_factor(k) * v),
    ))
}

fn tail_horizon(f: &Signal, n: usize) -> Result<usize> {
    let c = f.bandlimit().ok_or_else(|| Error::Signal {
        name: f.name.clone(),
        reason: "the spectral route needs a band-limited signal".into(),
    })?;
    Ok(n.max((E * c / 2.0).ceil() as usize) + 60)
}

/// `(Σ v²)^{1/2}` summed from the smallest terms up.
fn tail_norm<I: DoubleEndedIterator<Item = f64>>(terms: I) -> f64 {
    terms.rev().fold(0.0, |s, v| s + v * v).sqrt()
}

/// Evaluates an expansion by Clenshaw's backward recurrence.
pub fn eval_expansion(e: &Expansion, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(domain("eval_expansion", x, "finite reals"));
    }
    match e.basis {
        Basis::Hermite | Basis::ScaledHermite { .. } => {
            let alpha = e.basis.alpha().unwrap_or(1.0);
            let u = x / alpha;
            // h_{k+1} = u √(2/(k+1)) h_k − √(k/(k+1)) h_{k−1}
            let b0 = clenshaw(
                &e.coeffs,
                |k| u * (2.0 / (k as f64 + 1.0)).sqrt(),
                |k| -((k as f64) / (k as f64 + 1.0)).sqrt(),
            );
            if b0 == 0.0 {
                return Ok(0.0);
            }
            let ln = b0.abs().ln() - 0.5 * u * u - 0.25 * PI.ln() - 0.5 * alpha.ln();
            Ok(b0.signum() * ln.exp())
        }
        Basis::Legendre | Basis::Chebyshev => {
            if x.abs() > 1.0 + INTERVAL_SLACK {
                return Err(domain("eval_expansion", x, "[-1, 1]"));
            }
            let x = x.clamp(-1.0, 1.0);
            let legendre = e.basis == Basis::Legendre;
            let d: Vec<f64> = e
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| {
                    a * if legendre {
                        legendre_norm_factor(k)
                    } else {
                        chebyshev_norm_factor(k)
                    }
                })
                .collect();
            Ok(if legendre {
                clenshaw(
                    &d,
                    |k| (2.0 * k as f64 + 1.0) / (k as f64 + 1.0) * x,
                    |k| -(k as f64) / (k as f64 + 1.0),
                )
            } else {
                clenshaw(&d, |k| if k == 0 { x } else { 2.0 * x }, |_| -1.0)
            })
        }
    }
}

/// `Σ c_k φ_k / φ_0` for `φ_{k+1} = a(k) φ_k + b(k) φ_{k−1}` with `φ_{-1} = 0`.
fn clenshaw(c: &[f64], a: impl Fn(usize) -> f64, b: impl Fn(usize) -> f64) -> f64 {
    let (mut b1, mut b2) = (0.0, 0.0);
    for k in (0..c.len()).rev() {
        let next_b = if k + 1 < c.len() { b(k + 1) } else { 0.0 };
        let bk = c[k] + a(k) * b1 + next_b * b2;
        b2 = b1;
        b1 = bk;
    }
    b1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    L2,
    Linf,
}

/// `‖f − e‖` on `[a, b]`: the `L²` norm by quadrature, or the maximum over an
/// `m`-point uniform grid.
pub fn error_norm(f: &Signal, e: &Expansion, interval: (f64, f64), p: NormKind, m: usize) -> Result<f64> {
    let (a, b) = interval;
    if !(a < b) {
        return Err(Error::InvalidArgument(format!("interval [{a}, {b}]")));
    }
    if e.basis.on_interval() && (a < -1.0 - INTERVAL_SLACK || b > 1.0 + INTERVAL_SLACK) {
        return Err(domain("error_norm", if a < -1.0 { a } else { b }, "[-1, 1]"));
    }
    let diff = |x: f64| -> Result<f64> { Ok(f.eval(x) - eval_expansion(e, x)?) };
    match p {
        NormKind::Linf => {
            if m < 2 {
                return Err(Error::InvalidArgument(format!("grid size {m} must be at least 2")));
            }
            let step = (b - a) / (m - 1) as f64;
            let vals: Vec<f64> = (0..m)
                .into_par_iter()
                .map(|i| diff(a + step * i as f64).map(f64::abs))
                .collect::<Result<_>>()?;
            Ok(vals.into_iter().fold(0.0, f64::max))
        }
        NormKind::L2 => {
            let rule = oscillation_rule(a, b, &f.breakpoints(), expansion_frequency(e) + signal_frequency(f))?;
            let terms: Vec<f64> = rule
                .nodes
                .par_iter()
                .zip(&rule.weights)
                .map(|(&x, &w)| diff(x).map(|d| w * d * d))
                .collect::<Result<_>>()?;
            Ok(terms.iter().sum::<f64>().sqrt())
        }
    }
}

/// `‖f − e‖_{L²([-1,1], dμ)}` for a Chebyshev expansion, by quadrature in
/// `θ = arccos x`.
pub fn weighted_error_norm(f: &Signal, e: &Expansion) -> Result<f64> {
    if e.basis != Basis::Chebyshev {
        return Err(Error::InvalidArgument(
            "weighted norm applies to Chebyshev expansions".into(),
        ));
    }
    let cuts: Vec<f64> = f
        .breakpoints()
        .into_iter()
        .filter(|b| b.abs() < 1.0)
        .map(f64::acos)
        .collect();
    let rule = oscillation_rule(0.0, PI, &cuts, expansion_frequency(e) + signal_frequency(f))?;
    let mut s = 0.0;
    for (&th, &w) in rule.nodes.iter().zip(&rule.weights) {
        let x = th.cos();
        let d = f.eval(x) - eval_expansion(e, x)?;
        s += w * d * d;
    }
    Ok(s.sqrt())
}

fn expansion_frequency(e: &Expansion) -> f64 {
    let n = e.order as f64;
    match e.basis.alpha() {
        Some(alpha) => (2.0 * n + 1.0).sqrt() / alpha,
        None => n + 1.0,
    }
}

/// A theoretical error bound, its additive parts, and (once measured) the
/// empirical error it should dominate. All values are relative to `‖f‖₂`
/// unless stated otherwise by the caller.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorBudget {
    pub empirical: Option<f64>,
    pub theoretical: f64,
    pub regime_ok: bool,
    pub components: Vec<(String, f64)>,
}

impl ErrorBudget {
    pub fn with_empirical(mut self, value: f64) -> Self {
        self.empirical = Some(value);
        self
    }

    /// `empirical ≤ theoretical`, or `None` before a measurement is attached.
    pub fn dominated(&self) -> Option<bool> {
        self.empirical.map(|e| e <= self.theoretical)
    }

    pub fn component(&self, name: &str) -> Option<f64> {
        self.components.iter().find(|(n, _)| n == name).map(|&(_, v)| v)
    }
}

/// `2ε_T + ε_Ω + 34T³/√(2n+1)` for the Hermite projection on `[-T, T]`.
/// The regime `T ≥ 2`, `Ω ≥ 2`, `n ≥ max(2T², 2Ω²)` is recorded, not enforced.
pub fn bound_hermite(eps_t: f64, eps_omega: f64, t: f64, omega: f64, n: usize) -> ErrorBudget {
    let nf = n as f64;
    let kernel = 34.0 * t.powi(3) / (2.0 * nf + 1.0).sqrt();
    let components = vec![
        ("2eps_T".to_string(), 2.0 * eps_t),
        ("eps_Omega".to_string(), eps_omega),
        ("kernel".to_string(), kernel),
    ];
    ErrorBudget {
        empirical: None,
        theoretical: components.iter().map(|c| c.1).sum(),
        regime_ok: t >= 2.0 && omega >= 2.0 && nf >= (2.0 * t * t).max(2.0 * omega * omega),
        components,
    }
}

/// `ε_Ω + ‖R_n‖_{HS} + 2ε_T`, with the measured Hilbert-Schmidt norm of the
/// kernel residual in place of its a priori bound.
pub fn bound_hermite_practical(eps_t: f64, eps_omega: f64, hs_norm_r: f64) -> f64 {
    eps_omega + hs_norm_r + 2.0 * eps_t
}

/// Bound for the scaled projection `K_n^α` on `[-T, T]`:
/// `ε_T + ε_{c/α} + 34(T/α)³/√(2n+1)` as stated, and the same with `2ε_T`
/// as the triangle inequality in the argument accumulates it. The budget's
/// total is the larger of the two; both are listed as components.
pub fn bound_scaled(eps_t: f64, eps_c_over_alpha: f64, t: f64, alpha: f64, c: f64, n: usize) -> ErrorBudget {
    let nf = n as f64;
    let r = t / alpha;
    let kernel = 34.0 * r.powi(3) / (2.0 * nf + 1.0).sqrt();
    let stated = eps_t + eps_c_over_alpha + kernel;
    let accumulated = 2.0 * eps_t + eps_c_over_alpha + kernel;
    ErrorBudget {
        empirical: None,
        theoretical: stated.max(accumulated),
        regime_ok: alpha > 0.0 && t >= 2.0 && c >= 2.0 / alpha && nf >= (2.0 * r * r).max(2.0 * c * c),
        components: vec![
            ("eps_T".to_string(), eps_t),
            ("eps_c_over_alpha".to_string(), eps_c_over_alpha),
            ("kernel".to_string(), kernel),
            ("stated_total".to_string(), stated),
            ("accumulated_total".to_string(), accumulated),
        ],
    }
}

#[inline]
fn exp_or_zero(ln: f64) -> f64 {
    if ln < -745.2 {
        0.0
    } else {
        ln.exp()
    }
}

/// Whether a bound given by its logarithm underflows to zero in `f64`.
pub fn underflows(ln_value: f64) -> bool {
    exp_or_zero(ln_value) == 0.0
}

/// `ln` of `(2/√(2k+1))·√(e/(πc))·(ec/(2k+3))^{k+1}`.
pub fn ln_bound_legendre_coeff(c: f64, k: usize) -> f64 {
    let kf = k as f64;
    2f64.ln() - 0.5 * (2.0 * kf + 1.0).ln() + 0.5 * (E / (PI * c)).ln() + (kf + 1.0) * (E * c / (2.0 * kf + 3.0)).ln()
}

/// Bound on `|⟨f, P_k⟩_{L²(-1,1)}| / ‖f‖₂` for `f` band limited to `[-c, c]`.
pub fn bound_legendre_coeff(c: f64, k: usize) -> f64 {
    exp_or_zero(ln_bound_legendre_coeff(c, k))
}

/// `ln` of `(1/√((2k+1)c))·(ec/(2(k+1)))^{k+1}`.
pub fn ln_bound_chebyshev_coeff(c: f64, k: usize) -> f64 {
    let kf = k as f64;
    -0.5 * ((2.0 * kf + 1.0) * c).ln() + (kf + 1.0) * (E * c / (2.0 * (kf + 1.0))).ln()
}

/// Stated bound on `|⟨f, T_k⟩_{L²([-1,1],dμ)}| / ‖f‖₂` for `f` band limited to `[-c, c]`.
pub fn bound_chebyshev_coeff(c: f64, k: usize) -> f64 {
    exp_or_zero(ln_bound_chebyshev_coeff(c, k))
}

/// [`bound_chebyshev_coeff`] multiplied by `√(2(k+1))`.
///
/// Bounding `|J_k(x)| ≤ |x|^k/(2^k k!)` and `k! ≥ √(2π) k^{k+1/2} e^{-k}`
/// under Cauchy-Schwarz gives a bound larger than the stated one by about
/// `√(2k)`; measured coefficients of `sin(10x)/(10x)` exceed the stated bound
/// for `k` between roughly 34 and 75, while this version holds.
pub fn bound_chebyshev_coeff_corrected(c: f64, k: usize) -> f64 {
    exp_or_zero(ln_bound_chebyshev_coeff(c, k) + 0.5 * (2.0 * (k as f64 + 1.0)).ln())
}

fn check_tail_regime(what: &'static str, c: f64, n: usize) -> Result<()> {
    if !(c > 0.0) || (n as f64) < E * c / 2.0 {
        return Err(regime(
            what,
            format!("need c > 0 and N >= ec/2 = {}; got N = {n}", E * c / 2.0),
        ));
    }
    Ok(())
}

/// Bound on `‖f − 𝓛_N f‖ / ‖f‖₂` on `(-1, 1)` for `f` band limited to `[-c, c]`:
/// `√(c/(2N+5))·(ec/(2N+5))^N` in sup norm, `√c·(ec/(2N+5))^{N+1}` in `L²`.
pub fn bound_legendre_tail(c: f64, n: usize, p: NormKind) -> Result<f64> {
    check_tail_regime("bound_legendre_tail", c, n)?;
    let nf = n as f64;
    let q = (E * c / (2.0 * nf + 5.0)).ln();
    Ok(exp_or_zero(match p {
        NormKind::Linf => 0.5 * (c / (2.0 * nf + 5.0)).ln() + nf * q,
        NormKind::L2 => 0.5 * c.ln() + (nf + 1.0) * q,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegendreScope {
    /// Error measured on `(-1, 1)`.
    OnInterval,
    /// Error measured on the whole line, with `𝓛_N f` extended by zero.
    Global,
}

/// Bound for almost time- and band-limited `f`:
/// `2ε_Ω + √c(ec/(2N+5))^{N+1}` on `(-1, 1)`, plus `ε_T` on the whole line.
pub fn bound_legendre_almost(c: f64, n: usize, eps_t: f64, eps_omega: f64, which: LegendreScope) -> Result<f64> {
    let tail = bound_legendre_tail(c, n, NormKind::L2)?;
    Ok(match which {
        LegendreScope::OnInterval => 2.0 * eps_omega + tail,
        LegendreScope::Global => eps_t + 2.0 * eps_omega + tail,
    })
}

/// Bound on `‖f − 𝓣_N f‖_{L²([-1,1],dμ)} / ‖f‖₂`:
/// `(e√c/(2(2N+3)))·(ce/(2N+4))^{N+1}`.
pub fn bound_chebyshev_tail(c: f64, n: usize) -> Result<f64> {
    check_tail_regime("bound_chebyshev_tail", c, n)?;
    let nf = n as f64;
    Ok(exp_or_zero(
        (E * c.sqrt() / (2.0 * (2.0 * nf + 3.0))).ln() + (nf + 1.0) * (c * E / (2.0 * nf + 4.0)).ln(),
    ))
}
