//! Orthogonal polynomials, Hermite functions and Bessel functions.
//!
//! Everything here is evaluated by three-term recurrences. Hermite functions
//! are propagated directly in their orthonormal form, so no factorials or
//! Hermite polynomials ever appear. Bessel ladders use the upward recurrence
//! where it is stable (argument at least the order) and a normalized downward
//! (Miller) recurrence otherwise.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{domain, Error, Result};

/// Constant in the weighted finite Fourier transform of `T_k`:
/// `∫ e^{ixy} T_k(y) (1-y²)^{-1/2} dy = i^k κ J_k(x)`.
///
/// Fixed by the tanh-sinh oracle in `tests/constants_oracle.rs`; the measured
/// value and residual are recorded in `data/constants.txt`.
pub const CHEBYSHEV_KAPPA: f64 = PI;

/// Tolerance on `|x| - 1` before a polynomial argument is rejected.
pub const INTERVAL_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyKind {
    Legendre,
    Chebyshev,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    /// `P_k(1) = 1`, `T_k(1) = 1`.
    Classical,
    /// Unit norm in `L²(-1,1)` (Legendre) or `L²((-1,1), dμ)` (Chebyshev).
    Orthonormal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyFamily {
    pub kind: PolyKind,
    pub normalization: Normalization,
}

impl PolyFamily {
    pub const fn new(kind: PolyKind, normalization: Normalization) -> Self {
        Self { kind, normalization }
    }

    pub fn eval(&self, k: usize, x: f64) -> Result<f64> {
        match self.kind {
            PolyKind::Legendre => legendre_eval(k, x, self.normalization),
            PolyKind::Chebyshev => chebyshev_eval(k, x, self.normalization),
        }
    }

    /// Ratio between the orthonormal and the classical polynomial of degree `k`.
    pub fn orthonormal_factor(&self, k: usize) -> f64 {
        match self.kind {
            PolyKind::Legendre => legendre_norm_factor(k),
            PolyKind::Chebyshev => chebyshev_norm_factor(k),
        }
    }
}

/// `√(k+1/2)`, so that `√(k+1/2)·P_k` has unit norm on `(-1,1)`.
#[inline]
pub fn legendre_norm_factor(k: usize) -> f64 {
    (k as f64 + 0.5).sqrt()
}

/// `√(2/(c_k π))` with `c_0 = 2`, `c_k = 1` otherwise.
#[inline]
pub fn chebyshev_norm_factor(k: usize) -> f64 {
    if k == 0 {
        (1.0 / PI).sqrt()
    } else {
        (2.0 / PI).sqrt()
    }
}

fn check_interval(what: &'static str, x: f64) -> Result<f64> {
    if !x.is_finite() || x.abs() > 1.0 + INTERVAL_SLACK {
        return Err(domain(what, x, "[-1, 1]"));
    }
    Ok(x.clamp(-1.0, 1.0))
}

/// Legendre polynomial of degree `k` by forward recurrence.
pub fn legendre_eval(k: usize, x: f64, norm: Normalization) -> Result<f64> {
    let x = check_interval("legendre_eval", x)?;
    let p = legendre_classical(k, x);
    Ok(match norm {
        Normalization::Classical => p,
        Normalization::Orthonormal => legendre_norm_factor(k) * p,
    })
}

pub(crate) fn legendre_classical(k: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if k == 0 {
        return 1.0;
    }
    for j in 1..k {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0) * x * cur - jf * prev) / (jf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `P_0(x), …, P_n(x)` (classical normalization).
pub fn legendre_ladder(n: usize, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(1.0);
    if n == 0 {
        return out;
    }
    out.push(x);
    for j in 1..n {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0) * x * out[j] - jf * out[j - 1]) / (jf + 1.0);
        out.push(next);
    }
    out
}

/// Values and first derivatives of `P_0, …, P_n` at `x`.
///
/// Derivatives use `P'_{k+1} = P'_{k-1} + (2k+1) P_k`, which stays finite at
/// the endpoints.
pub fn legendre_ladder_with_derivatives(n: usize, x: f64) -> (Vec<f64>, Vec<f64>) {
    let p = legendre_ladder(n, x);
    let mut d = vec![0.0; n + 1];
    if n >= 1 {
        d[1] = 1.0;
    }
    for k in 1..n {
        d[k + 1] = d[k - 1] + (2.0 * k as f64 + 1.0) * p[k];
    }
    (p, d)
}

/// `(P_m(x), P_m'(x))`, used by the Gauss-Legendre Newton iteration.
pub fn legendre_with_derivative(m: usize, x: f64) -> (f64, f64) {
    if m == 0 {
        return (1.0, 0.0);
    }
    let (mut prev, mut cur) = (1.0, x);
    let (mut dprev, mut dcur) = (0.0, 1.0);
    for j in 1..m {
        let jf = j as f64;
        let next = ((2.0 * jf + 1.0) * x * cur - jf * prev) / (jf + 1.0);
        let dnext = dprev + (2.0 * jf + 1.0) * cur;
        prev = cur;
        cur = next;
        dprev = dcur;
        dcur = dnext;
    }
    (cur, dcur)
}

/// Chebyshev polynomial of the first kind via `T_k(cos θ) = cos(kθ)`.
pub fn chebyshev_eval(k: usize, x: f64, norm: Normalization) -> Result<f64> {
    let x = check_interval("chebyshev_eval", x)?;
    let t = (k as f64 * x.acos()).cos();
    // cos(k·acos(±1)) carries a few ulps of error; pin the exact endpoint values.
    let t = if x == 1.0 {
        1.0
    } else if x == -1.0 {
        if k.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    } else {
        t
    };
    Ok(match norm {
        Normalization::Classical => t,
        Normalization::Orthonormal => chebyshev_norm_factor(k) * t,
    })
}

/// `h_0(x), …, h_{n_max}(x)` at a single point.
#[derive(Debug, Clone, PartialEq)]
pub struct HermiteBatch {
    pub n_max: usize,
    pub x: f64,
    pub values: Vec<f64>,
}

impl HermiteBatch {
    pub fn get(&self, n: usize) -> f64 {
        self.values[n]
    }
}

const RESCALE_AT: f64 = 1e150;

/// Orthonormal Hermite functions by the recurrence
/// `h_{k+1} = x √(2/(k+1)) h_k − √(k/(k+1)) h_{k−1}`, seeded with
/// `h_0 = π^{-1/4} e^{-x²/2}`.
///
/// The Gaussian factor is carried as a separate logarithmic scale so that the
/// seed does not underflow for large `|x|`; mantissas are renormalized
/// whenever they exceed `1e150`.
pub fn hermite_function_batch(n_max: usize, x: f64) -> Result<HermiteBatch> {
    if !x.is_finite() {
        return Err(Error::Range("hermite_function_batch"));
    }
    let mut values = Vec::with_capacity(n_max + 1);
    let mut log_scale = -0.5 * x * x;
    let mut factor = log_scale.exp();
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25);
    values.push(apply_scale(cur, factor, log_scale));
    for k in 0..n_max {
        let kf = k as f64;
        let next = x * (2.0 / (kf + 1.0)).sqrt() * cur - (kf / (kf + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
        if cur.abs() > RESCALE_AT {
            prev /= RESCALE_AT;
            cur /= RESCALE_AT;
            log_scale += RESCALE_AT.ln();
            factor = log_scale.exp();
        }
        values.push(apply_scale(cur, factor, log_scale));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Range("hermite_function_batch"));
    }
    Ok(HermiteBatch { n_max, x, values })
}

#[inline]
fn apply_scale(mantissa: f64, factor: f64, log_scale: f64) -> f64 {
    if factor.is_normal() {
        mantissa * factor
    } else if mantissa == 0.0 {
        0.0
    } else {
        mantissa.signum() * (mantissa.abs().ln() + log_scale).exp()
    }
}

/// Single Hermite function value `h_n(x)`.
pub fn hermite_function(n: usize, x: f64) -> Result<f64> {
    Ok(hermite_function_batch(n, x)?.values[n])
}

/// `(h_{2p}(0), h'_{2p+1}(0))` from the double-factorial closed forms.
///
/// The ratio `(2p-1)!!/(2p)!!` is accumulated as a product of the factors
/// `(2i-1)/(2i)`, which stays in `(0, 1]` and never overflows.
pub fn hermite_center_values(p: usize) -> (f64, f64) {
    let ratio = double_factorial_ratio(p);
    let sign = if p.is_multiple_of(2) { 1.0 } else { -1.0 };
    let base = sign * PI.powf(-0.25) * ratio.sqrt();
    (base, base * (4.0 * p as f64 + 2.0).sqrt())
}

/// `(2p-1)!! / (2p)!!`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial_ratio(p: usize) -> f64 {
    let mut log_sum = 0.0;
    for i in 1..=p {
        let i = i as f64;
        log_sum += (-1.0 / (2.0 * i)).ln_1p();
    }
    log_sum.exp()
}

/// `h_n(0)` and `h_n'(0)` for any `n` (one of the two vanishes by parity).
pub fn hermite_center(n: usize) -> (f64, f64) {
    let (even, odd) = hermite_center_values(n / 2);
    if n.is_multiple_of(2) {
        (even, 0.0)
    } else {
        (0.0, odd)
    }
}

fn miller_start(k_max: usize, ax: f64) -> usize {
    let top = (k_max as f64).max(ax);
    (top + 30.0 + (40.0 * top).sqrt()).ceil() as usize
}

const MILLER_RESCALE: f64 = 1e250;

/// `j_0(x), …, j_{k_max}(x)`.
pub fn spherical_bessel_ladder(k_max: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; k_max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let ax = x.abs();
    let j0 = ax.sin() / ax;
    let j1 = if ax < 1e-3 {
        let x2 = ax * ax;
        ax / 3.0 * (1.0 - x2 / 10.0 * (1.0 - x2 / 28.0))
    } else {
        (j0 - ax.cos()) / ax
    };
    out[0] = j0;
    if k_max >= 1 {
        out[1] = j1;
    }
    if ax >= k_max as f64 {
        for n in 1..k_max {
            out[n + 1] = (2.0 * n as f64 + 1.0) / ax * out[n] - out[n - 1];
        }
    } else {
        let m = miller_start(k_max, ax);
        let mut upper = 0.0;
        let mut cur = 1e-30;
        for n in (0..m).rev() {
            let v = (2.0 * n as f64 + 3.0) / ax * cur - upper;
            upper = cur;
            cur = v;
            if n <= k_max {
                out[n] = v;
            }
            if v.abs() > MILLER_RESCALE {
                upper /= MILLER_RESCALE;
                cur /= MILLER_RESCALE;
                for o in out.iter_mut().skip(n) {
                    *o /= MILLER_RESCALE;
                }
            }
        }
        let s = if j0.abs() >= j1.abs() { j0 / out[0] } else { j1 / out[1] };
        for o in out.iter_mut() {
            *o *= s;
        }
    }
    if x < 0.0 {
        for o in out.iter_mut().skip(1).step_by(2) {
            *o = -*o;
        }
    }
    out
}

/// Spherical Bessel function of the first kind `j_k(x)`.
pub fn spherical_bessel_j(k: usize, x: f64) -> f64 {
    spherical_bessel_ladder(k, x)[k]
}

/// `J_0(x), …, J_{k_max}(x)` by Miller's downward recurrence normalized with
/// `J_0 + 2 Σ J_{2m} = 1`.
///
/// There is no elementary seed for an upward sweep, so the downward sweep is
/// used for every argument; its start index always exceeds `max(k_max, |x|)`.
pub fn bessel_j_ladder(k_max: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; k_max + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    let ax = x.abs();
    let mut m = miller_start(k_max, ax);
    if m % 2 == 1 {
        m += 1;
    }
    let mut upper = 0.0;
    let mut cur = 1e-30;
    // cur holds J_m; the sum collects 2·J_{2i} for 2i ≥ 2, plus J_0 at the end.
    let mut sum = 2.0 * cur;
    for n in (1..=m).rev() {
        let v = 2.0 * n as f64 / ax * cur - upper;
        upper = cur;
        cur = v;
        let idx = n - 1;
        if idx <= k_max {
            out[idx] = v;
        }
        if idx % 2 == 0 {
            sum += if idx == 0 { v } else { 2.0 * v };
        }
        if v.abs() > MILLER_RESCALE {
            upper /= MILLER_RESCALE;
            cur /= MILLER_RESCALE;
            sum /= MILLER_RESCALE;
            for o in out.iter_mut().skip(idx) {
                *o /= MILLER_RESCALE;
            }
        }
    }
    for o in out.iter_mut() {
        *o /= sum;
    }
    if x < 0.0 {
        for o in out.iter_mut().skip(1).step_by(2) {
            *o = -*o;
        }
    }
    out
}

/// Integer-order Bessel function of the first kind `J_k(x)`.
pub fn bessel_j(k: usize, x: f64) -> f64 {
    bessel_j_ladder(k, x)[k]
}

/// Places a real magnitude `r` times `i^k` without complex multiplication.
#[inline]
pub fn times_i_pow(k: usize, r: f64) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(r, 0.0),
        1 => Complex64::new(0.0, r),
        2 => Complex64::new(-r, 0.0),
        _ => Complex64::new(0.0, -r),
    }
}

/// `∫_{-1}^{1} e^{ixy} P_k(y) dy = 2 i^k j_k(x)`.
pub fn finite_fourier_legendre(k: usize, x: f64) -> Complex64 {
    times_i_pow(k, 2.0 * spherical_bessel_j(k, x))
}

/// `∫_{-1}^{1} e^{ixy} T_k(y) (1-y²)^{-1/2} dy = i^k κ J_k(x)`.
pub fn weighted_finite_fourier_chebyshev(k: usize, x: f64) -> Complex64 {
    times_i_pow(k, CHEBYSHEV_KAPPA * bessel_j(k, x))
}

/// `e^{k+3/2} |x|^k / (√2 (2k+3)^{k+1})`, evaluated in log form.
pub fn spherical_bessel_envelope(k: usize, x: f64) -> f64 {
    let kf = k as f64;
    if x == 0.0 {
        return if k == 0 {
            (1.5f64).exp() / (2.0f64.sqrt() * 3.0)
        } else {
            0.0
        };
    }
    let log = kf + 1.5 - 0.5 * 2.0f64.ln() - (kf + 1.0) * (2.0 * kf + 3.0).ln() + kf * x.abs().ln();
    log.exp()
}

/// `|x|^k / (2^k k!)`.
pub fn bessel_envelope(k: usize, x: f64) -> f64 {
    if x == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    let mut log = k as f64 * (0.5 * x.abs()).ln();
    for i in 2..=k {
        log -= (i as f64).ln();
    }
    log.exp()
}
