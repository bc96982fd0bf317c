//! The Hermite projection kernel `k_n`, the sinc kernel it approaches, and
//! scans of their difference on a square `[-T, T]²`.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{regime, Result};
use crate::orthopoly::hermite_function_batch;
use crate::quadrature::gauss_legendre_rule;

/// Below this separation the kernel is summed directly instead of through
/// the Christoffel-Darboux quotient.
pub const DIAGONAL_DELTA: f64 = 1e-6;

/// Below this separation the sinc kernel returns its limit `N/π`.
pub const SINC_DELTA: f64 = 1e-12;

/// Gauss-Legendre order per axis for the Hilbert-Schmidt norm.
pub const HS_ORDER: usize = 64;

/// Required agreement between the norm at [`HS_ORDER`] and at twice that order.
pub const HS_SELF_CHECK: f64 = 1e-6;

/// `N = (√(2n+1) + √(2n+3))/2`.
pub fn bandwidth_n(n: usize) -> f64 {
    let m = n as f64;
    0.5 * ((2.0 * m + 1.0).sqrt() + (2.0 * m + 3.0).sqrt())
}

/// `k_n(x, y) = Σ_{k≤n} h_k(x) h_k(y)`.
pub fn christoffel_darboux(n: usize, x: f64, y: f64) -> Result<f64> {
    let hx = hermite_function_batch(n + 1, x)?.values;
    let hy = hermite_function_batch(n + 1, y)?.values;
    Ok(kernel_from_ladders(n, x, y, &hx, &hy))
}

/// Kernel value from precomputed ladders `h_0..h_{n+1}` at `x` and `y`.
fn kernel_from_ladders(n: usize, x: f64, y: f64, hx: &[f64], hy: &[f64]) -> f64 {
    if (x - y).abs() <= DIAGONAL_DELTA {
        hx[..=n].iter().zip(&hy[..=n]).map(|(a, b)| a * b).sum()
    } else {
        ((n as f64 + 1.0) / 2.0).sqrt() * (hx[n + 1] * hy[n] - hy[n + 1] * hx[n]) / (x - y)
    }
}

/// `sin(N(x-y)) / (π(x-y))`.
pub fn sinc_kernel(bandwidth: f64, x: f64, y: f64) -> f64 {
    let d = x - y;
    if d.abs() < SINC_DELTA {
        bandwidth / PI
    } else {
        (bandwidth * d).sin() / (PI * d)
    }
}

/// Summary of `R_n = k_n − sinc_N` on `[-T, T]²`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelScan {
    pub n: usize,
    pub t: f64,
    pub grid_m: usize,
    /// Maximum of `|R_n|` over the uniform `grid_m × grid_m` grid.
    pub e_tilde: f64,
    /// `‖R_n‖_{L²([-T,T]²)}` by tensor Gauss-Legendre of order [`HS_ORDER`].
    pub hs_norm: f64,
    /// The same norm at twice the order, as a self-check.
    pub hs_norm_refined: f64,
    /// Whether `(n, T)` lies where the uniform and Hilbert-Schmidt bounds are
    /// stated: `T ≥ 2, n ≥ 2T²`, or `T = 1, n ≥ 6`.
    pub regime_ok: bool,
}

impl KernelScan {
    pub fn hs_self_check_ok(&self) -> bool {
        (self.hs_norm - self.hs_norm_refined).abs() <= HS_SELF_CHECK
    }
}

/// Whether the kernel residual bounds are stated for `(n, T)`.
pub fn kernel_regime(n: usize, t: f64) -> bool {
    let n = n as f64;
    (t >= 2.0 && n >= 2.0 * t * t) || (t == 1.0 && n >= 6.0)
}

/// Scans `|k_n − sinc_N|` on a uniform grid and integrates its square.
pub fn residual_scan(n: usize, t: f64, grid_m: usize) -> Result<KernelScan> {
    if grid_m < 2 {
        return Err(crate::Error::InvalidArgument(format!(
            "grid_m = {grid_m} must be at least 2"
        )));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(crate::Error::InvalidArgument(format!("T = {t} must be positive")));
    }
    let step = 2.0 * t / (grid_m - 1) as f64;
    let grid: Vec<f64> = (0..grid_m).map(|i| -t + step * i as f64).collect();
    let e_tilde = residual_max(n, &grid)?;
    let hs_norm = residual_hs(n, t, HS_ORDER)?;
    let hs_norm_refined = residual_hs(n, t, 2 * HS_ORDER)?;
    Ok(KernelScan {
        n,
        t,
        grid_m,
        e_tilde,
        hs_norm,
        hs_norm_refined,
        regime_ok: kernel_regime(n, t),
    })
}

fn ladders(n: usize, points: &[f64]) -> Result<Vec<Vec<f64>>> {
    points
        .iter()
        .map(|&x| hermite_function_batch(n + 1, x).map(|b| b.values))
        .collect()
}

fn residual_max(n: usize, grid: &[f64]) -> Result<f64> {
    let big_n = bandwidth_n(n);
    let h = ladders(n, grid)?;
    let row_max: Vec<f64> = (0..grid.len())
        .into_par_iter()
        .map(|i| {
            let mut m = 0.0f64;
            for j in 0..grid.len() {
                let k = kernel_from_ladders(n, grid[i], grid[j], &h[i], &h[j]);
                m = m.max((k - sinc_kernel(big_n, grid[i], grid[j])).abs());
            }
            m
        })
        .collect();
    Ok(row_max.into_iter().fold(0.0, f64::max))
}

fn residual_hs(n: usize, t: f64, order: usize) -> Result<f64> {
    let big_n = bandwidth_n(n);
    let rule = gauss_legendre_rule(order)?;
    let (nodes, weights): (Vec<f64>, Vec<f64>) = rule.mapped(-t, t).unzip();
    let h = ladders(n, &nodes)?;
    let rows: Vec<f64> = (0..nodes.len())
        .into_par_iter()
        .map(|i| {
            let mut s = 0.0;
            for j in 0..nodes.len() {
                let r =
                    kernel_from_ladders(n, nodes[i], nodes[j], &h[i], &h[j]) - sinc_kernel(big_n, nodes[i], nodes[j]);
                s += weights[j] * r * r;
            }
            weights[i] * s
        })
        .collect();
    Ok(rows.iter().sum::<f64>().sqrt())
}

/// `(17T²/√(2n+1), 34T³/√(2n+1))`: the uniform and Hilbert-Schmidt bounds on
/// `R_n` over `[-T, T]²`, for `T ≥ 1` and `n ≥ max(6, 2T²)`.
pub fn residual_bounds(n: usize, t: f64) -> Result<(f64, f64)> {
    let nf = n as f64;
    if !(t >= 1.0) || nf < 6.0f64.max(2.0 * t * t) {
        return Err(regime(
            "residual_bounds",
            format!("need T >= 1 and n >= max(6, 2T²); got T = {t}, n = {n}"),
        ));
    }
    let s = (2.0 * nf + 1.0).sqrt();
    Ok((17.0 * t * t / s, 34.0 * t * t * t / s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn bandwidth_literal_values() {
        assert_relative_eq!(bandwidth_n(0), (1.0 + 3f64.sqrt()) / 2.0, epsilon = 1e-15);
        assert_relative_eq!(bandwidth_n(4), (3.0 + 11f64.sqrt()) / 2.0, epsilon = 1e-15);
        let b = bandwidth_n(9);
        assert!(b > 19f64.sqrt() && b < 21f64.sqrt());
    }

    #[test]
    fn degree_zero_kernel_is_gaussian_product() {
        let (x, y): (f64, f64) = (0.4, -1.1);
        let expected = (-(x * x + y * y) / 2.0).exp() / PI.sqrt();
        assert_relative_eq!(christoffel_darboux(0, x, y).unwrap(), expected, max_relative = 1e-14);
    }

    #[test]
    fn quotient_and_direct_sum_agree() {
        let n = 25;
        let (x, y) = (0.3, -0.4);
        let hx = hermite_function_batch(n + 1, x).unwrap().values;
        let hy = hermite_function_batch(n + 1, y).unwrap().values;
        let direct: f64 = hx[..=n].iter().zip(&hy[..=n]).map(|(a, b)| a * b).sum();
        assert_relative_eq!(christoffel_darboux(n, x, y).unwrap(), direct, epsilon = 1e-10);
    }

    #[test]
    fn kernel_is_symmetric() {
        for &(x, y) in &[(0.1, 2.0), (-3.0, 1.5), (0.7, 0.7 + 1e-7)] {
            assert_relative_eq!(
                christoffel_darboux(17, x, y).unwrap(),
                christoffel_darboux(17, y, x).unwrap(),
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn sinc_kernel_values() {
        assert_relative_eq!(sinc_kernel(3.0, 0.2, 0.2), 3.0 / PI);
        assert!(sinc_kernel(PI, 1.0, 0.0).abs() < 1e-16);
        assert_eq!(sinc_kernel(2.5, 0.3, 1.1), sinc_kernel(2.5, 1.1, 0.3));
    }

    #[test]
    fn table_values_at_small_grid_cost() {
        let s = residual_scan(10, 1.0, 80).unwrap();
        assert!((s.e_tilde - 0.067).abs() <= 0.005, "{}", s.e_tilde);
        assert!(s.regime_ok);
        assert!(s.hs_self_check_ok());
    }

    #[test]
    fn residual_bounds_literal_and_ratio() {
        let (u, h) = residual_bounds(50, 1.0).unwrap();
        assert_relative_eq!(u, 17.0 / 101f64.sqrt());
        assert_relative_eq!(h, 34.0 / 101f64.sqrt());
        let (u2, h2) = residual_bounds(40, 3.0).unwrap();
        assert_relative_eq!(h2 / u2, 6.0, max_relative = 1e-15);
        assert!(residual_bounds(5, 1.0).is_err());
        assert!(residual_bounds(7, 2.0).is_err());
        assert!(residual_bounds(50, 0.5).is_err());
    }

    #[test]
    fn scan_rejects_degenerate_grid() {
        assert!(residual_scan(10, 1.0, 1).is_err());
    }
}
