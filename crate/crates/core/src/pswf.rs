//! Spectrum of the time-and-band limiting operator `Q_c` on `L²(-1, 1)`,
//! whose kernel is `sin(c(x-y))/(π(x-y))`, by Legendre-Galerkin
//! discretization; lower bounds for its eigenvalues `λ_n(c)`; and a bracket
//! for the Sturm-Liouville eigenvalues `χ_n(c)` of the prolate spheroidal
//! wave functions.

use std::f64::consts::{E, PI};

use nalgebra::DMatrix;

use crate::eigen::jacobi_eigen;
use crate::error::{domain, Error, Result};
use crate::orthopoly::{
    legendre_ladder, legendre_ladder_with_derivatives, legendre_norm_factor, spherical_bessel_ladder,
};
use crate::quadrature::{composite_rule, gauss_legendre_rule, panel_breaks};

/// Eigenvalues below this level cannot be resolved in double precision.
pub const DISCRETIZATION_FLOOR: f64 = 1e-14;

/// Required agreement of eigenvalues between order `K` and `K + REFINE_STEP`.
pub const CERTIFY_TOLERANCE: f64 = 1e-10;

pub const REFINE_STEP: usize = 20;

/// Required agreement of each Legendre coefficient `β_k^n` between order `K`
/// and `K + REFINE_STEP` for column `n` to count as certified.
pub const VECTOR_CERTIFY_TOLERANCE: f64 = 1e-6;

/// Galerkin entries below this magnitude are stored as zero.
const NEGLIGIBLE_ENTRY: f64 = 1e-100;

/// `⌊2c/π⌋`, the index around which `λ_n(c)` drops from near 1 to near 0.
pub fn plunge_index(c: f64) -> usize {
    (2.0 * c / PI).floor() as usize
}

/// Default Galerkin order `⌈2c/π⌉ + 40`.
pub fn default_order(c: f64) -> usize {
    (2.0 * c / PI).ceil() as usize + 40
}

/// Galerkin matrix of `Q_c` in the orthonormal Legendre basis:
/// `M_jk = (2c/π)√((j+½)(k+½)) (-1)^{(k-j)/2} ∫_{-1}^{1} j_j(cx) j_k(cx) dx`
/// for `j ≡ k (mod 2)`, and 0 otherwise.
///
/// It follows from `∫_{-1}^{1} e^{ixy} P_k(y) dy = 2 i^k j_k(x)` and the
/// representation `sin(c(x-y))/(π(x-y)) = (c/2π) ∫_{-1}^{1} e^{ic(x-y)t} dt`.
pub fn galerkin_matrix(c: f64, k: usize) -> Result<DMatrix<f64>> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(domain("galerkin_matrix", c, "c > 0"));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("Galerkin order must be positive".into()));
    }
    // ∫_{-1}^{1} j_j(cx) j_k(cx) dx = (2/c) ∫_0^c j_j(t) j_k(t) dt for j ≡ k (mod 2).
    let base = gauss_legendre_rule(32)?;
    let rule = composite_rule(&base, &panel_breaks(0.0, c, &[], 1.0));
    let mut gram = DMatrix::<f64>::zeros(k, k);
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let jl = spherical_bessel_ladder(k - 1, t);
        for a in 0..k {
            let wa = w * jl[a];
            for b in (a..k).step_by(2) {
                gram[(a, b)] += wa * jl[b];
            }
        }
    }
    let mut m = DMatrix::<f64>::zeros(k, k);
    for a in 0..k {
        for b in (a..k).step_by(2) {
            let sign = if ((b - a) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let v = 2.0 * c / PI * legendre_norm_factor(a) * legendre_norm_factor(b) * sign * (2.0 / c) * gram[(a, b)];
            // Entries whose squares underflow make the eigensolver's Householder
            // norms vanish and yield NaN; anything this small cannot move an
            // eigenvalue above the discretization floor.
            let v = if v.abs() < NEGLIGIBLE_ENTRY { 0.0 } else { v };
            m[(a, b)] = v;
            m[(b, a)] = v;
        }
    }
    Ok(m)
}

/// Eigenvalues and Legendre coefficients of the prolate spheroidal wave
/// functions `ψ_{n,c}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PswfSpectrum {
    pub c: f64,
    /// Galerkin order.
    pub k: usize,
    /// `λ_0 > λ_1 > …` down to [`DISCRETIZATION_FLOOR`], length `k`. Index
    /// `n` always carries the parity of `n`; below the floor, where the
    /// values are roundoff, that parity rule rather than size fixes the order.
    pub lambdas: Vec<f64>,
    /// Column `n` holds `β_k^n = √(k+½)·⟨ψ_{n,c}, P̃_k⟩`, so that
    /// `ψ_{n,c} = Σ_k β_k^n P_k` on `[-1, 1]`.
    pub beta: DMatrix<f64>,
    /// Largest eigenvalue change above the floor between order `k` and `k + 20`.
    pub certified_gap: f64,
    /// Number of leading columns of `beta` that agree with the refined run
    /// within [`VECTOR_CERTIFY_TOLERANCE`]. Past it the eigenvalues are so
    /// small that the computed eigenvectors mix.
    pub vectors_certified: usize,
}

impl PswfSpectrum {
    /// Orthonormal Legendre coefficients `⟨ψ_{n,c}, P̃_k⟩` of column `n`.
    pub fn orthonormal_coeffs(&self, n: usize) -> Vec<f64> {
        (0..self.k)
            .map(|j| self.beta[(j, n)] / legendre_norm_factor(j))
            .collect()
    }

    /// `ψ_{n,c}(x)` for `|x| ≤ 1`.
    pub fn psi(&self, n: usize, x: f64) -> Result<f64> {
        if x.abs() > 1.0 {
            return Err(domain("psi", x, "[-1, 1]"));
        }
        Ok(legendre_ladder(self.k - 1, x)
            .iter()
            .enumerate()
            .map(|(j, p)| self.beta[(j, n)] * p)
            .sum())
    }

    /// Indices whose eigenvalue is above [`DISCRETIZATION_FLOOR`].
    pub fn resolved(&self) -> usize {
        self.lambdas.iter().take_while(|&&l| l > DISCRETIZATION_FLOOR).count()
    }

    pub fn trace(&self) -> f64 {
        self.lambdas.iter().sum()
    }
}

/// Eigen-decomposition of [`galerkin_matrix`], certified against a refined run.
pub fn spectrum(c: f64, k: usize) -> Result<PswfSpectrum> {
    let base = decompose(c, k)?;
    let refined = decompose(c, k + REFINE_STEP)?;
    let mut gap = 0.0f64;
    for (n, (&a, &b)) in base.0.iter().zip(&refined.0).enumerate() {
        if a <= DISCRETIZATION_FLOOR && b <= DISCRETIZATION_FLOOR {
            break;
        }
        let d = (a - b).abs();
        if d > CERTIFY_TOLERANCE {
            return Err(Error::NotCertified {
                order: k,
                refined: k + REFINE_STEP,
                index: n,
                gap: d,
            });
        }
        gap = gap.max(d);
    }
    let (fine_beta, coarse_beta) = (&refined.1, &base.1);
    let vectors_certified = (0..k)
        .take_while(|&n| {
            (0..k + REFINE_STEP).all(|j| {
                let coarse = if j < k { coarse_beta[(j, n)] } else { 0.0 };
                (coarse - fine_beta[(j, n)]).abs() <= VECTOR_CERTIFY_TOLERANCE
            })
        })
        .count();
    Ok(PswfSpectrum {
        c,
        k,
        lambdas: base.0,
        beta: base.1,
        certified_gap: gap,
        vectors_certified,
    })
}

fn decompose(c: f64, k: usize) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let m = galerkin_matrix(c, k)?;
    // The matrix splits into even and odd blocks. ψ_n has the parity of n, so
    // column n is the (n/2)-th eigenvector of its block; deciding the parity
    // this way keeps eigenvectors with eigenvalues near roundoff from mixing.
    let mut blocks = Vec::with_capacity(2);
    for parity in [0usize, 1] {
        let idx: Vec<usize> = (parity..k).step_by(2).collect();
        let sub = DMatrix::from_fn(idx.len(), idx.len(), |i, j| m[(idx[i], idx[j])]);
        let eig = jacobi_eigen(sub)?;
        let mut order: Vec<usize> = (0..idx.len()).collect();
        order.sort_by(|&a, &b| eig.values[b].total_cmp(&eig.values[a]));
        blocks.push((idx, eig, order));
    }
    let mut lambdas = Vec::with_capacity(k);
    let mut beta = DMatrix::<f64>::zeros(k, k);
    for n in 0..k {
        let (idx, eig, order) = &blocks[n % 2];
        let i = order[n / 2];
        lambdas.push(eig.values[i]);
        let v = eig.vectors.column(i);
        // ψ(1) = Σ v_j P̃_j(1) = Σ v_j √(j+½)
        let at_one: f64 = idx
            .iter()
            .zip(v.iter())
            .map(|(&j, x)| x * legendre_norm_factor(j))
            .sum();
        let sign = if at_one < 0.0 { -1.0 } else { 1.0 };
        for (&j, x) in idx.iter().zip(v.iter()) {
            beta[(j, n)] = sign * legendre_norm_factor(j) * x;
        }
    }
    Ok((lambdas, beta))
}

/// `(Q_c ψ_{n,c})(x) − λ_n ψ_{n,c}(x)` at each of `points`, with `Q_c`
/// applied by Gauss-Legendre quadrature on `[-1, 1]`.
pub fn eigen_residual(s: &PswfSpectrum, n: usize, points: &[f64]) -> Result<Vec<f64>> {
    if n >= s.k {
        return Err(domain("eigen_residual", n as f64, format!("n < K = {}", s.k)));
    }
    let rule = gauss_legendre_rule(s.k + 2 * s.c.ceil() as usize + 40)?;
    let psi_at_nodes: Vec<f64> = rule.nodes.iter().map(|&y| s.psi(n, y)).collect::<Result<_>>()?;
    points
        .iter()
        .map(|&x| {
            let applied: f64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .zip(&psi_at_nodes)
                .map(|((&y, &w), &p)| w * sinc_operator_kernel(s.c, x - y) * p)
                .sum();
            Ok(applied - s.lambdas[n] * s.psi(n, x)?)
        })
        .collect()
}

/// `sin(cd)/(πd)`, with its limit `c/π` at `d = 0`.
fn sinc_operator_kernel(c: f64, d: f64) -> f64 {
    let u = c * d;
    if u.abs() < 1e-8 {
        c / PI * (1.0 - u * u / 6.0)
    } else {
        u.sin() / (PI * d)
    }
}

/// A lower bound together with the (0-based) eigenvalue index it bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IndexedBound {
    pub value: f64,
    pub index: usize,
}

/// `7(1 − 2c/(nπ))²(c/(7πn))^{2n−1}` for `n > 2c/π`, and `4/(π+2c)` for
/// `n = ⌊2c/π⌋`.
///
/// Both are bounds for the `n`-th largest eigenvalue, `λ_{n−1}` in the
/// 0-based indexing of [`PswfSpectrum::lambdas`]; the returned index says so.
pub fn lower_bound_naz(n: usize, c: f64) -> Result<IndexedBound> {
    if !(c > 0.0) {
        return Err(domain("lower_bound_naz", c, "c > 0"));
    }
    let nf = n as f64;
    let ratio = 2.0 * c / PI;
    if n == 0 || n < plunge_index(c) {
        return Err(domain(
            "lower_bound_naz",
            nf,
            format!("n >= max(1, floor(2c/π) = {})", plunge_index(c)),
        ));
    }
    let value = if nf > ratio {
        let ln = 7f64.ln() + 2.0 * (1.0 - ratio / nf).ln() + (2.0 * nf - 1.0) * (c / (7.0 * PI * nf)).ln();
        ln.exp()
    } else {
        4.0 / (PI + 2.0 * c)
    };
    Ok(IndexedBound { value, index: n - 1 })
}

/// `(2/5)(2c/(π(n+1)))^{5(n+1)}` for `n ≥ max(3, 2c/π)`, bounding `λ_n`.
pub fn lower_bound_bk(n: usize, c: f64) -> Result<IndexedBound> {
    let nf = n as f64;
    if !(c > 0.0) || nf < 3f64.max(2.0 * c / PI) {
        return Err(domain(
            "lower_bound_bk",
            nf,
            format!("n >= max(3, 2c/π = {})", 2.0 * c / PI),
        ));
    }
    let ln = (0.4f64).ln() + 5.0 * (nf + 1.0) * (2.0 * c / (PI * (nf + 1.0))).ln();
    Ok(IndexedBound {
        value: ln.exp(),
        index: n,
    })
}

/// Min-max lower bound from the `n`-dimensional space of functions that are
/// constant on each of `n` equal subintervals of `[-1, 1]`.
///
/// With `f = Σ f_j 1_{I_j}` one has `‖f‖² = (2/n) Σ |f_j|²` and
/// `⟨Q_c f, f⟩ = (4/n)·fᵀ G f`, where
/// `G_jk = (1/(πn)) ∫_{-2c/n}^{2c/n} cos((j−k)η) (sin(η/2)/(η/2))² dη`.
/// The Rayleigh quotient on that space is at least `(n/2)·λ_min(G)`, which
/// therefore bounds the `n`-th largest eigenvalue, `λ_{n−1}`.
pub fn certified_lower_bound_piecewise(n: usize, c: f64) -> Result<IndexedBound> {
    if n == 0 {
        return Err(domain("certified_lower_bound_piecewise", 0.0, "n >= 1"));
    }
    if !(c > 0.0) || !c.is_finite() {
        return Err(domain("certified_lower_bound_piecewise", c, "c > 0"));
    }
    let nf = n as f64;
    let top = 2.0 * c / nf;
    let base = gauss_legendre_rule(32)?;
    let rule = composite_rule(&base, &panel_breaks(0.0, top, &[], 1.0));
    let symbol: Vec<f64> = (0..n)
        .map(|d| {
            let s: f64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&eta, &w)| {
                    let h = 0.5 * eta;
                    let sinc = if h.abs() < 1e-8 { 1.0 - h * h / 6.0 } else { h.sin() / h };
                    w * (d as f64 * eta).cos() * sinc * sinc
                })
                .sum();
            2.0 * s / (PI * nf)
        })
        .collect();
    let g = DMatrix::from_fn(n, n, |i, j| symbol[i.abs_diff(j)]);
    let min = jacobi_eigen(g)?.values.into_iter().fold(f64::INFINITY, f64::min);
    Ok(IndexedBound {
        value: 0.5 * nf * min,
        index: n - 1,
    })
}

/// `n(n+1) ≤ χ_n(c) ≤ n(n+1) + c²`, optionally with the Rayleigh quotient of
/// the computed eigenfunction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiBracket {
    pub n: usize,
    pub c: f64,
    pub lower: f64,
    pub upper: f64,
    pub rayleigh: Option<f64>,
}

impl ChiBracket {
    pub fn contains_rayleigh(&self) -> Option<bool> {
        self.rayleigh.map(|r| self.lower <= r && r <= self.upper)
    }
}

/// The bracket for `χ_n(c)`; with a spectrum, also
/// `⟨𝓛_c ψ_n, ψ_n⟩ = ∫ (1−x²)ψ_n'² + c²x²ψ_n²` where
/// `𝓛_c ψ = −((1−x²)ψ')' + c²x²ψ`. The quotient needs `n < K − 5` and
/// `n < vectors_certified`.
pub fn chi_bracket(n: usize, c: f64, spec: Option<&PswfSpectrum>) -> Result<ChiBracket> {
    let nf = n as f64;
    let lower = nf * (nf + 1.0);
    let rayleigh = match spec {
        None => None,
        Some(s) => {
            if n + 5 >= s.k {
                return Err(domain("chi_bracket", nf, format!("n < K - 5 = {}", s.k as i64 - 5)));
            }
            if n >= s.vectors_certified {
                return Err(domain(
                    "chi_bracket",
                    nf,
                    format!("n < {} (eigenvectors certified by refinement)", s.vectors_certified),
                ));
            }
            // The integrand is a polynomial of degree 2K; K+1 nodes integrate it exactly.
            let rule = gauss_legendre_rule(s.k + 1)?;
            let mut total = 0.0;
            for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
                let (p, dp) = legendre_ladder_with_derivatives(s.k - 1, x);
                let (mut psi, mut dpsi) = (0.0, 0.0);
                for j in 0..s.k {
                    psi += s.beta[(j, n)] * p[j];
                    dpsi += s.beta[(j, n)] * dp[j];
                }
                total += w * ((1.0 - x * x) * dpsi * dpsi + s.c * s.c * x * x * psi * psi);
            }
            Some(total)
        }
    };
    Ok(ChiBracket {
        n,
        c,
        lower,
        upper: lower + c * c,
        rayleigh,
    })
}

/// Bound on `|β_k^n(c)|`, selected by `n` against `m = ⌊2c/π⌋`:
/// - `n ≤ m − 1`: `2√(e/(πc))·√(2k+1)·(ec/(2k+3))^{k+1}`
/// - `n = m`: `√(e(π+2c)/(2πc))·√(k+½)·(ec/(2k+3))^{k+1}`
/// - `n ≥ m + 1`: `√(2e/(7π))·c^{-1/2}·(1−2c/(nπ))^{-1}·(7πn/c)^{n−½}·√(k+½)·(ec/(2k+3))^{k+1}`
pub fn beta_bound(n: usize, k: usize, c: f64) -> f64 {
    let (nf, kf) = (n as f64, k as f64);
    let m = plunge_index(c);
    let decay = (kf + 1.0) * (E * c / (2.0 * kf + 3.0)).ln();
    let ln = if n < m {
        2f64.ln() + 0.5 * (E / (PI * c)).ln() + 0.5 * (2.0 * kf + 1.0).ln() + decay
    } else if n == m {
        0.5 * (E * (PI + 2.0 * c) / (2.0 * PI * c)).ln() + 0.5 * (kf + 0.5).ln() + decay
    } else {
        0.5 * (2.0 * E / (7.0 * PI)).ln() - 0.5 * c.ln() - (1.0 - 2.0 * c / (nf * PI)).ln()
            + (nf - 0.5) * (7.0 * PI * nf / c).ln()
            + 0.5 * (kf + 0.5).ln()
            + decay
    };
    if ln < -745.2 {
        0.0
    } else {
        ln.exp()
    }
}
