//! Cyclic Jacobi eigensolver for small dense symmetric matrices.
//!
//! An off-diagonal entry is rotated away while `|a_pq|` exceeds
//! `ε·√|a_pp|·√|a_qq|`. On positive semidefinite matrices whose entries span
//! hundreds of orders of magnitude this keeps small eigenvalues and their
//! eigenvectors accurate relative to their own size, and no intermediate
//! squares an entry, so nothing underflows.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Relative threshold for annihilating an off-diagonal entry.
pub const JACOBI_TOLERANCE: f64 = 4.0 * f64::EPSILON;

/// Sweeps allowed before giving up.
pub const JACOBI_MAX_SWEEPS: usize = 60;

/// Eigenvalues and orthonormal eigenvectors (as columns) of a symmetric
/// matrix, in no particular order.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigenpairs {
    pub values: Vec<f64>,
    pub vectors: DMatrix<f64>,
}

/// Diagonalizes `a` by cyclic Jacobi rotations. Only the upper triangle is
/// read.
pub fn jacobi_eigen(mut a: DMatrix<f64>) -> Result<SymmetricEigenpairs> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::InvalidArgument(format!(
            "matrix is {}x{}, not square",
            n,
            a.ncols()
        )));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidArgument("matrix has non-finite entries".into()));
    }
    let mut v = DMatrix::<f64>::identity(n, n);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let (app, aqq) = (a[(p, p)], a[(q, q)]);
                if apq.abs() <= JACOBI_TOLERANCE * app.abs().sqrt() * aqq.abs().sqrt() {
                    a[(p, q)] = 0.0;
                    a[(q, p)] = 0.0;
                    continue;
                }
                rotated = true;
                rotate(&mut a, &mut v, p, q);
            }
        }
        if !rotated {
            return Ok(SymmetricEigenpairs {
                values: (0..n).map(|i| a[(i, i)]).collect(),
                vectors: v,
            });
        }
    }
    Err(Error::Convergence {
        order: n,
        index: JACOBI_MAX_SWEEPS,
    })
}

/// Applies the rotation in the `(p, q)` plane that zeroes `a_pq`.
fn rotate(a: &mut DMatrix<f64>, v: &mut DMatrix<f64>, p: usize, q: usize) {
    let n = a.nrows();
    let apq = a[(p, q)];
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    // The root of t² + 2θt − 1 = 0 of smaller magnitude; for huge θ the
    // square would overflow and t ≈ 1/(2θ).
    let t = if theta.abs() > 1e150 {
        0.5 / theta
    } else {
        theta.signum() / (theta.abs() + theta.mul_add(theta, 1.0).sqrt())
    };
    let c = 1.0 / t.mul_add(t, 1.0).sqrt();
    let s = t * c;
    let tau = s / (1.0 + c);
    a[(p, p)] -= t * apq;
    a[(q, q)] += t * apq;
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for r in 0..n {
        if r != p && r != q {
            let (arp, arq) = (a[(r, p)], a[(r, q)]);
            let np = arp - s * (arq + tau * arp);
            let nq = arq + s * (arp - tau * arq);
            a[(r, p)] = np;
            a[(p, r)] = np;
            a[(r, q)] = nq;
            a[(q, r)] = nq;
        }
        let (vrp, vrq) = (v[(r, p)], v[(r, q)]);
        v[(r, p)] = vrp - s * (vrq + tau * vrp);
        v[(r, q)] = vrq + s * (vrp - tau * vrq);
    }
}
