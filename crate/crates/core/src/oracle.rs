//! Dense symmetric eigensolver used as ground truth for the closed forms.
//!
//! Cyclic-by-row Jacobi: each sweep visits every `(p, q)` pair above the
//! diagonal and applies the plane rotation that zeroes `a[p][q]`. Sweeps stop
//! once the off-diagonal Frobenius norm drops to the requested tolerance.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::spectra::full_spectrum;
use crate::topology::{build_laplacian, DenseMatrix, GraphSpec};

pub const DEFAULT_MAX_SWEEPS: usize = 50;

/// Largest node count accepted by [`verify_closed_form`].
pub const MAX_ORACLE_NODES: usize = 4096;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    /// Eigenvalues in non-decreasing order.
    pub eigenvalues: Vec<f64>,
    /// Number of full sweeps performed.
    pub iterations: usize,
    /// Off-diagonal Frobenius norm at termination.
    pub off_diagonal_norm: f64,
}

/// Default absolute tolerance for a matrix: `1e-10 * ||A||_F`.
pub fn default_tolerance(mat: &DenseMatrix) -> f64 {
    let norm = mat.frobenius_norm();
    if norm > 0.0 {
        1e-10 * norm
    } else {
        f64::MIN_POSITIVE
    }
}

fn off_diagonal_norm(a: &[f64], n: usize) -> f64 {
    let mut sum = 0.0;
    for p in 0..n {
        for q in p + 1..n {
            let v = a[p * n + q];
            sum += v * v;
        }
    }
    (2.0 * sum).sqrt()
}

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
pub fn jacobi_eigenvalues(mat: &DenseMatrix, tol: f64, max_sweeps: usize) -> Result<OracleResult> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    if max_sweeps == 0 {
        return Err(Error::InvalidArgument("max_sweeps must be at least 1".into()));
    }
    if let Some((row, col)) = mat.first_asymmetry() {
        return Err(Error::NotSymmetric { row, col });
    }

    let n = mat.order();
    let mut a: Vec<f64> = mat.rows().flatten().copied().collect();
    let mut sweeps = 0;
    let mut residual = off_diagonal_norm(&a, n);

    while residual > tol {
        if sweeps == max_sweeps {
            return Err(Error::NonConvergence {
                sweeps,
                residual,
                tol,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, n, p, q);
            }
        }
        sweeps += 1;
        residual = off_diagonal_norm(&a, n);
    }

    let mut eigenvalues: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(OracleResult {
        eigenvalues,
        iterations: sweeps,
        off_diagonal_norm: residual,
    })
}

/// Zeroes `a[p][q]` (and `a[q][p]`) with a Jacobi rotation.
fn rotate(a: &mut [f64], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == 0.0 {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let theta = (aqq - app) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    a[p * n + p] = app - t * apq;
    a[q * n + q] = aqq + t * apq;
    a[p * n + q] = 0.0;
    a[q * n + p] = 0.0;
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        let new_kp = c * akp - s * akq;
        let new_kq = s * akp + c * akq;
        a[k * n + p] = new_kp;
        a[p * n + k] = new_kp;
        a[k * n + q] = new_kq;
        a[q * n + k] = new_kq;
    }
}

/// Compares the closed-form spectrum of `spec` against the Jacobi oracle run
/// on its explicit Laplacian. Returns the largest absolute difference between
/// the two sorted eigenvalue lists.
///
/// `tol` is the Jacobi stopping tolerance; `None` uses [`default_tolerance`].
pub fn verify_closed_form(spec: &GraphSpec, tol: Option<f64>) -> Result<f64> {
    spec.check()?;
    let nodes = spec.node_count();
    if nodes > MAX_ORACLE_NODES {
        return Err(Error::TooLarge {
            nodes,
            limit: MAX_ORACLE_NODES,
        });
    }
    let laplacian = build_laplacian(spec)?;
    let tol = tol.unwrap_or_else(|| default_tolerance(&laplacian));
    let oracle = jacobi_eigenvalues(&laplacian, tol, DEFAULT_MAX_SWEEPS)?;
    let closed = full_spectrum(spec)?.sorted_values();
    Ok(max_abs_deviation(&oracle.eigenvalues, &closed))
}

pub(crate) fn max_abs_deviation(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
