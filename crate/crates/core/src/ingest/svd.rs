use alloc::vec::Vec;

use super::DenseMatrix;
use crate::math::sqrt;
use crate::{Error, Result};

/// Sweep cap of the Jacobi iteration.
pub const MAX_SWEEPS: usize = 60;

/// Singular values in decreasing order, by one-sided (Hestenes) Jacobi
/// rotations on the columns of the taller orientation of `m`.
///
/// A pair of columns is rotated while `|aᵢ·aⱼ| > tol·‖aᵢ‖‖aⱼ‖`; the iteration
/// stops after a sweep without rotations.
pub fn singular_values(m: &DenseMatrix, tol: f64) -> Result<Vec<f64>> {
    let a = if m.rows() >= m.cols() { m.clone() } else { m.transpose() };
    let (rows, cols) = (a.rows(), a.cols());
    let mut columns: Vec<Vec<f64>> = (0..cols).map(|j| (0..rows).map(|i| a.get(i, j)).collect()).collect();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..cols {
            for j in i + 1..cols {
                let (left, right) = columns.split_at_mut(j);
                let (x, y) = (&mut left[i], &mut right[0]);
                let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, 0.0);
                for (p, q) in x.iter().zip(y.iter()) {
                    alpha += p * p;
                    beta += q * q;
                    gamma += p * q;
                }
                if gamma == 0.0 || gamma.abs() <= tol * sqrt(alpha * beta) {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + sqrt(1.0 + zeta * zeta));
                let c = 1.0 / sqrt(1.0 + t * t);
                let s = c * t;
                for (p, q) in x.iter_mut().zip(y.iter_mut()) {
                    let (u, v) = (*p, *q);
                    *p = c * u - s * v;
                    *q = s * u + c * v;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }
    let mut sigma: Vec<f64> = columns.iter().map(|c| sqrt(c.iter().map(|v| v * v).sum())).collect();
    sigma.sort_by(|a, b| b.total_cmp(a));
    Ok(sigma)
}
