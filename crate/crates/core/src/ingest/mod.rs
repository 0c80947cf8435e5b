//! From concrete objects to spectral profiles, and seeded generators.

mod generate;
mod svd;

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::rearrange::{LineStepFunction, SpectralProfile, StepFunction};
use crate::{Error, Result};

pub use generate::{random_matrix, random_profile, random_symmetric_matrix, GeneratorSpec};
pub use svd::{singular_values, MAX_SWEEPS};

/// Default relative tolerance of [`profile_from_matrix`].
pub const DEFAULT_SVD_TOLERANCE: f64 = 1e-12;

/// A real matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMatrix")]
pub struct DenseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

#[derive(Deserialize)]
struct RawMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl TryFrom<RawMatrix> for DenseMatrix {
    type Error = Error;

    fn try_from(raw: RawMatrix) -> Result<Self> {
        DenseMatrix::new(raw.rows, raw.cols, raw.entries)
    }
}

impl DenseMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::Shape {
                rows,
                cols,
                expected: rows * cols,
                got: entries.len(),
            });
        }
        if let Some(&v) = entries.iter().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(v));
        }
        Ok(DenseMatrix { rows, cols, entries })
    }

    /// Square diagonal matrix.
    pub fn diagonal(diag: &[f64]) -> Result<Self> {
        let n = diag.len();
        let mut entries = alloc::vec![0.0; n * n];
        for (i, &d) in diag.iter().enumerate() {
            entries[i * n + i] = d;
        }
        Self::new(n, n, entries)
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::diagonal(&alloc::vec![1.0; n])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j));
            }
        }
        DenseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// Entrywise sum.
    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape {
                rows: other.rows,
                cols: other.cols,
                expected: self.rows * self.cols,
                got: other.entries.len(),
            });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// The same matrix with its rows permuted: row `i` of the result is row
    /// `perm[i]` of `self`.
    pub fn permute_rows(&self, perm: &[usize]) -> Result<DenseMatrix> {
        let mut seen = alloc::vec![false; self.rows];
        if perm.len() != self.rows || perm.iter().any(|&p| p >= self.rows || core::mem::replace(&mut seen[p], true)) {
            return Err(Error::Unsupported("not a permutation of the rows"));
        }
        let entries = perm.iter().flat_map(|&p| self.row(p).iter().copied()).collect();
        Ok(DenseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }
}

/// Singular values of `m` as unit-weight atoms; values below `tol·σ_max`
/// are dropped.
pub fn profile_from_matrix(m: &DenseMatrix, tol: f64) -> Result<SpectralProfile> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::Domain {
            name: "svd tolerance",
            value: tol,
        });
    }
    let sigma = singular_values(m, tol)?;
    let top = sigma.first().copied().unwrap_or(0.0);
    SpectralProfile::new(sigma.into_iter().filter(|&s| s > tol * top).map(|s| (s, 1.0)))
}

/// Level sets of `|f|`: one atom per distinct nonzero `|value|`, weighted by
/// the length of its level set.
pub fn profile_from_stepfn(f: &StepFunction) -> SpectralProfile {
    SpectralProfile::new(
        f.pieces()
            .filter(|(_, _, v)| *v != 0.0)
            .map(|(start, end, v)| (v.abs(), end - start)),
    )
    .expect("pieces of a valid step function have positive length and finite value")
}

/// As [`profile_from_stepfn`] for a compactly supported step function on the line.
pub fn profile_from_line_stepfn(f: &LineStepFunction) -> SpectralProfile {
    let b = f.breakpoints();
    SpectralProfile::new(
        f.values()
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(i, v)| (v.abs(), b[i + 1] - b[i])),
    )
    .expect("pieces of a valid step function have positive length and finite value")
}
