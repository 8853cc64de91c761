// SPDX-License-Identifier: Apache-2.0

//! Desk-scale dense matrices for the brute-force oracle.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;

pub const DEFAULT_ORACLE_CAP: usize = 512;
pub const ORACLE_CAP_ENV: &str = "SPECTRANK_ORACLE_CAP";

/// Oracle dimension cap, overridable through `SPECTRANK_ORACLE_CAP`.
pub fn oracle_cap() -> usize {
    std::env::var(ORACLE_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ORACLE_CAP)
}

/// Square dense real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix(DMatrix<f64>);

impl DenseMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            if let Some(j) = row.iter().position(|x| !x.is_finite()) {
                return Err(Error::NonFiniteEntry { row: i, col: j });
            }
        }
        Ok(Self(DMatrix::from_fn(n, n, |i, j| rows[i][j])))
    }

    /// Densifies a sparse matrix, refusing anything above `cap`.
    pub fn from_sparse(m: &SparseMatrix, cap: usize) -> Result<Self> {
        m.require_square()?;
        let n = m.n_rows();
        if n > cap {
            return Err(Error::TooLarge { n, cap });
        }
        let mut out = DMatrix::zeros(n, n);
        for (i, j, v) in m.triplets() {
            out[(i, j)] = v;
        }
        Ok(Self(out))
    }

    pub fn from_matrix(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        Ok(Self(m))
    }

    pub fn identity(n: usize) -> Self {
        Self(DMatrix::identity(n, n))
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.0[(i, j)]
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.0
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n())
            .map(|i| (0..self.n()).map(|j| self.0[(i, j)]).collect())
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mat(&self, v: &[f64]) -> Result<Vec<f64>> {
        if v.len() != self.n() {
            return Err(Error::DimensionMismatch {
                expected: self.n(),
                found: v.len(),
            });
        }
        let n = self.n();
        Ok((0..n)
            .map(|j| (0..n).map(|i| v[i] * self.0[(i, j)]).sum())
            .collect())
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &DenseMatrix) -> f64 {
        max_abs_diff(&self.0, &other.0)
    }
}

pub(crate) fn max_abs_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
