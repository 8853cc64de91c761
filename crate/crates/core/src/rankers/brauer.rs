// SPDX-License-Identifier: Apache-2.0

//! Rank-one convex perturbation `αM + (1−α) xᵀ v`.
//!
//! With `x` a right eigenvector of `M` for λ₀ and `v xᵀ = λ₀`, the
//! perturbed matrix keeps λ₀ as a simple dominant eigenvalue and scales
//! every other eigenvalue by α. For stochastic `P` and `x = 𝟙` its left
//! dominant eigenvector is PageRank: the chain follows `P` with probability
//! α and restarts at `v` otherwise.

use super::RankerReport;
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::matrix::{l1_norm, ScoreVector, SparseMatrix};

/// Largest accepted `‖M xᵀ − μ xᵀ‖₂ / ‖x‖₂`.
pub const EIGENVECTOR_TOL: f64 = 1e-6;

/// Lazily applied `w ↦ α (w M) + (1 − α) (w · x) v`.
#[derive(Debug, Clone)]
pub struct BrauerOperator<'a> {
    m: &'a SparseMatrix,
    x: Vec<f64>,
    v: Vec<f64>,
    alpha: f64,
    eigenvalue: f64,
}

/// Wraps `M` in the rank-one perturbation without materializing it.
///
/// Fails with [`Error::NotEigenvector`] unless `x` is a right eigenvector
/// of `M` within [`EIGENVECTOR_TOL`].
pub fn brauer_perturb<'a>(
    m: &'a SparseMatrix,
    x: &[f64],
    v: &[f64],
    alpha: f64,
) -> Result<BrauerOperator<'a>> {
    m.require_square()?;
    let n = m.n_rows();
    for len in [x.len(), v.len()] {
        if len != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: len,
            });
        }
    }
    if !alpha.is_finite() || v.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidParameter("alpha and v must be finite".into()));
    }
    let mx = m.mat_vec(x)?;
    let xx: f64 = x.iter().map(|t| t * t).sum();
    if xx.is_nan() || xx <= 0.0 || xx.is_infinite() {
        return Err(Error::NotEigenvector(f64::INFINITY));
    }
    let eigenvalue = x.iter().zip(mx.iter()).map(|(a, b)| a * b).sum::<f64>() / xx;
    let residual = mx
        .iter()
        .zip(x)
        .map(|(a, b)| (a - eigenvalue * b).powi(2))
        .sum::<f64>()
        .sqrt()
        / xx.sqrt();
    if residual > EIGENVECTOR_TOL {
        return Err(Error::NotEigenvector(residual));
    }
    Ok(BrauerOperator {
        m,
        x: x.to_vec(),
        v: v.to_vec(),
        alpha,
        eigenvalue,
    })
}

impl BrauerOperator<'_> {
    /// Eigenvalue of `M` belonging to `x`.
    pub fn eigenvalue(&self) -> f64 {
        self.eigenvalue
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// `w ↦ α (w M) + (1 − α) (w · x) v`.
    pub fn apply(&self, w: &[f64]) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.dim()];
        self.apply_into(w, &mut out)?;
        Ok(out)
    }

    fn apply_into(&self, w: &[f64], out: &mut [f64]) -> Result<()> {
        self.m.vec_mat_into(w, out)?;
        let dot: f64 = w.iter().zip(&self.x).map(|(a, b)| a * b).sum();
        let restart = (1.0 - self.alpha) * dot;
        for (o, vj) in out.iter_mut().zip(&self.v) {
            *o = self.alpha * *o + restart * vj;
        }
        Ok(())
    }

    /// Dense `αM + (1 − α) xᵀ v`, for oracle checks on small inputs.
    pub fn to_dense(&self, cap: usize) -> Result<DenseMatrix> {
        let n = self.dim();
        if n > cap {
            return Err(Error::TooLarge { n, cap });
        }
        let mut rows = self.m.to_dense_rows();
        for (i, row) in rows.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = self.alpha * *entry + (1.0 - self.alpha) * self.x[i] * self.v[j];
            }
        }
        DenseMatrix::from_rows(&rows)
    }

    /// Left power iteration through the operator.
    ///
    /// Starts from the uniform vector and normalizes each iterate to unit
    /// ℓ₁ norm with a positive coordinate sum. Stops when
    /// `‖w B − μ w‖₁ ≤ tol`, `μ` being the Rayleigh quotient `(w B · w)/(w · w)`.
    pub fn left_power_iteration(&self, tol: f64, max_iter: usize) -> Result<RankerReport> {
        let n = self.dim();
        let mut w = vec![1.0 / n as f64; n];
        let mut image = vec![0.0; n];
        let mut residual = f64::INFINITY;
        for iter in 1..=max_iter {
            self.apply_into(&w, &mut image)?;
            let ww: f64 = w.iter().map(|t| t * t).sum();
            let mu = w.iter().zip(&image).map(|(a, b)| a * b).sum::<f64>() / ww;
            residual = image.iter().zip(&w).map(|(b, a)| (b - mu * a).abs()).sum();
            if residual <= tol {
                return Ok(RankerReport::new(ScoreVector::from(w), iter, residual).with_lambda0(mu));
            }
            let norm = l1_norm(&image);
            if norm == 0.0 {
                return Err(Error::VanishingIterate(iter));
            }
            let sign = if image.iter().sum::<f64>() < 0.0 {
                -1.0
            } else {
                1.0
            };
            for (a, b) in w.iter_mut().zip(&image) {
                *a = sign * b / norm;
            }
        }
        Err(Error::NoConvergence {
            iterations: max_iter,
            residual,
        })
    }
}
