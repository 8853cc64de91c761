// SPDX-License-Identifier: Apache-2.0

//! Stationary iterations for the left fixpoint `x = b + α x M`.

use crate::dense::{oracle_cap, DenseMatrix};
use crate::error::{Error, Result};
use crate::matrix::{l1_norm, DampingParams, SparseMatrix};
use crate::oracle::dense_spectrum;
use crate::spectral::spectral_radius_estimate;

/// `|α| λ₀` at or above `1 − DIVERGENCE_MARGIN` is treated as divergent, so
/// a stochastic matrix whose estimate rounds to `1 − ε` is not accepted
/// with α = 1.
pub(crate) const DIVERGENCE_MARGIN: f64 = 1e-12;

/// Residual growth beyond this factor over the starting residual aborts
/// the iteration as divergent.
const BLOWUP: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Sweep {
    /// `x ← b + α x M`: the partial sums of the Neumann series when `x₀ = b`.
    Jacobi,
    /// In-place update through the columns of `M`.
    GaussSeidel,
}

#[derive(Debug)]
pub(crate) struct Fixpoint {
    pub x: Vec<f64>,
    pub iterations: usize,
    pub residual: f64,
}

/// Solves `x = b + α x M` starting from `start`, stopping at
/// `‖x − b − α x M‖₁ ≤ tol`.
///
/// Gauss–Seidel is only used when `α M` is entrywise nonnegative (then
/// `I − αM` is an M-matrix and the splitting converges); otherwise the
/// request silently falls back to Jacobi.
pub(crate) fn solve_left_fixpoint(
    m: &SparseMatrix,
    b: &[f64],
    alpha: f64,
    start: Vec<f64>,
    sweep: Sweep,
    tol: f64,
    max_iter: usize,
) -> Result<Fixpoint> {
    m.require_square()?;
    let n = m.n_rows();
    for len in [b.len(), start.len()] {
        if len != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: len,
            });
        }
    }
    let sweep = if sweep == Sweep::GaussSeidel && alpha >= 0.0 && m.is_nonnegative() {
        Sweep::GaussSeidel
    } else {
        Sweep::Jacobi
    };
    match sweep {
        Sweep::Jacobi => jacobi(m, b, alpha, start, tol, max_iter),
        Sweep::GaussSeidel => gauss_seidel(m, b, alpha, start, tol, max_iter),
    }
}

fn jacobi(
    m: &SparseMatrix,
    b: &[f64],
    alpha: f64,
    mut x: Vec<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<Fixpoint> {
    let n = x.len();
    let mut next = vec![0.0; n];
    let mut first: Option<f64> = None;
    let mut residual = f64::INFINITY;
    for iter in 0..=max_iter {
        m.vec_mat_into(&x, &mut next)?;
        for (y, bj) in next.iter_mut().zip(b) {
            *y = bj + alpha * *y;
        }
        residual = x.iter().zip(&next).map(|(a, c)| (a - c).abs()).sum();
        if residual <= tol {
            return Ok(Fixpoint {
                x,
                iterations: iter,
                residual,
            });
        }
        check_blowup(residual, &mut first, alpha)?;
        std::mem::swap(&mut x, &mut next);
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual,
    })
}

fn gauss_seidel(
    m: &SparseMatrix,
    b: &[f64],
    alpha: f64,
    mut x: Vec<f64>,
    tol: f64,
    max_iter: usize,
) -> Result<Fixpoint> {
    let n = x.len();
    // Row j of the transpose lists column j of M.
    let columns = m.transpose();
    let mut image = vec![0.0; n];
    let mut first: Option<f64> = None;
    let mut residual = f64::INFINITY;
    for iter in 0..=max_iter {
        m.vec_mat_into(&x, &mut image)?;
        residual = x
            .iter()
            .zip(&image)
            .zip(b)
            .map(|((xj, mj), bj)| (xj - bj - alpha * mj).abs())
            .sum();
        if residual <= tol {
            return Ok(Fixpoint {
                x,
                iterations: iter,
                residual,
            });
        }
        check_blowup(residual, &mut first, alpha)?;
        for j in 0..n {
            let mut acc = 0.0;
            let mut diag = 0.0;
            for (i, mij) in columns.row(j) {
                if i == j {
                    diag = mij;
                } else {
                    acc += x[i] * mij;
                }
            }
            x[j] = (b[j] + alpha * acc) / (1.0 - alpha * diag);
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual,
    })
}

fn check_blowup(residual: f64, first: &mut Option<f64>, alpha: f64) -> Result<()> {
    let base = *first.get_or_insert(residual);
    if !residual.is_finite() || residual > BLOWUP * base.max(1.0) {
        return Err(Error::DivergentSeries(alpha.abs()));
    }
    Ok(())
}

/// λ₀ for damping checks: pinned value, power-iteration estimate for
/// nonnegative matrices, or the dense spectrum for small sign-indefinite
/// ones and for small matrices where power iteration stalls. `None` means a large sign-indefinite matrix with nothing pinned.
pub(crate) fn lambda0_for(m: &SparseMatrix, params: &DampingParams) -> Result<Option<f64>> {
    if let Some(l) = params.lambda0 {
        if !(l.is_finite() && l >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "lambda0 must be finite and nonnegative, got {l}"
            )));
        }
        return Ok(Some(l));
    }
    m.require_square()?;
    let cap = oracle_cap();
    if m.is_nonnegative() {
        // Defective dominant eigenvalues make power iteration crawl.
        return match spectral_radius_estimate(m, params.tol, params.max_iter) {
            Err(Error::NoConvergence { .. }) if m.n_rows() <= cap => {
                let dense = DenseMatrix::from_sparse(m, cap)?;
                Ok(Some(dense_spectrum(&dense, 1e-6)?.spectral_radius()))
            }
            other => other.map(Some),
        };
    }
    if m.n_rows() <= cap {
        let dense = DenseMatrix::from_sparse(m, cap)?;
        return Ok(Some(dense_spectrum(&dense, 1e-6)?.spectral_radius()));
    }
    Ok(None)
}

/// Fails with [`Error::DivergentSeries`] when `|α| λ₀` is not below one.
pub(crate) fn require_convergent(alpha: f64, lambda0: Option<f64>) -> Result<()> {
    if let Some(l) = lambda0 {
        let q = alpha.abs() * l;
        if q >= 1.0 - DIVERGENCE_MARGIN {
            return Err(Error::DivergentSeries(q));
        }
    }
    Ok(())
}

pub(crate) fn ones_times(m: &SparseMatrix) -> Result<Vec<f64>> {
    Ok(m.vec_mat(&vec![1.0; m.n_rows()])?.into_inner())
}

pub(crate) fn residual_norm(x: &[f64], b: &[f64], alpha: f64, m: &SparseMatrix) -> Result<f64> {
    let image = m.vec_mat(x)?;
    Ok(l1_norm(
        &x.iter()
            .zip(image.iter())
            .zip(b)
            .map(|((xj, mj), bj)| xj - bj - alpha * mj)
            .collect::<Vec<_>>(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_sweeps_reach_the_same_fixpoint() {
        let m = SparseMatrix::from_dense_rows(&[
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 0.0],
            vec![0.5, 1.0, 0.2],
        ])
        .unwrap();
        let b = [1.0, 2.0, 0.5];
        let jac =
            solve_left_fixpoint(&m, &b, 0.3, b.to_vec(), Sweep::Jacobi, 1e-14, 10_000).unwrap();
        let gs = solve_left_fixpoint(&m, &b, 0.3, b.to_vec(), Sweep::GaussSeidel, 1e-14, 10_000)
            .unwrap();
        for (a, c) in jac.x.iter().zip(&gs.x) {
            assert!((a - c).abs() < 1e-13);
        }
        assert!(gs.iterations < jac.iterations);
        assert!(residual_norm(&gs.x, &b, 0.3, &m).unwrap() <= 1e-14);
    }

    #[test]
    fn defective_radius_falls_back_to_dense() {
        // Eigenvalue 1 sits in a 2×2 Jordan block.
        let m = SparseMatrix::from_dense_rows(&[
            vec![1.0, 0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0, 1.0],
            vec![0.0, 0.0, 0.0, 1.0],
            vec![0.0, 0.0, 1.0, 0.0],
        ])
        .unwrap();
        let params = DampingParams::new(0.5).with_tol(1e-13);
        let l = lambda0_for(&m, &params).unwrap().unwrap();
        assert!((l - 1.0).abs() < 1e-6, "{l}");
    }

    #[test]
    fn divergence_is_detected() {
        let m = SparseMatrix::from_dense_rows(&[vec![2.0]]).unwrap();
        assert!(matches!(
            solve_left_fixpoint(&m, &[1.0], 1.0, vec![1.0], Sweep::Jacobi, 1e-9, 1_000),
            Err(Error::DivergentSeries(_))
        ));
    }
}
