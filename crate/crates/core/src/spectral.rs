// SPDX-License-Identifier: Apache-2.0

//! Power iteration for nonnegative matrices.
//!
//! Plain power iteration oscillates on periodic matrices (the 2-cycle never
//! settles), so every step averages the current iterate with its image:
//! `y ← (y + y M / s) / 2`, where `s` is the largest row sum and bounds the
//! spectral radius from above. Averaging consecutive iterates keeps the
//! dominant eigenvector and damps every eigenvalue of modulus λ₀ other than
//! λ₀ itself below it, so the averaged sequence converges on periodic input.
//! λ₀ is read out as the Rayleigh-type quotient `‖y M‖₁ / ‖y‖₁`.
//!
//! A plain unaveraged iterate runs alongside; if it vanishes, the matrix is
//! nilpotent and λ₀ = 0 exactly.

use crate::error::{Error, Result};
use crate::matrix::{l1_norm, SparseMatrix};

/// Result of left power iteration on a nonnegative matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DominantPair {
    /// Nonnegative left eigenvector, ‖·‖₁ = 1.
    pub vector: Vec<f64>,
    pub lambda0: f64,
    pub iterations: usize,
    /// ‖v M − λ₀ v‖₁ at the last step.
    pub residual: f64,
}

/// Estimates the spectral radius of a square nonnegative matrix.
///
/// Sign-indefinite matrices are rejected; use the dense oracle for those.
pub fn spectral_radius_estimate(m: &SparseMatrix, tol: f64, max_iter: usize) -> Result<f64> {
    dominant_left(m, tol, max_iter, true).map(|p| p.lambda0)
}

/// Left dominant eigenpair of a nonnegative matrix.
///
/// With `relative` set the stopping rule is `residual ≤ tol · max(1, λ₀)`,
/// otherwise `residual ≤ tol`.
pub(crate) fn dominant_left(
    m: &SparseMatrix,
    tol: f64,
    max_iter: usize,
    relative: bool,
) -> Result<DominantPair> {
    m.require_square()?;
    m.require_nonnegative()?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tol must be positive, got {tol}"
        )));
    }
    let n = m.n_rows();
    if n == 0 {
        return Ok(DominantPair {
            vector: Vec::new(),
            lambda0: 0.0,
            iterations: 0,
            residual: 0.0,
        });
    }
    let scale = m.max_abs_row_sum();
    if scale == 0.0 {
        return Ok(DominantPair {
            vector: vec![1.0 / n as f64; n],
            lambda0: 0.0,
            iterations: 0,
            residual: 0.0,
        });
    }

    let mut y = vec![1.0 / n as f64; n];
    let mut image = vec![0.0; n];
    let mut plain = vec![1.0 / n as f64; n];
    let mut plain_next = vec![0.0; n];
    let mut residual = f64::INFINITY;

    for iter in 1..=max_iter {
        m.vec_mat_into(&y, &mut image)?;
        let lambda = l1_norm(&image);
        residual = image
            .iter()
            .zip(&y)
            .map(|(w, v)| (w - lambda * v).abs())
            .sum();
        let bound = if relative { tol * lambda.max(1.0) } else { tol };
        if residual <= bound {
            return Ok(DominantPair {
                vector: y,
                lambda0: lambda,
                iterations: iter,
                residual,
            });
        }

        // Nilpotency probe: the last nonzero plain iterate is a left
        // eigenvector for eigenvalue 0.
        m.vec_mat_into(&plain, &mut plain_next)?;
        let plain_norm = l1_norm(&plain_next);
        if plain_norm == 0.0 {
            return Ok(DominantPair {
                vector: plain,
                lambda0: 0.0,
                iterations: iter,
                residual: 0.0,
            });
        }
        for (p, q) in plain.iter_mut().zip(&plain_next) {
            *p = q / plain_norm;
        }

        for (v, w) in y.iter_mut().zip(&image) {
            *v = 0.5 * (*v + w / scale);
        }
        let norm = l1_norm(&y);
        y.iter_mut().for_each(|v| *v /= norm);
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> SparseMatrix {
        SparseMatrix::from_dense_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn stochastic_has_radius_one() {
        let p = m(&[&[0.2, 0.8, 0.0], &[0.0, 0.3, 0.7], &[0.5, 0.0, 0.5]]);
        let r = spectral_radius_estimate(&p, 1e-12, 100_000).unwrap();
        assert!((r - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn nilpotent_has_radius_zero() {
        let a = m(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert_eq!(spectral_radius_estimate(&a, 1e-9, 1000).unwrap(), 0.0);
    }

    #[test]
    fn periodic_symmetric() {
        let a = m(&[&[0.0, 2.0], &[2.0, 0.0]]);
        let r = spectral_radius_estimate(&a, 1e-12, 1000).unwrap();
        assert!((r - 2.0).abs() <= 1e-12);
    }

    #[test]
    fn periodic_three_cycle_with_weights() {
        // Eigenvalues are the cube roots of 2·3·0.5 = 3.
        let a = m(&[&[0.0, 2.0, 0.0], &[0.0, 0.0, 3.0], &[0.5, 0.0, 0.0]]);
        let r = spectral_radius_estimate(&a, 1e-11, 100_000).unwrap();
        assert!((r - 3f64.cbrt()).abs() <= 1e-10, "{r}");
    }

    #[test]
    fn rejects_bad_input() {
        let neg = m(&[&[0.0, -1.0], &[1.0, 0.0]]);
        assert!(matches!(
            spectral_radius_estimate(&neg, 1e-9, 10),
            Err(Error::NegativeEntry { .. })
        ));
        let rect = SparseMatrix::zeros(2, 3);
        assert!(matches!(
            spectral_radius_estimate(&rect, 1e-9, 10),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn reports_no_convergence() {
        let a = m(&[&[1.0, 1.0, 0.0], &[0.0, 1.0, 1.0], &[0.3, 0.0, 1.0]]);
        assert!(matches!(
            spectral_radius_estimate(&a, 1e-15, 2),
            Err(Error::NoConvergence { iterations: 2, .. })
        ));
    }
}
