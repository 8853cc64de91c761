// SPDX-License-Identifier: Apache-2.0

//! Cesàro limit `S* = lim (1/m) Σ_{k<m} S^k` of a spectral-radius-one matrix.
//!
//! The plain running average converges like `1/m`, which needs ~10⁹ terms
//! for a 1e-9 answer and lets rounding in `S^m` grow linearly in `m`.
//! Instead we take powers of the lazy matrix `L = (I + S)/2`:
//! `L^m = Σ_k C(m,k) 2^{-m} S^k` is a binomially weighted average of the
//! powers of `S` (Euler summation), which agrees with the Cesàro limit
//! whenever the latter exists. `L` keeps the eigenvalue-1 projector of `S`
//! and maps every other unit-modulus eigenvalue strictly inside the disc,
//! so `L^m → S*` geometrically even for periodic `S`.
//!
//! Convergence is tested by dyadic doubling: `L^{2m}` against `L^m`.

use nalgebra::DMatrix;

use super::spectrum::dense_spectrum;
use crate::dense::{max_abs_diff, DenseMatrix};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_DOUBLINGS: usize = 64;

/// Tolerance used when checking that the spectral radius is one.
pub const RADIUS_TOL: f64 = 1e-6;

/// Computes `S*`. Fails with [`Error::SpectralRadiusNotOne`] unless
/// `|ρ(S) − 1| ≤ 1e-6`.
pub fn dense_cesaro(s: &DenseMatrix, tol: f64, max_doublings: usize) -> Result<DenseMatrix> {
    let radius = dense_spectrum(s, 1e-6)?.spectral_radius();
    if (radius - 1.0).abs() > RADIUS_TOL {
        return Err(Error::SpectralRadiusNotOne(radius));
    }
    cesaro_unchecked(s, tol, max_doublings)
}

/// [`dense_cesaro`] without the spectral precondition.
pub(crate) fn cesaro_unchecked(
    s: &DenseMatrix,
    tol: f64,
    max_doublings: usize,
) -> Result<DenseMatrix> {
    let n = s.n();
    let sm = s.as_matrix();
    let mut power: DMatrix<f64> = (DMatrix::identity(n, n) + sm) * 0.5;
    let mut diff = f64::INFINITY;
    for _ in 0..max_doublings {
        let next = &power * &power;
        diff = max_abs_diff(&next, &power);
        let drift = max_abs_diff(&(&next * sm), &next);
        power = next;
        if diff <= tol && drift <= tol {
            return DenseMatrix::from_matrix(power);
        }
    }
    Err(Error::NoConvergence {
        iterations: max_doublings,
        residual: diff,
    })
}

/// `max(‖RS − R‖, ‖SR − R‖, ‖R² − R‖)` in max-abs-entry norm.
pub fn cesaro_defect(s: &DenseMatrix, r: &DenseMatrix) -> f64 {
    let (s, r) = (s.as_matrix(), r.as_matrix());
    max_abs_diff(&(r * s), r)
        .max(max_abs_diff(&(s * r), r))
        .max(max_abs_diff(&(r * r), r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dm(rows: &[&[f64]]) -> DenseMatrix {
        DenseMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identity_is_its_own_limit() {
        let i = DenseMatrix::identity(3);
        assert_eq!(dense_cesaro(&i, 1e-12, 64).unwrap(), i);
    }

    #[test]
    fn two_cycle_averages() {
        let s = dm(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let r = dense_cesaro(&s, 1e-12, 64).unwrap();
        assert_eq!(r.to_rows(), vec![vec![0.5, 0.5], vec![0.5, 0.5]]);
    }

    #[test]
    fn aperiodic_rows_equal_stationary() {
        // Balance equations of πS = π give π = (2/9, 4/9, 1/3).
        let s = dm(&[
            &[0.5, 0.5, 0.0],
            &[0.0, 0.5, 0.5],
            &[1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0],
        ]);
        let r = dense_cesaro(&s, 1e-13, 64).unwrap();
        let pi = [2.0 / 9.0, 4.0 / 9.0, 1.0 / 3.0];
        for row in r.to_rows() {
            for (x, p) in row.iter().zip(pi) {
                assert!((x - p).abs() < 1e-12, "{x} vs {p}");
            }
        }
        assert!(cesaro_defect(&s, &r) < 1e-12);
    }

    #[test]
    fn rejects_wrong_radius() {
        let s = dm(&[&[0.5, 0.0], &[0.0, 0.5]]);
        assert!(matches!(
            dense_cesaro(&s, 1e-9, 64),
            Err(Error::SpectralRadiusNotOne(_))
        ));
    }

    #[test]
    fn reducible_chain_keeps_start_dependence() {
        // Two absorbing states reached from a transient one.
        let s = dm(&[&[0.0, 0.5, 0.5], &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]]);
        let r = dense_cesaro(&s, 1e-13, 64).unwrap();
        for (x, want) in r.to_rows()[0].iter().zip([0.0, 0.5, 0.5]) {
            assert!((x - want).abs() < 1e-12);
        }
        assert!(cesaro_defect(&s, &r) < 1e-12);
    }
}
