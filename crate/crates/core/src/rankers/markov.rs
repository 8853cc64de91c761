// SPDX-License-Identifier: Apache-2.0

use super::damped::STOCHASTIC_EPS;
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::matrix::{ScoreVector, SparseMatrix};
use crate::oracle::DEFAULT_MAX_DOUBLINGS;

/// Tolerance of the dense Cesàro limit behind [`markovian_spectral_ranking`].
pub const MARKOVIAN_TOL: f64 = 1e-12;

/// Markovian spectral ranking `v P*`, with `P*` the Cesàro limit of `P`.
///
/// Needs the dense limit, so `P` must fit under `oracle_cap`. For a
/// distribution `v` the result is the limit-in-average distribution of the
/// chain started from `v`.
pub fn markovian_spectral_ranking(
    p: &SparseMatrix,
    v: &[f64],
    oracle_cap: usize,
) -> Result<ScoreVector> {
    p.require_square()?;
    if p.n_rows() > oracle_cap {
        return Err(Error::TooLarge {
            n: p.n_rows(),
            cap: oracle_cap,
        });
    }
    p.require_stochastic(STOCHASTIC_EPS)?;
    if v.len() != p.n_rows() {
        return Err(Error::DimensionMismatch {
            expected: p.n_rows(),
            found: v.len(),
        });
    }
    let dense = DenseMatrix::from_sparse(p, oracle_cap)?;
    // A stochastic matrix has spectral radius exactly one.
    let star =
        crate::oracle::cesaro::cesaro_unchecked(&dense, MARKOVIAN_TOL, DEFAULT_MAX_DOUBLINGS)?;
    Ok(ScoreVector::from(star.vec_mat(v)?))
}
