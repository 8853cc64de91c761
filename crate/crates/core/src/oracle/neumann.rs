// SPDX-License-Identifier: Apache-2.0

use super::spectrum::schur_eigenvalues;
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::matrix::{l1_norm, ScoreVector};

#[derive(Debug, Clone, PartialEq)]
pub struct NeumannSum {
    /// `v Σ_{k≤K} (αM)^k`.
    pub scores: ScoreVector,
    /// Number of terms after the constant one.
    pub terms: usize,
    /// ℓ₁ norm of the last term added.
    pub last_term: f64,
    /// Geometric estimate of the omitted tail, `last · q / (1 − q)` with
    /// `q = |α| λ₀`. Asymptotic only; non-normal matrices can exceed it
    /// transiently.
    pub tail_estimate: f64,
}

/// Truncated series `v Σ (αM)^k` evaluated densely.
///
/// Summation stops once a term has ℓ₁ norm ≤ `tol`, a term vanishes, or
/// `k_max` terms were added.
pub fn neumann_sum(
    m: &DenseMatrix,
    v: &[f64],
    alpha: f64,
    k_max: usize,
    tol: f64,
) -> Result<NeumannSum> {
    if v.len() != m.n() {
        return Err(Error::DimensionMismatch {
            expected: m.n(),
            found: v.len(),
        });
    }
    let lambda0 = schur_eigenvalues(m.as_matrix())?
        .first()
        .map_or(0.0, |z| z.norm());
    let q = alpha.abs() * lambda0;
    if q >= 1.0 - 1e-12 {
        return Err(Error::DivergentSeries(q));
    }
    let mut sum = v.to_vec();
    let mut term = v.to_vec();
    let mut last_term = l1_norm(&term);
    let mut terms = 0;
    while terms < k_max && last_term > tol {
        term = m.vec_mat(&term)?;
        term.iter_mut().for_each(|x| *x *= alpha);
        for (s, t) in sum.iter_mut().zip(&term) {
            *s += t;
        }
        terms += 1;
        last_term = l1_norm(&term);
        if last_term == 0.0 {
            break;
        }
    }
    Ok(NeumannSum {
        scores: ScoreVector::from(sum),
        terms,
        last_term,
        tail_estimate: last_term * q / (1.0 - q),
    })
}
