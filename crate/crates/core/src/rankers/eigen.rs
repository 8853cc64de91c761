// SPDX-License-Identifier: Apache-2.0

//! Dominant-eigenvector rankings: Seeley's left ranking, Wei's right
//! ranking by convergence in rank, HITS, AHP and the Pinski–Narin journal
//! normalizations.

use super::ranking::{ranking_from_scores, Ranking, DEFAULT_TIE_TOL};
use super::RankerReport;
use crate::error::{Error, Result};
use crate::matrix::{l1_norm, NormalizeMode, ScoreVector, SparseMatrix, DEFAULT_MAX_ITER};
use crate::spectral::dominant_left;

/// Left dominant eigenvector of a nonnegative matrix, `λ₀ r = r M`.
///
/// `r` is nonnegative with `‖r‖₁ = 1`; the residual is `‖r M − λ₀ r‖₁`.
/// Periodic matrices are handled by averaging consecutive iterates.
pub fn left_dominant_ranking(m: &SparseMatrix, tol: f64, max_iter: usize) -> Result<RankerReport> {
    let pair = dominant_left(m, tol, max_iter, false)?;
    Ok(RankerReport::new(
        ScoreVector::from(pair.vector),
        pair.iterations,
        pair.residual,
    )
    .with_lambda0(pair.lambda0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeiOptions {
    pub tie_tol: f64,
    pub max_iter: usize,
    /// Number of consecutive updates that must leave the ranking unchanged.
    pub streak: usize,
}

impl Default for WeiOptions {
    fn default() -> Self {
        Self {
            tie_tol: DEFAULT_TIE_TOL,
            max_iter: DEFAULT_MAX_ITER,
            streak: 3,
        }
    }
}

/// Wei's ranking: the order induced by `M^k 𝟙ᵀ` as `k` grows.
///
/// Iterates `s ← normalize₁(M sᵀ)` from `s = 𝟙` and stops once
/// `options.streak` consecutive updates leave the induced [`Ranking`]
/// unchanged. The report's residual is the ℓ₁ change of the last update.
///
/// Tournament matrices should carry their draws explicitly, including the
/// diagonal (a team draws with itself, `m_ii = 1/2`); a strictly triangular
/// tournament is nilpotent and its iterate vanishes.
pub fn wei_ranking(m: &SparseMatrix, options: &WeiOptions) -> Result<(Ranking, RankerReport)> {
    m.require_square()?;
    m.require_nonnegative()?;
    let n = m.n_rows();
    let mut scores = vec![1.0; n];
    let mut next = vec![0.0; n];
    let mut ranking = ranking_from_scores(&ScoreVector::from(scores.clone()), options.tie_tol);
    let mut unchanged = 0;
    let mut change = f64::INFINITY;
    for iter in 1..=options.max_iter {
        m.mat_vec_into(&scores, &mut next)?;
        let norm = l1_norm(&next);
        if norm == 0.0 && n > 0 {
            return Err(Error::VanishingIterate(iter));
        }
        next.iter_mut()
            .for_each(|x| *x /= norm.max(f64::MIN_POSITIVE));
        change = if iter == 1 {
            f64::INFINITY
        } else {
            scores.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum()
        };
        std::mem::swap(&mut scores, &mut next);
        let current = ranking_from_scores(&ScoreVector::from(scores.clone()), options.tie_tol);
        if current.same_order(&ranking) {
            unchanged += 1;
        } else {
            unchanged = 0;
        }
        ranking = current;
        if unchanged >= options.streak {
            let report = RankerReport::new(ScoreVector::from(scores), iter, change);
            return Ok((ranking, report));
        }
    }
    Err(Error::NoConvergence {
        iterations: options.max_iter,
        residual: change,
    })
}

/// `normalize₁(M^k 𝟙ᵀ)` for a fixed `k`, the quantity [`wei_ranking`] ranks.
pub fn wei_scores(m: &SparseMatrix, iterations: usize) -> Result<ScoreVector> {
    m.require_square()?;
    let mut scores = vec![1.0; m.n_rows()];
    let mut next = vec![0.0; m.n_rows()];
    for iter in 1..=iterations {
        m.mat_vec_into(&scores, &mut next)?;
        let norm = l1_norm(&next);
        if norm == 0.0 {
            return Err(Error::VanishingIterate(iter));
        }
        next.iter_mut().for_each(|x| *x /= norm);
        std::mem::swap(&mut scores, &mut next);
    }
    Ok(ScoreVector::from(scores))
}

/// HITS authority and hub vectors of a nonnegative adjacency matrix.
///
/// The authority vector `a` is the dominant eigenvector of `AᵀA`, computed
/// as `a ← Aᵀ(A a)` without forming the product; the hub vector is
/// `A a / ‖A a‖₂`. Both are ℓ₂-normalized and nonnegative. Residuals are
/// `‖AᵀA a − μ a‖₂` and `‖AAᵀ h − μ h‖₂` with `μ` the squared dominant
/// singular value.
pub fn hits(a: &SparseMatrix, tol: f64, max_iter: usize) -> Result<(RankerReport, RankerReport)> {
    a.require_nonnegative()?;
    if a.nnz() == 0 {
        return Err(Error::ZeroMatrix);
    }
    let (rows, cols) = (a.n_rows(), a.n_cols());
    let mut auth = vec![1.0 / (cols as f64).sqrt(); cols];
    let mut hub = vec![0.0; rows];
    let mut image = vec![0.0; cols];
    let mut residual = f64::INFINITY;
    for iter in 1..=max_iter {
        a.mat_vec_into(&auth, &mut hub)?;
        a.vec_mat_into(&hub, &mut image)?;
        let mu: f64 = auth.iter().zip(&image).map(|(x, y)| x * y).sum();
        residual = l2_dist_scaled(&image, &auth, mu);
        if residual <= tol {
            let hub_norm = l2(&hub);
            hub.iter_mut().for_each(|x| *x /= hub_norm);
            let hub_residual = hub_residual(a, &hub, mu)?;
            let auth_report =
                RankerReport::new(ScoreVector::from(auth), iter, residual).with_lambda0(mu);
            let hub_report =
                RankerReport::new(ScoreVector::from(hub), iter, hub_residual).with_lambda0(mu);
            return Ok((auth_report, hub_report));
        }
        let norm = l2(&image);
        if norm == 0.0 {
            return Err(Error::ZeroMatrix);
        }
        for (x, y) in auth.iter_mut().zip(&image) {
            *x = y / norm;
        }
    }
    Err(Error::NoConvergence {
        iterations: max_iter,
        residual,
    })
}

fn hub_residual(a: &SparseMatrix, hub: &[f64], mu: f64) -> Result<f64> {
    let back = a.vec_mat(hub)?;
    let forth = a.mat_vec(&back)?;
    Ok(l2_dist_scaled(&forth, hub, mu))
}

fn l2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// `‖image − mu · v‖₂`.
fn l2_dist_scaled(image: &[f64], v: &[f64], mu: f64) -> f64 {
    image
        .iter()
        .zip(v)
        .map(|(y, x)| (y - mu * x).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Relative tolerance of the reciprocity check `m_ij · m_ji = 1`.
pub const RECIPROCITY_TOL: f64 = 1e-9;

/// Analytic hierarchy process: right dominant eigenvector of a positive
/// reciprocal comparison matrix, ℓ₁-normalized; `lambda0` holds λ̂₀.
pub fn ahp_right_ranking(m: &SparseMatrix, tol: f64, max_iter: usize) -> Result<RankerReport> {
    m.require_square()?;
    let n = m.n_rows();
    for i in 0..n {
        for j in i..n {
            let (a, b) = (m.get(i, j), m.get(j, i));
            let ok = a > 0.0 && b > 0.0 && (a * b - 1.0).abs() <= RECIPROCITY_TOL;
            if !ok {
                return Err(Error::NotReciprocal(i, j));
            }
        }
    }
    // The right eigenvector of M is the left eigenvector of Mᵀ.
    let pair = dominant_left(&m.transpose(), tol, max_iter, false)?;
    Ok(RankerReport::new(
        ScoreVector::from(pair.vector),
        pair.iterations,
        pair.residual,
    )
    .with_lambda0(pair.lambda0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PinskiNarinConvention {
    /// Entry `(i, j)` divided by the sum of row `j`.
    TargetRowSum,
    /// Entry `(i, j)` divided by the sum of row `i` (Markovian).
    SourceRowSum,
}

/// Journal ranking on a citation matrix under either normalization.
pub fn pinski_narin(
    c: &SparseMatrix,
    convention: PinskiNarinConvention,
    tol: f64,
    max_iter: usize,
) -> Result<RankerReport> {
    c.require_square()?;
    c.require_nonnegative()?;
    let normalized = match convention {
        PinskiNarinConvention::SourceRowSum => c.row_normalize(NormalizeMode::Strict)?,
        PinskiNarinConvention::TargetRowSum => {
            let sums = c.row_sums();
            if let Some(j) = sums.iter().position(|&s| s == 0.0) {
                return Err(Error::NullRow(j));
            }
            let triplets: Vec<_> = c.triplets().map(|(i, j, v)| (i, j, v / sums[j])).collect();
            SparseMatrix::from_triplets(c.n_rows(), c.n_cols(), triplets)?
        }
    };
    left_dominant_ranking(&normalized, tol, max_iter)
}
