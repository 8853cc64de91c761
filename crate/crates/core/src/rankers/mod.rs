// SPDX-License-Identifier: Apache-2.0

//! Ranking indices over [`SparseMatrix`](crate::matrix::SparseMatrix).
//!
//! Endorsement rankings use left products (`r M`); "better-than" rankings
//! (Wei, AHP) use right products (`M rᵀ`). Every iterative ranker either
//! returns a report with `converged == true` or an error; exhausting the
//! iteration budget is always [`Error::NoConvergence`](crate::Error).

mod brauer;
mod damped;
mod eigen;
mod markov;
mod ranking;
mod solve;

pub use brauer::{brauer_perturb, BrauerOperator, EIGENVECTOR_TOL};
pub use damped::{
    damped_residual, damped_spectral_ranking, eigenfactor, geometric_weights, hoede_index,
    hubbell_index, katz_index, pagerank, surfer_prediction, KatzMethod, KatzVariant,
};
pub use eigen::{
    ahp_right_ranking, hits, left_dominant_ranking, pinski_narin, wei_ranking, wei_scores,
    PinskiNarinConvention, WeiOptions,
};
pub use markov::markovian_spectral_ranking;
pub use ranking::{ranking_from_scores, Ranking, DEFAULT_TIE_TOL};
pub(crate) use solve::lambda0_for;

use crate::matrix::ScoreVector;

/// Outcome of an iterative ranker.
#[derive(Debug, Clone, PartialEq)]
pub struct RankerReport {
    pub scores: ScoreVector,
    pub iterations: usize,
    /// Final value of the ranker's stopping metric.
    pub residual: f64,
    pub converged: bool,
    /// Dominant eigenvalue used or estimated, when the ranker needs one.
    pub lambda0: Option<f64>,
}

impl RankerReport {
    pub(crate) fn new(scores: ScoreVector, iterations: usize, residual: f64) -> Self {
        Self {
            scores,
            iterations,
            residual,
            converged: true,
            lambda0: None,
        }
    }

    pub(crate) fn with_lambda0(mut self, lambda0: f64) -> Self {
        self.lambda0 = Some(lambda0);
        self
    }
}
