// SPDX-License-Identifier: Apache-2.0

//! Spectral ranking toolkit.
//!
//! Scores entities from a relationship matrix by dominant eigenvectors
//! (Seeley, Wei, HITS, AHP), damped path summation (Katz, Hubbell,
//! PageRank) and the Cesàro limit that connects the two. A dense
//! brute-force [`oracle`] cross-checks the sparse rankers on small inputs.

pub mod cli;
pub mod dense;
mod error;
pub mod io;
pub mod matrix;
pub mod oracle;
pub mod rankers;
pub mod spectral;

pub use dense::{oracle_cap, DenseMatrix};
pub use error::{Error, Result};
pub use matrix::{DampingParams, NormalizeMode, ScoreVector, SparseMatrix};
pub use rankers::{ranking_from_scores, RankerReport, Ranking};
pub use spectral::spectral_radius_estimate;
