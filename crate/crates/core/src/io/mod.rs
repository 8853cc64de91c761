// SPDX-License-Identifier: Apache-2.0

//! Graph ingestion, ranking files and rank comparison.

mod edgelist;
mod kendall;
mod matrix_market;
mod ranking_tsv;

pub use edgelist::{parse_edge_list, parse_preferences, parse_weights, LabeledGraph};
pub use kendall::kendall_tau;
pub use matrix_market::parse_matrix_market;
pub use ranking_tsv::{format_score, parse_ranking, write_ranking, RankingFile};
