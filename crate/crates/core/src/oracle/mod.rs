// SPDX-License-Identifier: Apache-2.0

//! Dense brute-force computations used to cross-check the sparse rankers.

pub(crate) mod cesaro;
mod neumann;
mod resolvent;
mod spectrum;

pub use cesaro::{cesaro_defect, dense_cesaro, DEFAULT_MAX_DOUBLINGS};
pub use neumann::{neumann_sum, NeumannSum};
pub use resolvent::{
    dense_resolvent_limit, ResolventCheck, ResolventOutcome, ResolventReport, MAX_SERIES_TERMS,
};
pub use spectrum::{dense_spectrum, matched_distance, sort_by_modulus, SpectrumReport};
