// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("row {0} is null")]
    NullRow(usize),

    #[error("negative entry at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize },

    #[error("non-finite value at ({row}, {col})")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("index ({row}, {col}) out of bounds for {n_rows}x{n_cols} matrix")]
    IndexOutOfBounds {
        row: usize,
        col: usize,
        n_rows: usize,
        n_cols: usize,
    },

    #[error("malformed CSR structure: {0}")]
    MalformedCsr(String),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("divergent series: |alpha| * lambda0 = {0} >= 1")]
    DivergentSeries(f64),

    #[error("matrix is not (sub)stochastic: row {row} sums to {sum}")]
    NotStochastic { row: usize, sum: f64 },

    #[error("invalid preference vector: {0}")]
    InvalidPreference(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("matrix has no nonzero entry")]
    ZeroMatrix,

    #[error("iterate vanished at iteration {0}")]
    VanishingIterate(usize),

    #[error("matrix is not reciprocal at ({0}, {1})")]
    NotReciprocal(usize, usize),

    #[error("vector is not a right eigenvector (residual {0:e})")]
    NotEigenvector(f64),

    #[error("dimension {n} exceeds oracle cap {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("spectral radius {0} is not 1")]
    SpectralRadiusNotOne(f64),

    #[error("singular linear system")]
    SingularSolve,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("non-finite weight at line {0}")]
    NonFiniteWeight(usize),

    #[error("unsupported MatrixMarket field: {0}")]
    UnsupportedField(String),

    #[error("node sets differ: {0}")]
    NodeSetMismatch(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Numerical failures (divergence, non-convergence) as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::DivergentSeries(_)
                | Error::VanishingIterate(_)
                | Error::SingularSolve
                | Error::SpectralRadiusNotOne(_)
        )
    }

    /// Variant name, stable across releases.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotSquare { .. } => "NotSquare",
            Error::NullRow(_) => "NullRow",
            Error::NegativeEntry { .. } => "NegativeEntry",
            Error::NonFiniteEntry { .. } => "NonFiniteEntry",
            Error::IndexOutOfBounds { .. } => "IndexOutOfBounds",
            Error::MalformedCsr(_) => "MalformedCsr",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::DivergentSeries(_) => "DivergentSeries",
            Error::NotStochastic { .. } => "NotStochastic",
            Error::InvalidPreference(_) => "InvalidPreference",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::ZeroMatrix => "ZeroMatrix",
            Error::VanishingIterate(_) => "VanishingIterate",
            Error::NotReciprocal(..) => "NotReciprocal",
            Error::NotEigenvector(_) => "NotEigenvector",
            Error::TooLarge { .. } => "TooLarge",
            Error::SpectralRadiusNotOne(_) => "SpectralRadiusNotOne",
            Error::SingularSolve => "SingularSolve",
            Error::Parse { .. } => "Parse",
            Error::NonFiniteWeight(_) => "NonFiniteWeight",
            Error::UnsupportedField(_) => "UnsupportedField",
            Error::NodeSetMismatch(_) => "NodeSetMismatch",
            Error::Io(_) => "Io",
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
