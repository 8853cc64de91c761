// SPDX-License-Identifier: Apache-2.0

//! Two-sided check of the resolvent expansion around α = 1:
//!
//! `(1−α)(I − αS)^{-1} = S* − Σ_{n≥0} ((α−1)/α)^{n+1} Q^{n+1}`,
//! with `Q = (I − S + S*)^{-1} − S*`.
//!
//! The left side comes from a dense solve, the right side from the Cesàro
//! limit and a truncated power series in `Q`. The series only converges for
//! α close enough to 1; outside that range the α is reported as diverged.

use nalgebra::DMatrix;

use super::cesaro::{cesaro_unchecked, DEFAULT_MAX_DOUBLINGS, RADIUS_TOL};
use super::spectrum::dense_spectrum;
use crate::dense::{max_abs_diff, DenseMatrix};
use crate::error::{Error, Result};

pub const MAX_SERIES_TERMS: usize = 100_000;
/// A series term larger than this counts as divergence.
const BLOWUP: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResolventOutcome {
    /// Both sides computed; `discrepancy` is the largest entrywise gap.
    Agreement { discrepancy: f64, terms: usize },
    /// The Q-series did not converge at this α.
    SeriesDiverged { terms: usize, last_term: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolventCheck {
    pub alpha: f64,
    pub outcome: ResolventOutcome,
}

impl ResolventCheck {
    pub fn discrepancy(&self) -> Option<f64> {
        match self.outcome {
            ResolventOutcome::Agreement { discrepancy, .. } => Some(discrepancy),
            ResolventOutcome::SeriesDiverged { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolventReport {
    pub cesaro_limit: DenseMatrix,
    /// The deviation matrix `Q`.
    pub deviation: DenseMatrix,
    pub checks: Vec<ResolventCheck>,
}

pub fn dense_resolvent_limit(s: &DenseMatrix, alphas: &[f64], tol: f64) -> Result<ResolventReport> {
    if let Some(&bad) = alphas.iter().find(|a| !(**a > 0.0 && **a < 1.0)) {
        return Err(Error::InvalidParameter(format!(
            "alpha {bad} not in (0, 1)"
        )));
    }
    let radius = dense_spectrum(s, 1e-6)?.spectral_radius();
    if (radius - 1.0).abs() > RADIUS_TOL {
        return Err(Error::SpectralRadiusNotOne(radius));
    }
    let n = s.n();
    let sm = s.as_matrix();
    let id = DMatrix::<f64>::identity(n, n);
    let star = cesaro_unchecked(s, tol, DEFAULT_MAX_DOUBLINGS)?;
    let star_m = star.as_matrix();

    let deviation = checked_inverse(&(&id - sm + star_m))? - star_m;

    let mut checks = Vec::with_capacity(alphas.len());
    for &alpha in alphas {
        let lhs = checked_inverse(&(&id - sm * alpha))? * (1.0 - alpha);
        let ratio = (alpha - 1.0) / alpha;
        let mut term = id.clone();
        let mut rhs = star_m.clone();
        let mut outcome = None;
        for k in 1..=MAX_SERIES_TERMS {
            term = (&term * &deviation) * ratio;
            rhs -= &term;
            let size = term.amax();
            if size <= tol {
                outcome = Some(ResolventOutcome::Agreement {
                    discrepancy: max_abs_diff(&lhs, &rhs),
                    terms: k,
                });
                break;
            }
            if size > BLOWUP || !size.is_finite() {
                outcome = Some(ResolventOutcome::SeriesDiverged {
                    terms: k,
                    last_term: size,
                });
                break;
            }
        }
        let outcome = outcome.unwrap_or(ResolventOutcome::SeriesDiverged {
            terms: MAX_SERIES_TERMS,
            last_term: term.amax(),
        });
        checks.push(ResolventCheck { alpha, outcome });
    }
    Ok(ResolventReport {
        cesaro_limit: star,
        deviation: DenseMatrix::from_matrix(deviation)?,
        checks,
    })
}

/// LU inverse with a residual check; near-singular systems are rejected.
pub(crate) fn checked_inverse(a: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let n = a.nrows();
    let inv = a.clone().lu().try_inverse().ok_or(Error::SingularSolve)?;
    let defect = max_abs_diff(&(a * &inv), &DMatrix::identity(n, n));
    if !defect.is_finite() || defect > 1e-6 {
        return Err(Error::SingularSolve);
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dm(rows: &[&[f64]]) -> DenseMatrix {
        DenseMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn identity_has_zero_deviation() {
        let report = dense_resolvent_limit(&DenseMatrix::identity(3), &[0.3, 0.9], 1e-14).unwrap();
        assert_eq!(report.deviation.as_matrix().amax(), 0.0);
        for check in &report.checks {
            assert!(check.discrepancy().unwrap() < 1e-15);
        }
    }

    #[test]
    fn two_cycle_closed_form() {
        // (1−α)(I−αS)^{-1} = [[1, α], [α, 1]] / (1+α) for the swap S.
        let s = dm(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let report = dense_resolvent_limit(&s, &[0.9], 1e-15).unwrap();
        assert!(report.checks[0].discrepancy().unwrap() <= 1e-10);
        let alpha = 0.9;
        let lhs = checked_inverse(&(DMatrix::identity(2, 2) - s.as_matrix() * alpha)).unwrap()
            * (1.0 - alpha);
        assert!((lhs[(0, 1)] - alpha / (1.0 + alpha)).abs() < 1e-15);
    }

    #[test]
    fn far_alpha_diverges() {
        // Q for the swap has eigenvalues {0, 1/2}, so the series needs
        // |(α−1)/α| < 2, i.e. α > 1/3.
        let s = dm(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let report = dense_resolvent_limit(&s, &[0.2, 0.5], 1e-14).unwrap();
        assert!(matches!(
            report.checks[0].outcome,
            ResolventOutcome::SeriesDiverged { .. }
        ));
        assert!(report.checks[1].discrepancy().unwrap() < 1e-12);
    }

    #[test]
    fn rejects_bad_alpha() {
        let s = DenseMatrix::identity(2);
        assert!(matches!(
            dense_resolvent_limit(&s, &[1.0], 1e-9),
            Err(Error::InvalidParameter(_))
        ));
    }
}
