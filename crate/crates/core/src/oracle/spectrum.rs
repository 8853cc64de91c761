// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};

/// Above this dimension the per-eigenvalue backward-error check is skipped;
/// it needs one complex SVD per eigenvalue.
pub const RESIDUAL_CHECK_MAX_N: usize = 64;

const SCHUR_MAX_ITER: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    /// All eigenvalues, sorted by decreasing modulus.
    pub eigenvalues: Vec<Complex64>,
    /// Largest `σ_min(A − λI) / max(1, ‖A‖_F)` over the reported λ, when checked.
    pub max_residual: Option<f64>,
}

impl SpectrumReport {
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.first().map_or(0.0, |z| z.norm())
    }
}

/// Full eigenvalue list of a real square matrix via the real Schur form.
pub fn dense_spectrum(a: &DenseMatrix, tol: f64) -> Result<SpectrumReport> {
    let n = a.n();
    if n == 0 {
        return Ok(SpectrumReport {
            eigenvalues: Vec::new(),
            max_residual: Some(0.0),
        });
    }
    let eigenvalues = schur_eigenvalues(a.as_matrix())?;

    let max_residual = if n <= RESIDUAL_CHECK_MAX_N {
        let scale = a.as_matrix().norm().max(1.0);
        let complex = a.as_matrix().map(|x| Complex64::new(x, 0.0));
        let mut worst = 0.0f64;
        for &lambda in &eigenvalues {
            let shifted = &complex - DMatrix::<Complex64>::identity(n, n) * lambda;
            let sigma_min = shifted
                .singular_values()
                .iter()
                .copied()
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(sigma_min / scale);
        }
        if worst > tol {
            return Err(Error::NoConvergence {
                iterations: SCHUR_MAX_ITER,
                residual: worst,
            });
        }
        Some(worst)
    } else {
        None
    };
    Ok(SpectrumReport {
        eigenvalues,
        max_residual,
    })
}

/// Eigenvalues sorted by decreasing modulus, without the residual check.
pub(crate) fn schur_eigenvalues(a: &DMatrix<f64>) -> Result<Vec<Complex64>> {
    let schur = Schur::try_new(a.clone(), f64::EPSILON, SCHUR_MAX_ITER)
        .or_else(|| Schur::try_new(skewed(a)?, f64::EPSILON, SCHUR_MAX_ITER))
        .ok_or(Error::NoConvergence {
            iterations: SCHUR_MAX_ITER,
            residual: f64::NAN,
        })?;
    let mut eigenvalues: Vec<Complex64> = schur.complex_eigenvalues().iter().copied().collect();
    sort_by_modulus(&mut eigenvalues);
    Ok(eigenvalues)
}

/// `T A T⁻¹` with `T = I + N/2`, `N` the upper shift.
///
/// Shifted QR can stall on orthogonal input such as cyclic permutations;
/// this well-conditioned similarity keeps the spectrum but not the
/// orthogonality.
fn skewed(a: &DMatrix<f64>) -> Option<DMatrix<f64>> {
    let n = a.nrows();
    let mut t = DMatrix::<f64>::identity(n, n);
    for i in 0..n.saturating_sub(1) {
        t[(i, i + 1)] = 0.5;
    }
    let inv = t.clone().try_inverse()?;
    Some(t * a * inv)
}

/// Decreasing modulus, then decreasing real part, then decreasing imaginary part.
pub fn sort_by_modulus(values: &mut [Complex64]) {
    values.sort_by(|a, b| {
        b.norm()
            .total_cmp(&a.norm())
            .then(b.re.total_cmp(&a.re))
            .then(b.im.total_cmp(&a.im))
    });
}

/// Smallest achievable maximum distance between two equally long multisets
/// of complex numbers (bottleneck matching, by exhaustive search).
///
/// Intended for the small spectra the oracle compares; the search is
/// factorial in the length.
pub fn matched_distance(a: &[Complex64], b: &[Complex64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    if a.len() > 10 {
        return Err(Error::TooLarge {
            n: a.len(),
            cap: 10,
        });
    }
    let mut used = vec![false; b.len()];
    let mut best = f64::INFINITY;
    search(a, b, 0, 0.0, &mut used, &mut best);
    Ok(if a.is_empty() { 0.0 } else { best })
}

fn search(a: &[Complex64], b: &[Complex64], i: usize, cur: f64, used: &mut [bool], best: &mut f64) {
    if cur >= *best {
        return;
    }
    if i == a.len() {
        *best = cur;
        return;
    }
    for j in 0..b.len() {
        if !used[j] {
            used[j] = true;
            search(a, b, i + 1, cur.max((a[i] - b[j]).norm()), used, best);
            used[j] = false;
        }
    }
}
