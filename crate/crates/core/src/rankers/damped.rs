// SPDX-License-Identifier: Apache-2.0

//! Path-summation indices: Katz, Hubbell, damped spectral ranking and the
//! Markovian indices built on it (PageRank, Eigenfactor, surfer model).

use super::solve::{
    lambda0_for, ones_times, require_convergent, residual_norm, solve_left_fixpoint, Sweep,
};
use super::RankerReport;
use crate::error::{Error, Result};
use crate::matrix::{DampingParams, ScoreVector, SparseMatrix};

/// Row sums may exceed 1 by this much and still count as stochastic.
pub(crate) const STOCHASTIC_EPS: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KatzVariant {
    /// `𝟙 Σ (αM)^k`.
    #[default]
    PathSum,
    /// `𝟙 M Σ (αM)^k`: one extra, undamped multiplication by `M`.
    Classic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KatzMethod {
    /// Gauss–Seidel on `x (I − αM) = b` (Jacobi when `αM` has negative entries).
    #[default]
    Solve,
    /// Partial sums of the Neumann series.
    Neumann,
}

/// Katz index `𝟙 Σ (αM)^k`, or `𝟙 M Σ (αM)^k` for the classic variant.
///
/// Requires `|α| λ₀ < 1`; λ₀ is taken from `params` or estimated.
pub fn katz_index(
    m: &SparseMatrix,
    params: &DampingParams,
    variant: KatzVariant,
    method: KatzMethod,
) -> Result<RankerReport> {
    m.require_square()?;
    let lambda0 = lambda0_for(m, params)?;
    require_convergent(params.alpha, lambda0)?;
    let n = m.n_rows();
    let b = match variant {
        KatzVariant::PathSum => vec![1.0; n],
        KatzVariant::Classic => ones_times(m)?,
    };
    let sweep = match method {
        KatzMethod::Solve => Sweep::GaussSeidel,
        KatzMethod::Neumann => Sweep::Jacobi,
    };
    let fix = solve_left_fixpoint(
        m,
        &b,
        params.alpha,
        b.clone(),
        sweep,
        params.tol,
        params.max_iter,
    )?;
    let report = RankerReport::new(ScoreVector::from(fix.x), fix.iterations, fix.residual);
    Ok(match lambda0 {
        Some(l) => report.with_lambda0(l),
        None => report,
    })
}

fn radius_for_check(m: &SparseMatrix, tol: f64, max_iter: usize) -> Result<Option<f64>> {
    lambda0_for(
        m,
        &DampingParams::new(1.0)
            .with_tol(tol)
            .with_max_iter(max_iter),
    )
}

/// Hubbell index: the solution of `r = v + r M`, i.e. `v Σ M^k`.
///
/// `M` may have negative entries but needs spectral radius below one.
/// Large sign-indefinite matrices skip the up-front check and rely on
/// divergence detection during the iteration.
pub fn hubbell_index(
    m: &SparseMatrix,
    v: &[f64],
    tol: f64,
    max_iter: usize,
) -> Result<RankerReport> {
    m.require_square()?;
    check_vector(m, v)?;
    let radius = radius_for_check(m, tol, max_iter)?;
    require_convergent(1.0, radius)?;
    let fix = solve_left_fixpoint(m, v, 1.0, v.to_vec(), Sweep::GaussSeidel, tol, max_iter)?;
    let report = RankerReport::new(ScoreVector::from(fix.x), fix.iterations, fix.residual);
    Ok(match radius {
        Some(l) => report.with_lambda0(l),
        None => report,
    })
}

/// Damped spectral ranking `r = (1 − λ₀α) v Σ (αM)^k`.
///
/// Iterates `r ← α r M + (1 − λ₀α) v` from `r = v`; the stopping metric is
/// `‖r − α r M − (1 − λ₀α) v‖₁`. With `M` stochastic and `v` a
/// distribution every iterate keeps `‖r‖₁ = 1`. Negative α is accepted;
/// the result is then not renormalized and may have mixed signs.
pub fn damped_spectral_ranking(
    m: &SparseMatrix,
    v: &[f64],
    params: &DampingParams,
) -> Result<RankerReport> {
    m.require_square()?;
    check_vector(m, v)?;
    let lambda0 = lambda0_for(m, params)?.ok_or_else(|| {
        Error::InvalidParameter("lambda0 must be given for large sign-indefinite matrices".into())
    })?;
    require_convergent(params.alpha, Some(lambda0))?;
    let weight = 1.0 - lambda0 * params.alpha;
    let b: Vec<f64> = v.iter().map(|x| weight * x).collect();
    let fix = solve_left_fixpoint(
        m,
        &b,
        params.alpha,
        v.to_vec(),
        Sweep::Jacobi,
        params.tol,
        params.max_iter,
    )?;
    Ok(
        RankerReport::new(ScoreVector::from(fix.x), fix.iterations, fix.residual)
            .with_lambda0(lambda0),
    )
}

/// PageRank: damped Markovian spectral ranking with preference vector `v`.
///
/// `P` must be row-stochastic, or substochastic when dangling rows were
/// left null; in the latter case `‖r‖₁ < 1`.
pub fn pagerank(
    p: &SparseMatrix,
    v: &[f64],
    alpha: f64,
    tol: f64,
    max_iter: usize,
) -> Result<RankerReport> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "damping factor {alpha} not in [0, 1)"
        )));
    }
    p.require_substochastic(STOCHASTIC_EPS)?;
    check_distribution(p, v)?;
    let params = DampingParams::new(alpha)
        .with_lambda0(1.0)
        .with_tol(tol)
        .with_max_iter(max_iter);
    damped_spectral_ranking(p, v, &params)
}

/// Eigenfactor-style score: PageRank followed by one undamped step,
/// `normalize₁(pagerank(S, v, α) · S)`.
pub fn eigenfactor(
    s: &SparseMatrix,
    v: &[f64],
    alpha: f64,
    tol: f64,
    max_iter: usize,
) -> Result<RankerReport> {
    let base = pagerank(s, v, alpha, tol, max_iter)?;
    let scores = s.vec_mat(&base.scores)?.normalized_l1();
    Ok(RankerReport { scores, ..base })
}

/// Hoede's index `𝟙 M (I − M)^{-1}`: the classic Katz index without damping.
///
/// Refuses any `M` with spectral radius ≥ 1, singular `I − M` included.
pub fn hoede_index(m: &SparseMatrix, tol: f64, max_iter: usize) -> Result<RankerReport> {
    m.require_square()?;
    let radius = radius_for_check(m, tol, max_iter)?;
    require_convergent(1.0, radius)?;
    let b = ones_times(m)?;
    let fix = solve_left_fixpoint(m, &b, 1.0, b.clone(), Sweep::GaussSeidel, tol, max_iter)?;
    let report = RankerReport::new(ScoreVector::from(fix.x), fix.iterations, fix.residual);
    Ok(match radius {
        Some(l) => report.with_lambda0(l),
        None => report,
    })
}

/// Predicted overall visits `Σ_t d(t) v P^t` of the surfer model.
pub fn surfer_prediction(p: &SparseMatrix, v: &[f64], weights: &[f64]) -> Result<ScoreVector> {
    p.require_stochastic(STOCHASTIC_EPS)?;
    check_vector(p, v)?;
    if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w >= 0.0)) {
        return Err(Error::InvalidParameter(format!(
            "surfer weights must be finite and nonnegative, got {w}"
        )));
    }
    let mut total = vec![0.0; v.len()];
    let mut state = v.to_vec();
    let mut next = vec![0.0; v.len()];
    for (t, &d) in weights.iter().enumerate() {
        if t > 0 {
            p.vec_mat_into(&state, &mut next)?;
            std::mem::swap(&mut state, &mut next);
        }
        for (acc, s) in total.iter_mut().zip(&state) {
            *acc += d * s;
        }
    }
    Ok(ScoreVector::from(total))
}

/// Geometric survival weights `d(t) = (1 − α) α^t`, truncated once the
/// remaining mass `α^{t+1}` is at most `tail_tol`.
pub fn geometric_weights(alpha: f64, tail_tol: f64) -> Result<Vec<f64>> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "damping factor {alpha} not in [0, 1)"
        )));
    }
    if tail_tol.is_nan() || tail_tol <= 0.0 {
        return Err(Error::InvalidParameter("tail_tol must be positive".into()));
    }
    let mut weights = Vec::new();
    let mut power = 1.0;
    loop {
        weights.push((1.0 - alpha) * power);
        power *= alpha;
        if power <= tail_tol {
            return Ok(weights);
        }
    }
}

fn check_vector(m: &SparseMatrix, v: &[f64]) -> Result<()> {
    if v.len() != m.n_rows() {
        return Err(Error::DimensionMismatch {
            expected: m.n_rows(),
            found: v.len(),
        });
    }
    if let Some(i) = v.iter().position(|x| !x.is_finite()) {
        return Err(Error::InvalidPreference(format!("entry {i} is not finite")));
    }
    Ok(())
}

pub(crate) fn check_distribution(m: &SparseMatrix, v: &[f64]) -> Result<()> {
    check_vector(m, v)?;
    let sum: f64 = v.iter().sum();
    if v.iter().any(|&x| x < 0.0) || (sum - 1.0).abs() > STOCHASTIC_EPS {
        return Err(Error::InvalidPreference(format!(
            "expected a distribution, entries sum to {sum}"
        )));
    }
    Ok(())
}

/// `‖r − α r M − (1 − λ₀α) v‖₁` for a candidate damped ranking.
pub fn damped_residual(
    m: &SparseMatrix,
    v: &[f64],
    alpha: f64,
    lambda0: f64,
    r: &[f64],
) -> Result<f64> {
    let b: Vec<f64> = v.iter().map(|x| (1.0 - lambda0 * alpha) * x).collect();
    residual_norm(r, &b, alpha, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[f64]]) -> SparseMatrix {
        SparseMatrix::from_dense_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    fn two_cycle() -> SparseMatrix {
        m(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    #[test]
    fn katz_nilpotent_examples() {
        let a = m(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let params = DampingParams::new(0.5).with_tol(1e-14);
        for method in [KatzMethod::Solve, KatzMethod::Neumann] {
            let path = katz_index(&a, &params, KatzVariant::PathSum, method).unwrap();
            assert!(close(&path.scores, &[1.0, 1.5], 1e-14));
            let classic = katz_index(&a, &params, KatzVariant::Classic, method).unwrap();
            assert!(close(&classic.scores, &[0.0, 1.0], 1e-14));
        }
    }

    #[test]
    fn katz_zero_damping_is_ones() {
        let a = m(&[&[0.0, 3.0, 1.0], &[2.0, 0.0, 0.0], &[1.0, 1.0, 1.0]]);
        let r = katz_index(
            &a,
            &DampingParams::new(0.0),
            KatzVariant::PathSum,
            KatzMethod::Solve,
        )
        .unwrap();
        assert_eq!(&*r.scores, &[1.0, 1.0, 1.0]);
    }

    #[test]
    fn katz_refuses_divergent_damping() {
        let p = two_cycle();
        let err = katz_index(
            &p,
            &DampingParams::new(2.0),
            KatzVariant::PathSum,
            KatzMethod::Solve,
        )
        .unwrap_err();
        assert!(matches!(err, Error::DivergentSeries(q) if (q - 2.0).abs() < 1e-9));
    }

    #[test]
    fn hubbell_examples() {
        let scalar = m(&[&[0.5]]);
        let r = hubbell_index(&scalar, &[1.0], 1e-14, 1000).unwrap();
        assert!(close(&r.scores, &[2.0], 1e-13));

        let zero = SparseMatrix::zeros(3, 3);
        let r = hubbell_index(&zero, &[0.2, -1.0, 4.0], 1e-14, 10).unwrap();
        assert_eq!(&*r.scores, &[0.2, -1.0, 4.0]);

        let signed = m(&[&[0.0, -0.5], &[0.0, 0.0]]);
        let r = hubbell_index(&signed, &[1.0, 1.0], 1e-14, 100).unwrap();
        assert!(close(&r.scores, &[1.0, 0.5], 1e-15));
    }

    #[test]
    fn hubbell_refuses_radius_one() {
        assert!(matches!(
            hubbell_index(&two_cycle(), &[1.0, 0.0], 1e-9, 100),
            Err(Error::DivergentSeries(_))
        ));
    }

    #[test]
    fn damped_examples() {
        let p = two_cycle();
        let params = DampingParams::new(0.0).with_lambda0(1.0);
        let r = damped_spectral_ranking(&p, &[0.3, 0.7], &params).unwrap();
        assert_eq!(&*r.scores, &[0.3, 0.7]);

        let params = DampingParams::new(0.85).with_tol(1e-14);
        let r = damped_spectral_ranking(&p, &[0.5, 0.5], &params).unwrap();
        assert!(close(&r.scores, &[0.5, 0.5], 1e-14));

        // (1 − α) v (I − αP)^{-1} with α = 1/2, v = e₀: solving the 2×2
        // system by hand gives (2/3, 1/3).
        let params = DampingParams::new(0.5).with_lambda0(1.0).with_tol(1e-15);
        let r = damped_spectral_ranking(&p, &[1.0, 0.0], &params).unwrap();
        assert!(close(&r.scores, &[2.0 / 3.0, 1.0 / 3.0], 1e-14));
    }

    #[test]
    fn damped_negative_alpha_satisfies_fixpoint() {
        let a = m(&[&[0.0, 2.0, 1.0], &[1.0, 0.0, 1.0], &[1.0, 1.0, 0.0]]);
        let params = DampingParams::new(-0.2).with_tol(1e-13);
        let r = damped_spectral_ranking(&a, &[0.2, 0.3, 0.5], &params).unwrap();
        let lambda0 = r.lambda0.unwrap();
        let res = damped_residual(&a, &[0.2, 0.3, 0.5], -0.2, lambda0, &r.scores).unwrap();
        assert!(res <= 1e-13);
    }

    #[test]
    fn pagerank_examples() {
        let r = pagerank(&two_cycle(), &[0.5, 0.5], 0.85, 1e-12, 1000).unwrap();
        assert!(close(&r.scores, &[0.5, 0.5], 1e-15));

        let p = m(&[&[0.2, 0.8, 0.0], &[0.0, 0.0, 1.0], &[0.5, 0.5, 0.0]]);
        let r = pagerank(&p, &[0.1, 0.2, 0.7], 0.0, 1e-12, 1000).unwrap();
        assert_eq!(&*r.scores, &[0.1, 0.2, 0.7]);

        assert!(matches!(
            pagerank(&m(&[&[0.0, 2.0], &[1.0, 0.0]]), &[0.5, 0.5], 0.5, 1e-9, 10),
            Err(Error::NotStochastic { row: 0, .. })
        ));
        assert!(matches!(
            pagerank(&two_cycle(), &[0.5, 0.6], 0.5, 1e-9, 10),
            Err(Error::InvalidPreference(_))
        ));
        assert!(matches!(
            pagerank(&two_cycle(), &[0.5, 0.5], 1.0, 1e-9, 10),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn eigenfactor_examples() {
        let r = eigenfactor(&two_cycle(), &[0.5, 0.5], 0.85, 1e-12, 1000).unwrap();
        assert!(close(&r.scores, &[0.5, 0.5], 1e-15));
        let id = SparseMatrix::identity(3);
        let r = eigenfactor(&id, &[0.2, 0.3, 0.5], 0.0, 1e-12, 1000).unwrap();
        assert!(close(&r.scores, &[0.2, 0.3, 0.5], 1e-15));
    }

    #[test]
    fn hoede_examples() {
        let a = m(&[&[0.0, 1.0], &[0.0, 0.0]]);
        let r = hoede_index(&a, 1e-14, 100).unwrap();
        assert!(close(&r.scores, &[0.0, 1.0], 1e-15));
        let r = hoede_index(&SparseMatrix::zeros(3, 3), 1e-14, 100).unwrap();
        assert_eq!(&*r.scores, &[0.0; 3]);
        assert!(matches!(
            hoede_index(&m(&[&[1.0]]), 1e-9, 100),
            Err(Error::DivergentSeries(_))
        ));
    }

    #[test]
    fn surfer_examples() {
        let p = m(&[&[0.3, 0.7], &[0.6, 0.4]]);
        let v = [0.25, 0.75];
        assert_eq!(&*surfer_prediction(&p, &v, &[1.0, 0.0, 0.0]).unwrap(), &v);
        let r = surfer_prediction(&two_cycle(), &[1.0, 0.0], &[0.0, 1.0]).unwrap();
        assert_eq!(&*r, &[0.0, 1.0]);
        assert!(surfer_prediction(&p, &v, &[1.0, -0.5]).is_err());
    }

    #[test]
    fn geometric_weights_cover_all_but_tail() {
        let w = geometric_weights(0.5, 1e-3).unwrap();
        assert_eq!(w.len(), 10);
        let mass: f64 = w.iter().sum();
        assert!((1.0 - mass - 0.5f64.powi(10)).abs() < 1e-15);
    }
}
