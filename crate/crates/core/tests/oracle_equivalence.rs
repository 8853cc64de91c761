// SPDX-License-Identifier: Apache-2.0

mod common;

use common::*;
use rand::Rng;
use spectrank::io::parse_matrix_market;
use spectrank::oracle::{dense_spectrum, neumann_sum};
use spectrank::rankers::{
    ahp_right_ranking, damped_spectral_ranking, katz_index, left_dominant_ranking, KatzMethod,
    KatzVariant,
};
use spectrank::{DampingParams, DenseMatrix, SparseMatrix};

fn radius(m: &SparseMatrix) -> f64 {
    dense_spectrum(&DenseMatrix::from_sparse(m, 512).unwrap(), 1e-6)
        .unwrap()
        .spectral_radius()
}

#[test]
fn left_eigenvalue_matches_dense_radius() {
    let mut r = rng(100);
    for _ in 0..30 {
        let n = r.gen_range(2..30);
        let m = strongly_connected(&mut r, n, 0.2, true);
        let report = left_dominant_ranking(&m, 1e-13, 100_000).unwrap();
        let lambda0 = report.lambda0.unwrap();
        assert!((lambda0 - radius(&m)).abs() < 1e-9 * lambda0.max(1.0));
        let image = m.vec_mat(&report.scores).unwrap();
        let residual: f64 = image
            .iter()
            .zip(report.scores.iter())
            .map(|(y, x)| (y - lambda0 * x).abs())
            .sum();
        assert!(residual <= 1e-12 * lambda0.max(1.0), "{residual}");
    }
}

#[test]
fn damped_ranking_on_sign_indefinite_matrices() {
    let mut r = rng(101);
    for _ in 0..30 {
        let n = r.gen_range(2..12);
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| r.gen_range(-1.0..1.0)).collect())
            .collect();
        let m = SparseMatrix::from_dense_rows(&rows).unwrap();
        let lambda0 = radius(&m);
        let alpha = r.gen_range(-0.9..0.9) / lambda0;
        let v: Vec<f64> = (0..n).map(|_| r.gen_range(-1.0..1.0)).collect();
        let params = DampingParams::new(alpha).with_tol(1e-13);
        let damped = damped_spectral_ranking(&m, &v, &params).unwrap();
        let dense = DenseMatrix::from_rows(&rows).unwrap();
        let series = neumann_sum(&dense, &v, alpha, 1_000_000, 1e-15).unwrap();
        let weight = 1.0 - damped.lambda0.unwrap() * alpha;
        let expected: Vec<f64> = series.scores.iter().map(|x| weight * x).collect();
        assert!(linf(&damped.scores, &expected) < 1e-10);
    }
}

#[test]
fn katz_sweeps_agree() {
    let mut r = rng(102);
    for _ in 0..30 {
        let n = r.gen_range(2..40);
        let m = random_graph(&mut r, n, 0.2);
        let rho = radius(&m).max(1e-3);
        let params = DampingParams::new(r.gen_range(0.1..0.9) / rho).with_tol(1e-12);
        for variant in [KatzVariant::PathSum, KatzVariant::Classic] {
            let solve = katz_index(&m, &params, variant, KatzMethod::Solve).unwrap();
            let series = katz_index(&m, &params, variant, KatzMethod::Neumann).unwrap();
            let scale = solve.scores.iter().fold(1.0f64, |a, x| a.max(x.abs()));
            assert!(linf(&solve.scores, &series.scores) < 1e-10 * scale);
        }
    }
}

#[test]
fn ahp_recovers_consistent_weights() {
    let mut r = rng(103);
    for _ in 0..20 {
        let n = r.gen_range(2..15);
        let w = random_distribution(&mut r, n);
        let rows: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { 1.0 } else { w[i] / w[j] })
                    .collect()
            })
            .collect();
        let m = SparseMatrix::from_dense_rows(&rows).unwrap();
        let report = ahp_right_ranking(&m, 1e-13, 10_000).unwrap();
        assert!(linf(&report.scores, &w) < 1e-12);
        assert!((report.lambda0.unwrap() - n as f64).abs() < 1e-10);
    }
}

#[test]
fn matrix_market_round_trip() {
    let mut r = rng(104);
    for _ in 0..10 {
        let n = r.gen_range(1..30);
        let m = random_graph(&mut r, n, 0.3);
        let mut text = format!(
            "%%MatrixMarket matrix coordinate real general\n{n} {n} {}\n",
            m.nnz()
        );
        for (i, j, v) in m.triplets() {
            text.push_str(&format!("{} {} {v:.17e}\n", i + 1, j + 1));
        }
        assert_eq!(parse_matrix_market(text.as_bytes()).unwrap(), m);
    }
}
