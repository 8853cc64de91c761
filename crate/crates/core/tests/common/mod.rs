// SPDX-License-Identifier: Apache-2.0

//! Seeded random inputs shared by the integration tests.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spectrank::{NormalizeMode, SparseMatrix};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each off-diagonal edge present with probability `density`, weight in [0.5, 1.5).
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64) -> SparseMatrix {
    let mut triplets = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.gen_bool(density) {
                triplets.push((i, j, rng.gen_range(0.5..1.5)));
            }
        }
    }
    SparseMatrix::from_triplets(n, n, triplets).unwrap()
}

/// Random graph plus the cycle `0 → 1 → … → n−1 → 0`; self-loops on every
/// node when `aperiodic` is set.
pub fn strongly_connected(
    rng: &mut ChaCha8Rng,
    n: usize,
    density: f64,
    aperiodic: bool,
) -> SparseMatrix {
    let base = random_graph(rng, n, density);
    let mut triplets: Vec<_> = base.triplets().collect();
    for i in 0..n {
        triplets.push((i, (i + 1) % n, rng.gen_range(0.5..1.5)));
        if aperiodic {
            triplets.push((i, i, rng.gen_range(0.5..1.5)));
        }
    }
    SparseMatrix::from_triplets(n, n, triplets).unwrap()
}

/// Row-stochastic version of `m`, dangling rows replaced by uniform rows.
pub fn stochastic(m: &SparseMatrix) -> SparseMatrix {
    m.row_normalize(NormalizeMode::DanglingUniform).unwrap()
}

/// Dense matrix with entries uniform in [0, 1).
pub fn dense_positive(rng: &mut ChaCha8Rng, n: usize) -> SparseMatrix {
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n).map(|_| rng.gen_range(0.0..1.0)).collect())
        .collect();
    SparseMatrix::from_dense_rows(&rows).unwrap()
}

pub fn random_distribution(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..1.0)).collect();
    let sum: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / sum).collect()
}

pub fn linf(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

pub fn l1(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

/// Matrix ∞-norm (largest absolute row sum) of `a − b`.
pub fn inf_norm_diff(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| (x - y).abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

pub fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![0.0; m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            let aik = a[i][k];
            for j in 0..m {
                out[i][j] += aik * bk[j];
            }
        }
    }
    out
}

/// Writes `m` as a weighted edge list with labels `n0`, `n1`, ….
pub fn edge_list_text(m: &SparseMatrix) -> String {
    let mut out = String::new();
    for (i, j, w) in m.triplets() {
        out.push_str(&format!("n{i}\tn{j}\t{w:.17e}\n"));
    }
    out
}
