// SPDX-License-Identifier: Apache-2.0

//! Kendall τ_b between two tie-aware rankings, in O(n log n).

use crate::error::{Error, Result};
use crate::rankers::Ranking;

/// τ_b of two rankings over the same nodes (index `i` is the same node in
/// both). Ties count as in the tie-corrected coefficient.
///
/// When one side is a single tie group the coefficient is undefined; we
/// return 1 if both rankings are identical and 0 otherwise.
pub fn kendall_tau(r1: &Ranking, r2: &Ranking) -> Result<f64> {
    if r1.len() != r2.len() {
        return Err(Error::NodeSetMismatch(format!(
            "{} vs {} nodes",
            r1.len(),
            r2.len()
        )));
    }
    let x = r1.group_of();
    let y = r2.group_of();
    let n = x.len() as u64;
    let n0 = n * n.saturating_sub(1) / 2;

    let mut pairs: Vec<(usize, usize)> = x.into_iter().zip(y).collect();
    pairs.sort_unstable();
    let n1 = tied_pairs(pairs.iter().map(|p| p.0));
    let n3 = tied_pairs(pairs.iter().copied());

    let mut ys: Vec<usize> = pairs.iter().map(|p| p.1).collect();
    let mut buf = vec![0; ys.len()];
    let swaps = merge_count(&mut ys, &mut buf);
    let n2 = tied_pairs(ys.iter().copied());

    let denom = ((n0 - n1) as f64) * ((n0 - n2) as f64);
    if denom == 0.0 {
        return Ok(if r1.same_order(r2) { 1.0 } else { 0.0 });
    }
    let numer = n0 as f64 - n1 as f64 - n2 as f64 + n3 as f64 - 2.0 * swaps as f64;
    Ok(numer / denom.sqrt())
}

/// Pairs sharing a value in an already sorted sequence.
fn tied_pairs<T: PartialEq>(sorted: impl Iterator<Item = T>) -> u64 {
    let mut total = 0;
    let mut run = 0u64;
    let mut prev: Option<T> = None;
    for v in sorted {
        if prev.as_ref() == Some(&v) {
            run += 1;
        } else {
            total += run * run.saturating_sub(1) / 2;
            run = 1;
        }
        prev = Some(v);
    }
    total + run * run.saturating_sub(1) / 2
}

/// Stable merge sort returning the number of strict inversions.
fn merge_count(v: &mut [usize], buf: &mut [usize]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut swaps = merge_count(&mut v[..mid], &mut buf[..mid]);
    swaps += merge_count(&mut v[mid..], &mut buf[mid..]);
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        if v[j] < v[i] {
            buf[k] = v[j];
            swaps += (mid - i) as u64;
            j += 1;
        } else {
            buf[k] = v[i];
            i += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&v[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&buf[..n]);
    swaps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::ScoreVector;
    use crate::rankers::ranking_from_scores;
    use proptest::prelude::*;

    fn rk(scores: &[f64]) -> Ranking {
        ranking_from_scores(&ScoreVector::from(scores.to_vec()), 0.0)
    }

    fn brute_force(r1: &Ranking, r2: &Ranking) -> f64 {
        let (x, y) = (r1.group_of(), r2.group_of());
        let n = x.len();
        let (mut c, mut d, mut tx, mut ty) = (0.0f64, 0.0, 0.0, 0.0);
        for i in 0..n {
            for j in i + 1..n {
                let a = (x[i] as i64 - x[j] as i64).signum();
                let b = (y[i] as i64 - y[j] as i64).signum();
                match (a, b) {
                    (0, 0) => {}
                    (0, _) => tx += 1.0,
                    (_, 0) => ty += 1.0,
                    _ if a == b => c += 1.0,
                    _ => d += 1.0,
                }
            }
        }
        let denom = ((c + d + tx) * (c + d + ty)).sqrt();
        if denom == 0.0 {
            return if r1.same_order(r2) { 1.0 } else { 0.0 };
        }
        (c - d) / denom
    }

    #[test]
    fn identical_and_reversed() {
        let a = rk(&[4.0, 3.0, 2.0, 1.0]);
        let b = rk(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(kendall_tau(&a, &a).unwrap(), 1.0);
        assert_eq!(kendall_tau(&a, &b).unwrap(), -1.0);
    }

    #[test]
    fn one_adjacent_swap() {
        let a = rk(&[3.0, 2.0, 1.0]);
        let b = rk(&[2.0, 3.0, 1.0]);
        assert!((kendall_tau(&a, &b).unwrap() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn all_tied() {
        let flat = rk(&[1.0, 1.0, 1.0]);
        let strict = rk(&[3.0, 2.0, 1.0]);
        assert_eq!(kendall_tau(&flat, &flat).unwrap(), 1.0);
        assert_eq!(kendall_tau(&flat, &strict).unwrap(), 0.0);
    }

    #[test]
    fn size_mismatch() {
        assert!(matches!(
            kendall_tau(&rk(&[1.0]), &rk(&[1.0, 2.0])),
            Err(Error::NodeSetMismatch(_))
        ));
    }

    proptest! {
        #[test]
        fn matches_quadratic_count(
            pairs in proptest::collection::vec((0u8..5, 0u8..5), 0..60),
        ) {
            let a = rk(&pairs.iter().map(|p| p.0 as f64).collect::<Vec<_>>());
            let b = rk(&pairs.iter().map(|p| p.1 as f64).collect::<Vec<_>>());
            let fast = kendall_tau(&a, &b).unwrap();
            let slow = brute_force(&a, &b);
            prop_assert!((fast - slow).abs() < 1e-12, "{} vs {}", fast, slow);
        }
    }
}
