// SPDX-License-Identifier: Apache-2.0

use crate::matrix::ScoreVector;

pub const DEFAULT_TIE_TOL: f64 = 1e-9;

/// Tie-aware ordering induced by a score vector, best first.
///
/// Ties are chained: two nodes share a group when a sequence of sorted
/// neighbours connects them with every step at most `tie_tol` apart.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    groups: Vec<Vec<usize>>,
    source_scores: ScoreVector,
    tie_tol: f64,
}

impl Ranking {
    /// Tie groups, best first; members of a group are in increasing index order.
    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn source_scores(&self) -> &ScoreVector {
        &self.source_scores
    }

    pub fn tie_tol(&self) -> f64 {
        self.tie_tol
    }

    pub fn len(&self) -> usize {
        self.source_scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source_scores.is_empty()
    }

    /// True when both rankings have the same tie groups in the same order.
    pub fn same_order(&self, other: &Ranking) -> bool {
        self.groups == other.groups
    }

    /// Group index of every node (0 = best).
    pub fn group_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        for (g, members) in self.groups.iter().enumerate() {
            for &i in members {
                out[i] = g;
            }
        }
        out
    }

    /// Standard competition rank ("1224") of every node.
    pub fn competition_ranks(&self) -> Vec<usize> {
        let mut out = vec![0; self.len()];
        let mut next = 1;
        for members in &self.groups {
            for &i in members {
                out[i] = next;
            }
            next += members.len();
        }
        out
    }

    /// Builds a ranking from explicit groups, e.g. when reading a ranking
    /// file. `groups` must partition `0..scores.len()`.
    pub fn from_groups(groups: Vec<Vec<usize>>, source_scores: ScoreVector, tie_tol: f64) -> Self {
        let mut groups = groups;
        groups.iter_mut().for_each(|g| g.sort_unstable());
        debug_assert_eq!(
            groups.iter().map(Vec::len).sum::<usize>(),
            source_scores.len()
        );
        Self {
            groups,
            source_scores,
            tie_tol,
        }
    }
}

/// Sorts nodes by decreasing score and chains near-equal scores into groups.
pub fn ranking_from_scores(scores: &ScoreVector, tie_tol: f64) -> Ranking {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));

    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut prev: Option<f64> = None;
    for i in order {
        let s = scores[i];
        match (prev, groups.last_mut()) {
            (Some(p), Some(group)) if p - s <= tie_tol => group.push(i),
            _ => groups.push(vec![i]),
        }
        prev = Some(s);
    }
    for g in &mut groups {
        g.sort_unstable();
    }
    Ranking {
        groups,
        source_scores: scores.clone(),
        tie_tol,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn groups(s: &[f64], tol: f64) -> Vec<Vec<usize>> {
        ranking_from_scores(&ScoreVector::from(s.to_vec()), tol)
            .groups()
            .to_vec()
    }

    #[test]
    fn exact_tie() {
        assert_eq!(groups(&[0.5, 0.5], 1e-9), vec![vec![0, 1]]);
    }

    #[test]
    fn strict_order() {
        assert_eq!(
            groups(&[3.0, 1.0, 2.0], 1e-9),
            vec![vec![0], vec![2], vec![1]]
        );
    }

    #[test]
    fn sub_tolerance_difference() {
        assert_eq!(
            groups(&[1.0, 1.0 + 1e-12, 2.0], 1e-9),
            vec![vec![2], vec![0, 1]]
        );
    }

    #[test]
    fn ties_chain_transitively() {
        assert_eq!(groups(&[0.0, 0.6, 1.2], 1.0), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn competition_ranks_skip_after_ties() {
        let r = ranking_from_scores(&ScoreVector::from(vec![2.0, 2.0, 1.0]), 1e-9);
        assert_eq!(r.competition_ranks(), vec![1, 1, 3]);
        assert_eq!(r.group_of(), vec![0, 0, 1]);
    }

    proptest! {
        #[test]
        fn groups_partition_and_respect_order(
            scores in proptest::collection::vec(-5.0f64..5.0, 0..30),
            tol in 0.0f64..0.5,
        ) {
            let sv = ScoreVector::from(scores.clone());
            let r = ranking_from_scores(&sv, tol);
            let mut seen: Vec<usize> = r.groups().iter().flatten().copied().collect();
            seen.sort_unstable();
            prop_assert_eq!(seen, (0..scores.len()).collect::<Vec<_>>());
            for pair in r.groups().windows(2) {
                let worst_above = pair[0].iter().map(|&i| scores[i]).fold(f64::INFINITY, f64::min);
                let best_below = pair[1].iter().map(|&i| scores[i]).fold(f64::NEG_INFINITY, f64::max);
                prop_assert!(worst_above - best_below > tol);
            }
            let again = ranking_from_scores(&sv, tol);
            prop_assert_eq!(r.groups(), again.groups());
        }
    }
}
