// SPDX-License-Identifier: Apache-2.0

//! Ranking files: one `rank<TAB>label<TAB>score` line per node, best first.
//!
//! Tie groups share a rank and the next group skips ahead by the group size
//! (competition ranking, "1 1 3"). Scores are written with 17 significant
//! digits, which round-trips every finite `f64`.

use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::matrix::ScoreVector;
use crate::rankers::Ranking;

/// Scientific notation with 17 significant digits.
pub fn format_score(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_ranking<W: Write>(
    scores: &ScoreVector,
    ranking: &Ranking,
    labels: &[String],
    out: &mut W,
) -> Result<()> {
    let n = scores.len();
    for len in [ranking.len(), labels.len()] {
        if len != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: len,
            });
        }
    }
    let ranks = ranking.competition_ranks();
    for group in ranking.groups() {
        for &i in group {
            writeln!(
                out,
                "{}\t{}\t{}",
                ranks[i],
                labels[i],
                format_score(scores[i])
            )?;
        }
    }
    Ok(())
}

/// Contents of a ranking file in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct RankingFile {
    pub labels: Vec<String>,
    pub scores: ScoreVector,
    pub ranks: Vec<usize>,
}

impl RankingFile {
    /// Tie groups from the rank column, in file order.
    pub fn ranking(&self) -> Ranking {
        Ranking::from_groups(self.groups(Some), self.scores.clone(), 0.0)
    }

    /// The same ranking re-indexed to `labels`; both files must cover
    /// exactly the same nodes.
    pub fn aligned_to(&self, labels: &[String]) -> Result<Ranking> {
        let target: HashMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        if labels.len() != self.labels.len() || target.len() != labels.len() {
            return Err(Error::NodeSetMismatch(format!(
                "{} vs {} nodes",
                labels.len(),
                self.labels.len()
            )));
        }
        let mut position = Vec::with_capacity(self.labels.len());
        for l in &self.labels {
            match target.get(l.as_str()) {
                Some(&i) => position.push(i),
                None => return Err(Error::NodeSetMismatch(format!("unknown label {l:?}"))),
            }
        }
        let mut scores = vec![0.0; labels.len()];
        for (k, &i) in position.iter().enumerate() {
            scores[i] = self.scores[k];
        }
        let groups = self.groups(|k| Some(position[k]));
        Ok(Ranking::from_groups(groups, ScoreVector::from(scores), 0.0))
    }

    fn groups(&self, index: impl Fn(usize) -> Option<usize>) -> Vec<Vec<usize>> {
        let mut by_rank: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (k, &r) in self.ranks.iter().enumerate() {
            if let Some(i) = index(k) {
                by_rank.entry(r).or_default().push(i);
            }
        }
        by_rank.into_values().collect()
    }
}

pub fn parse_ranking<R: BufRead>(reader: R) -> Result<RankingFile> {
    let mut labels = Vec::new();
    let mut scores = Vec::new();
    let mut ranks = Vec::new();
    let mut seen: HashMap<String, usize> = HashMap::new();
    for (i, line) in reader.lines().enumerate() {
        let line_no = i + 1;
        let line = line?;
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 {
            return Err(Error::parse(line_no, "expected rank<TAB>label<TAB>score"));
        }
        let rank: usize = fields[0]
            .trim()
            .parse()
            .map_err(|_| Error::parse(line_no, format!("invalid rank {:?}", fields[0])))?;
        if rank == 0 {
            return Err(Error::parse(line_no, "ranks start at 1"));
        }
        let score: f64 = fields[2]
            .trim()
            .parse()
            .map_err(|_| Error::parse(line_no, format!("invalid score {:?}", fields[2])))?;
        if !score.is_finite() {
            return Err(Error::NonFiniteWeight(line_no));
        }
        let label = fields[1].to_string();
        if let Some(prev) = seen.insert(label.clone(), line_no) {
            return Err(Error::parse(
                line_no,
                format!("label {label:?} already listed on line {prev}"),
            ));
        }
        labels.push(label);
        scores.push(score);
        ranks.push(rank);
    }
    Ok(RankingFile {
        labels,
        scores: ScoreVector::from(scores),
        ranks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rankers::ranking_from_scores;
    use proptest::prelude::*;

    fn write(scores: &[f64], labels: &[&str]) -> String {
        let sv = ScoreVector::from(scores.to_vec());
        let ranking = ranking_from_scores(&sv, 1e-9);
        let labels: Vec<String> = labels.iter().map(|s| s.to_string()).collect();
        let mut out = Vec::new();
        write_ranking(&sv, &ranking, &labels, &mut out).unwrap();
        String::from_utf8(out).unwrap()
    }

    #[test]
    fn simple_order() {
        assert_eq!(
            write(&[2.0, 1.0], &["a", "b"]),
            "1\ta\t2.0000000000000000e0\n2\tb\t1.0000000000000000e0\n"
        );
    }

    #[test]
    fn ties_share_rank() {
        let text = write(&[0.5, 0.5, 0.1], &["a", "b", "c"]);
        let ranks: Vec<&str> = text
            .lines()
            .map(|l| l.split('\t').next().unwrap())
            .collect();
        assert_eq!(ranks, vec!["1", "1", "3"]);
    }

    #[test]
    fn empty_graph() {
        assert_eq!(write(&[], &[]), "");
    }

    #[test]
    fn alignment_detects_mismatch() {
        let file = parse_ranking("1\ta\t1\n2\tb\t0\n".as_bytes()).unwrap();
        let other = vec!["a".to_string(), "c".to_string()];
        assert!(matches!(
            file.aligned_to(&other),
            Err(Error::NodeSetMismatch(_))
        ));
        let swapped = vec!["b".to_string(), "a".to_string()];
        assert_eq!(
            file.aligned_to(&swapped).unwrap().groups(),
            &[vec![1], vec![0]]
        );
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(parse_ranking("1\ta\t1\n2\ta\t0\n".as_bytes()).is_err());
    }

    proptest! {
        #[test]
        fn write_parse_round_trip(
            scores in proptest::collection::vec(prop_oneof![
                any::<f64>().prop_filter("finite", |x| x.is_finite()),
                Just(0.25),
                Just(-0.0),
            ], 0..40),
        ) {
            let labels: Vec<String> = (0..scores.len()).map(|i| format!("node{i}")).collect();
            let sv = ScoreVector::from(scores.clone());
            let ranking = ranking_from_scores(&sv, 1e-9);
            let mut out = Vec::new();
            write_ranking(&sv, &ranking, &labels, &mut out).unwrap();
            let parsed = parse_ranking(out.as_slice()).unwrap();
            let back = parsed.aligned_to(&labels).unwrap();
            prop_assert!(back.same_order(&ranking));
            for (a, b) in back.source_scores().iter().zip(&scores) {
                prop_assert_eq!(a.to_bits(), b.to_bits());
            }
        }
    }
}
