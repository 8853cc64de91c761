// SPDX-License-Identifier: Apache-2.0

use std::collections::HashMap;
use std::io::BufRead;

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;

/// Square matrix whose rows and columns carry node labels.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledGraph {
    pub matrix: SparseMatrix,
    pub labels: Vec<String>,
}

impl LabeledGraph {
    /// Wraps a matrix with labels `"0"`, `"1"`, ….
    pub fn with_index_labels(matrix: SparseMatrix) -> Self {
        let labels = (0..matrix.n_rows()).map(|i| i.to_string()).collect();
        Self { matrix, labels }
    }

    pub fn index_of(&self) -> HashMap<&str, usize> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect()
    }
}

/// Meaningful lines of a text stream: 1-based number and trimmed content,
/// skipping blank lines and `comment`-prefixed lines.
fn content_lines<R: BufRead>(
    reader: R,
    comment: char,
) -> impl Iterator<Item = Result<(usize, String)>> {
    reader
        .lines()
        .enumerate()
        .filter_map(move |(i, line)| match line {
            Err(e) => Some(Err(Error::from(e))),
            Ok(text) => {
                let trimmed = text.trim_end_matches(['\r', '\n']);
                if trimmed.trim().is_empty() || trimmed.trim_start().starts_with(comment) {
                    None
                } else {
                    Some(Ok((i + 1, trimmed.to_string())))
                }
            }
        })
}

/// Parses `src<TAB>dst[<TAB>weight]` lines.
///
/// Nodes are numbered by first appearance, duplicate edges add their
/// weights, and `#` starts a comment line. Without `weighted`, lines must
/// have exactly two fields and every edge weighs 1.
pub fn parse_edge_list<R: BufRead>(reader: R, weighted: bool) -> Result<LabeledGraph> {
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut triplets = Vec::new();
    let mut intern = |label: &str, labels: &mut Vec<String>| -> usize {
        *index.entry(label.to_string()).or_insert_with(|| {
            labels.push(label.to_string());
            labels.len() - 1
        })
    };
    for item in content_lines(reader, '#') {
        let (line_no, line) = item?;
        let fields: Vec<&str> = line.split('\t').collect();
        let weight = match (fields.len(), weighted) {
            (2, _) => 1.0,
            (3, true) => {
                let w: f64 = fields[2].trim().parse().map_err(|_| {
                    Error::parse(line_no, format!("invalid weight {:?}", fields[2]))
                })?;
                if !w.is_finite() {
                    return Err(Error::NonFiniteWeight(line_no));
                }
                w
            }
            (k, _) => {
                return Err(Error::parse(
                    line_no,
                    format!(
                        "expected {} tab-separated fields, found {k}",
                        if weighted { "2 or 3" } else { "2" }
                    ),
                ))
            }
        };
        let (src, dst) = (fields[0].trim(), fields[1].trim());
        if src.is_empty() || dst.is_empty() {
            return Err(Error::parse(line_no, "empty node label"));
        }
        let i = intern(src, &mut labels);
        let j = intern(dst, &mut labels);
        triplets.push((i, j, weight));
    }
    let n = labels.len();
    let matrix = SparseMatrix::from_triplets(n, n, triplets)?;
    Ok(LabeledGraph { matrix, labels })
}

/// Reads a `label<TAB>weight` preference file aligned to `labels`.
///
/// Labels absent from the file get weight 0; labels unknown to the graph
/// are an error.
pub fn parse_preferences<R: BufRead>(reader: R, labels: &[String]) -> Result<Vec<f64>> {
    let index: HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    let mut out = vec![0.0; labels.len()];
    for item in content_lines(reader, '#') {
        let (line_no, line) = item?;
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 {
            return Err(Error::parse(line_no, "expected label<TAB>weight"));
        }
        let &i = index
            .get(fields[0].trim())
            .ok_or_else(|| Error::parse(line_no, format!("unknown label {:?}", fields[0])))?;
        let w: f64 = fields[1]
            .trim()
            .parse()
            .map_err(|_| Error::parse(line_no, format!("invalid weight {:?}", fields[1])))?;
        if !w.is_finite() {
            return Err(Error::NonFiniteWeight(line_no));
        }
        out[i] += w;
    }
    Ok(out)
}

/// Reads one real number per line (surfer survival weights `d(0), d(1), …`).
pub fn parse_weights<R: BufRead>(reader: R) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for item in content_lines(reader, '#') {
        let (line_no, line) = item?;
        let w: f64 = line
            .trim()
            .parse()
            .map_err(|_| Error::parse(line_no, format!("invalid number {line:?}")))?;
        if !w.is_finite() {
            return Err(Error::NonFiniteWeight(line_no));
        }
        out.push(w);
    }
    Ok(out)
}
