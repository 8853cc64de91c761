// SPDX-License-Identifier: Apache-2.0

use std::io::BufRead;

use crate::error::{Error, Result};
use crate::matrix::SparseMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Field {
    Real,
    Pattern,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Symmetry {
    General,
    Symmetric,
}

/// Parses a MatrixMarket `coordinate` file with field `real`, `integer` or
/// `pattern` (every stored entry weighs 1) and symmetry `general` or
/// `symmetric` (off-diagonal entries mirrored). Indices are 1-based in the
/// file; duplicate entries are summed.
pub fn parse_matrix_market<R: BufRead>(reader: R) -> Result<SparseMatrix> {
    let mut lines = reader.lines().enumerate();
    let (header_no, header) = match lines.next() {
        Some((i, line)) => (i + 1, line?),
        None => return Err(Error::parse(1, "empty input")),
    };
    let tokens: Vec<String> = header.split_whitespace().map(str::to_lowercase).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(Error::parse(
            header_no,
            "missing %%MatrixMarket matrix header",
        ));
    }
    if tokens[2] != "coordinate" {
        return Err(Error::UnsupportedField(format!("format {}", tokens[2])));
    }
    let field = match tokens[3].as_str() {
        "real" | "integer" | "double" => Field::Real,
        "pattern" => Field::Pattern,
        other => return Err(Error::UnsupportedField(other.to_string())),
    };
    let symmetry = match tokens[4].as_str() {
        "general" => Symmetry::General,
        "symmetric" => Symmetry::Symmetric,
        other => return Err(Error::UnsupportedField(other.to_string())),
    };

    let mut size: Option<(usize, usize, usize)> = None;
    let mut triplets = Vec::new();
    let mut entries = 0usize;
    for (i, line) in lines {
        let line_no = i + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let parts: Vec<&str> = trimmed.split_whitespace().collect();
        let Some((n_rows, n_cols, nnz)) = size else {
            if parts.len() != 3 {
                return Err(Error::parse(
                    line_no,
                    "expected size line `rows cols entries`",
                ));
            }
            let parsed: Vec<usize> = parts
                .iter()
                .map(|p| {
                    p.parse()
                        .map_err(|_| Error::parse(line_no, format!("invalid size {p:?}")))
                })
                .collect::<Result<_>>()?;
            size = Some((parsed[0], parsed[1], parsed[2]));
            triplets.reserve(parsed[2]);
            continue;
        };
        let expected = if field == Field::Pattern { 2 } else { 3 };
        if parts.len() != expected {
            return Err(Error::parse(
                line_no,
                format!("expected {expected} fields, found {}", parts.len()),
            ));
        }
        let index = |s: &str, bound: usize| -> Result<usize> {
            let k: usize = s
                .parse()
                .map_err(|_| Error::parse(line_no, format!("invalid index {s:?}")))?;
            if k == 0 || k > bound {
                return Err(Error::parse(
                    line_no,
                    format!("index {k} out of range 1..={bound}"),
                ));
            }
            Ok(k - 1)
        };
        let row = index(parts[0], n_rows)?;
        let col = index(parts[1], n_cols)?;
        let value = match field {
            Field::Pattern => 1.0,
            Field::Real => {
                let v: f64 = parts[2]
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("invalid value {:?}", parts[2])))?;
                if !v.is_finite() {
                    return Err(Error::NonFiniteWeight(line_no));
                }
                v
            }
        };
        triplets.push((row, col, value));
        if symmetry == Symmetry::Symmetric && row != col {
            triplets.push((col, row, value));
        }
        entries += 1;
        if entries > nnz {
            return Err(Error::parse(line_no, format!("more than {nnz} entries")));
        }
    }
    let Some((n_rows, n_cols, nnz)) = size else {
        return Err(Error::parse(header_no, "missing size line"));
    };
    if entries != nnz {
        return Err(Error::parse(
            header_no,
            format!("declared {nnz} entries, found {entries}"),
        ));
    }
    SparseMatrix::from_triplets(n_rows, n_cols, triplets)
}
