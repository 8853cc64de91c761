// SPDX-License-Identifier: Apache-2.0

//! Compressed sparse row matrices and score vectors.
//!
//! All vectors are row vectors: `vec_mat` computes `v M` (the left product
//! used by endorsement rankings) and `mat_vec` computes `M vᵀ` (the right
//! product used by "better-than" rankings). Both products run sequentially
//! in storage order, so repeated evaluations are bit-identical.

use std::ops::{Deref, DerefMut};

use crate::error::{Error, Result};

/// Real matrix in CSR form.
///
/// Column indices strictly increase within each row and explicit zeros are
/// dropped on construction. Negative entries are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    n_rows: usize,
    n_cols: usize,
    row_offsets: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<f64>,
}

/// How [`SparseMatrix::row_normalize`] treats rows with zero ℓ₁ norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormalizeMode {
    /// Null rows are an error.
    Strict,
    /// Null rows become the uniform distribution `1/n`.
    #[default]
    DanglingUniform,
    /// Null rows stay null; the result is substochastic.
    DanglingZero,
}

impl SparseMatrix {
    /// Builds a matrix from `(row, col, value)` triplets in any order.
    ///
    /// Duplicate coordinates are summed; entries that end up zero are dropped.
    pub fn from_triplets<I>(n_rows: usize, n_cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut entries: Vec<(usize, usize, f64)> = Vec::new();
        for (row, col, value) in triplets {
            if row >= n_rows || col >= n_cols {
                return Err(Error::IndexOutOfBounds {
                    row,
                    col,
                    n_rows,
                    n_cols,
                });
            }
            if !value.is_finite() {
                return Err(Error::NonFiniteEntry { row, col });
            }
            entries.push((row, col, value));
        }
        // Stable sort keeps duplicate summation in input order.
        entries.sort_by_key(|&(r, c, _)| (r, c));

        let mut row_offsets = vec![0usize; n_rows + 1];
        let mut col_indices = Vec::with_capacity(entries.len());
        let mut values: Vec<f64> = Vec::with_capacity(entries.len());
        let mut last: Option<(usize, usize)> = None;
        let mut rows_of: Vec<usize> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            if last == Some((r, c)) {
                *values.last_mut().expect("duplicate follows an entry") += v;
            } else {
                col_indices.push(c);
                values.push(v);
                rows_of.push(r);
                last = Some((r, c));
            }
        }
        let mut kept_cols = Vec::with_capacity(col_indices.len());
        let mut kept_vals = Vec::with_capacity(values.len());
        for ((r, c), v) in rows_of.into_iter().zip(col_indices).zip(values) {
            if v != 0.0 {
                if !v.is_finite() {
                    return Err(Error::NonFiniteEntry { row: r, col: c });
                }
                row_offsets[r + 1] += 1;
                kept_cols.push(c);
                kept_vals.push(v);
            }
        }
        for i in 0..n_rows {
            row_offsets[i + 1] += row_offsets[i];
        }
        Ok(Self {
            n_rows,
            n_cols,
            row_offsets,
            col_indices: kept_cols,
            values: kept_vals,
        })
    }

    /// Validates raw CSR arrays. Stored zeros are removed.
    pub fn from_csr(
        n_rows: usize,
        n_cols: usize,
        row_offsets: Vec<usize>,
        col_indices: Vec<usize>,
        values: Vec<f64>,
    ) -> Result<Self> {
        if row_offsets.len() != n_rows + 1 {
            return Err(Error::MalformedCsr(format!(
                "row_offsets has length {}, expected {}",
                row_offsets.len(),
                n_rows + 1
            )));
        }
        if col_indices.len() != values.len() {
            return Err(Error::MalformedCsr(
                "col_indices and values differ in length".into(),
            ));
        }
        if row_offsets[0] != 0 || row_offsets[n_rows] != values.len() {
            return Err(Error::MalformedCsr(
                "row_offsets must start at 0 and end at the number of values".into(),
            ));
        }
        let mut triplets = Vec::with_capacity(values.len());
        for row in 0..n_rows {
            let (start, end) = (row_offsets[row], row_offsets[row + 1]);
            if start > end {
                return Err(Error::MalformedCsr(format!(
                    "row_offsets decreases at row {row}"
                )));
            }
            for k in start..end {
                if k > start && col_indices[k] <= col_indices[k - 1] {
                    return Err(Error::MalformedCsr(format!(
                        "column indices not strictly increasing in row {row}"
                    )));
                }
                triplets.push((row, col_indices[k], values[k]));
            }
        }
        Self::from_triplets(n_rows, n_cols, triplets)
    }

    /// Builds a matrix from dense rows (zeros are not stored).
    pub fn from_dense_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut triplets = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n_cols {
                return Err(Error::DimensionMismatch {
                    expected: n_cols,
                    found: row.len(),
                });
            }
            triplets.extend(row.iter().enumerate().map(|(j, &v)| (i, j, v)));
        }
        Self::from_triplets(n_rows, n_cols, triplets)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n_rows: n,
            n_cols: n,
            row_offsets: (0..=n).collect(),
            col_indices: (0..n).collect(),
            values: vec![1.0; n],
        }
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_rows,
            n_cols,
            row_offsets: vec![0; n_rows + 1],
            col_indices: Vec::new(),
            values: Vec::new(),
        }
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_square(&self) -> bool {
        self.n_rows == self.n_cols
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn col_indices(&self) -> &[usize] {
        &self.col_indices
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Stored `(col, value)` pairs of one row.
    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.row_offsets[i]..self.row_offsets[i + 1];
        self.col_indices[range.clone()]
            .iter()
            .copied()
            .zip(self.values[range].iter().copied())
    }

    /// All stored `(row, col, value)` triplets in storage order.
    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n_rows).flat_map(move |i| self.row(i).map(move |(j, v)| (i, j, v)))
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let range = self.row_offsets[i]..self.row_offsets[i + 1];
        match self.col_indices[range.clone()].binary_search(&j) {
            Ok(k) => self.values[range.start + k],
            Err(_) => 0.0,
        }
    }

    pub fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NotSquare {
                rows: self.n_rows,
                cols: self.n_cols,
            })
        }
    }

    /// First negative entry, if any.
    pub fn negative_entry(&self) -> Option<(usize, usize)> {
        self.triplets().find(|t| t.2 < 0.0).map(|(i, j, _)| (i, j))
    }

    pub fn require_nonnegative(&self) -> Result<()> {
        match self.negative_entry() {
            Some((row, col)) => Err(Error::NegativeEntry { row, col }),
            None => Ok(()),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.negative_entry().is_none()
    }

    /// Plain (signed) row sums.
    pub fn row_sums(&self) -> Vec<f64> {
        (0..self.n_rows)
            .map(|i| self.row(i).map(|e| e.1).sum())
            .collect()
    }

    /// Largest ℓ₁ row norm, i.e. the ∞-norm of the matrix.
    pub fn max_abs_row_sum(&self) -> f64 {
        (0..self.n_rows)
            .map(|i| self.row(i).map(|e| e.1.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn transpose(&self) -> Self {
        let mut counts = vec![0usize; self.n_cols + 1];
        for &j in &self.col_indices {
            counts[j + 1] += 1;
        }
        for j in 0..self.n_cols {
            counts[j + 1] += counts[j];
        }
        let mut next = counts.clone();
        let mut col_indices = vec![0usize; self.nnz()];
        let mut values = vec![0.0; self.nnz()];
        for (i, j, v) in self.triplets() {
            let slot = next[j];
            col_indices[slot] = i;
            values[slot] = v;
            next[j] += 1;
        }
        Self {
            n_rows: self.n_cols,
            n_cols: self.n_rows,
            row_offsets: counts,
            col_indices,
            values,
        }
    }

    /// `factor · M`. A zero factor yields the empty matrix.
    pub fn scale(&self, factor: f64) -> Self {
        if factor == 0.0 {
            return Self::zeros(self.n_rows, self.n_cols);
        }
        let mut out = self.clone();
        out.values.iter_mut().for_each(|v| *v *= factor);
        out
    }

    /// Row-stochastic normalization: every row divided by its ℓ₁ norm.
    pub fn row_normalize(&self, mode: NormalizeMode) -> Result<Self> {
        self.require_nonnegative()?;
        let n = self.n_cols;
        let mut triplets = Vec::with_capacity(self.nnz());
        for i in 0..self.n_rows {
            let sum: f64 = self.row(i).map(|e| e.1).sum();
            if sum > 0.0 {
                triplets.extend(self.row(i).map(|(j, v)| (i, j, v / sum)));
                continue;
            }
            match mode {
                NormalizeMode::Strict => return Err(Error::NullRow(i)),
                NormalizeMode::DanglingUniform => {
                    let w = 1.0 / n as f64;
                    triplets.extend((0..n).map(|j| (i, j, w)));
                }
                NormalizeMode::DanglingZero => {}
            }
        }
        Self::from_triplets(self.n_rows, self.n_cols, triplets)
    }

    /// Left product `v M`.
    pub fn vec_mat(&self, v: &[f64]) -> Result<ScoreVector> {
        let mut out = vec![0.0; self.n_cols];
        self.vec_mat_into(v, &mut out)?;
        Ok(ScoreVector::from(out))
    }

    /// Right product `M vᵀ`.
    pub fn mat_vec(&self, v: &[f64]) -> Result<ScoreVector> {
        let mut out = vec![0.0; self.n_rows];
        self.mat_vec_into(v, &mut out)?;
        Ok(ScoreVector::from(out))
    }

    /// `out = v M`, scattering rows in increasing row order.
    pub fn vec_mat_into(&self, v: &[f64], out: &mut [f64]) -> Result<()> {
        check_len(self.n_rows, v.len())?;
        check_len(self.n_cols, out.len())?;
        out.iter_mut().for_each(|x| *x = 0.0);
        for (i, &vi) in v.iter().enumerate() {
            if vi == 0.0 {
                continue;
            }
            for (j, m) in self.row(i) {
                out[j] += vi * m;
            }
        }
        Ok(())
    }

    /// `out = M vᵀ`, each entry accumulated in storage order.
    pub fn mat_vec_into(&self, v: &[f64], out: &mut [f64]) -> Result<()> {
        check_len(self.n_cols, v.len())?;
        check_len(self.n_rows, out.len())?;
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.row(i).map(|(j, m)| m * v[j]).sum();
        }
        Ok(())
    }

    /// Checks row sums lie in `[0, 1 + eps]` with nonnegative entries.
    pub fn require_substochastic(&self, eps: f64) -> Result<()> {
        self.require_square()?;
        self.require_nonnegative()?;
        for (row, sum) in self.row_sums().into_iter().enumerate() {
            if sum > 1.0 + eps {
                return Err(Error::NotStochastic { row, sum });
            }
        }
        Ok(())
    }

    /// Checks every row sums to 1 within `eps` with nonnegative entries.
    pub fn require_stochastic(&self, eps: f64) -> Result<()> {
        self.require_square()?;
        self.require_nonnegative()?;
        for (row, sum) in self.row_sums().into_iter().enumerate() {
            if (sum - 1.0).abs() > eps {
                return Err(Error::NotStochastic { row, sum });
            }
        }
        Ok(())
    }

    /// Dense row-major copy.
    pub fn to_dense_rows(&self) -> Vec<Vec<f64>> {
        let mut rows = vec![vec![0.0; self.n_cols]; self.n_rows];
        for (i, j, v) in self.triplets() {
            rows[i][j] = v;
        }
        rows
    }
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// Node-indexed real scores (a row vector).
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScoreVector(Vec<f64>);

impl ScoreVector {
    /// Checked constructor: every entry must be finite.
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if let Some(i) = entries.iter().position(|x| !x.is_finite()) {
            return Err(Error::NonFiniteEntry { row: 0, col: i });
        }
        Ok(Self(entries))
    }

    /// The all-ones vector 𝟙.
    pub fn ones(n: usize) -> Self {
        Self(vec![1.0; n])
    }

    pub fn uniform(n: usize) -> Self {
        Self(vec![1.0 / n as f64; n])
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn l1_norm(&self) -> f64 {
        l1_norm(&self.0)
    }

    pub fn l2_norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    /// Divides by the ℓ₁ norm; a zero vector is returned unchanged.
    pub fn normalized_l1(mut self) -> Self {
        let norm = self.l1_norm();
        if norm > 0.0 {
            self.0.iter_mut().for_each(|x| *x /= norm);
        }
        self
    }

    pub fn scaled(mut self, factor: f64) -> Self {
        self.0.iter_mut().for_each(|x| *x *= factor);
        self
    }

    /// True when nonnegative and summing to 1 within `eps`.
    pub fn is_distribution(&self, eps: f64) -> bool {
        self.0.iter().all(|&x| x >= 0.0) && (self.sum() - 1.0).abs() <= eps
    }
}

impl From<Vec<f64>> for ScoreVector {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

impl Deref for ScoreVector {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for ScoreVector {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

pub fn l1_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x.abs()).sum()
}

pub fn l1_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum()
}

pub fn linf_distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// Damping factor α plus the dominant eigenvalue λ₀ it is measured against.
///
/// `lambda0 = None` means "estimate it"; pin it to 1 for stochastic matrices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampingParams {
    pub alpha: f64,
    pub lambda0: Option<f64>,
    pub tol: f64,
    pub max_iter: usize,
}

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 100_000;

impl DampingParams {
    pub fn new(alpha: f64) -> Self {
        Self {
            alpha,
            lambda0: None,
            tol: DEFAULT_TOL,
            max_iter: DEFAULT_MAX_ITER,
        }
    }

    pub fn with_lambda0(mut self, lambda0: f64) -> Self {
        self.lambda0 = Some(lambda0);
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_max_iter(mut self, max_iter: usize) -> Self {
        self.max_iter = max_iter;
        self
    }

    /// β = α/λ₀.
    pub fn beta(&self, lambda0: f64) -> f64 {
        self.alpha / lambda0
    }
}
