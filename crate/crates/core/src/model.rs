//! Zero-matrix model of Boolean functions with few zeros.
//!
//! A function `f` of `n` variables with `k` zeros is stored as the `k x n`
//! matrix whose rows are exactly its zeros; `f` is the conjunction over the
//! rows of the clauses excluding each zero. Rows are kept in lexicographic
//! order so that two functions are equal iff their matrices are equal.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::bits::BitVector;
use crate::error::{Error, Result};

/// Hard ceiling on the number of zeros: columns are packed into one `u64`.
pub const MAX_ZEROS: usize = 63;

/// Size limits applied at construction time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_vars: usize,
    pub max_zeros: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vars: 63,
            max_zeros: MAX_ZEROS,
        }
    }
}

impl Limits {
    /// Default zero limit with room for `max_vars` columns.
    pub fn wide(max_vars: usize) -> Self {
        Limits {
            max_vars,
            ..Limits::default()
        }
    }
}

/// A test: a 0/1 matrix with pairwise distinct rows, sorted lexicographically.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZeroMatrix {
    n: usize,
    rows: Vec<BitVector>,
    /// Column `j` packed with row `i` in bit `i`.
    columns: Vec<u64>,
}

impl ZeroMatrix {
    pub fn new(rows: Vec<BitVector>) -> Result<Self> {
        Self::with_limits(rows, Limits::default())
    }

    pub fn with_limits(mut rows: Vec<BitVector>, limits: Limits) -> Result<Self> {
        let k = rows.len();
        if k == 0 {
            return Err(Error::EmptyMatrix);
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        for r in &rows {
            if r.len() != n {
                return Err(Error::LengthMismatch {
                    left: n,
                    right: r.len(),
                });
            }
        }
        let zero_limit = limits.max_zeros.min(MAX_ZEROS);
        if k > zero_limit {
            return Err(Error::LimitExceeded {
                what: "k",
                value: k,
                limit: zero_limit,
            });
        }
        if n > limits.max_vars {
            return Err(Error::LimitExceeded {
                what: "n",
                value: n,
                limit: limits.max_vars,
            });
        }
        let mut seen: HashMap<&BitVector, usize> = HashMap::with_capacity(k);
        for (i, r) in rows.iter().enumerate() {
            if let Some(&first) = seen.get(r) {
                return Err(Error::DuplicateRow {
                    first: first + 1,
                    second: i + 1,
                });
            }
            seen.insert(r, i);
        }
        rows.sort();
        let mut columns = vec![0u64; n];
        for (i, r) in rows.iter().enumerate() {
            for (j, col) in columns.iter_mut().enumerate() {
                if r.get(j) {
                    *col |= 1 << i;
                }
            }
        }
        Ok(ZeroMatrix { n, rows, columns })
    }

    /// Builds the matrix from packed columns (bit `i` of a column is row `i`).
    pub fn from_columns(k: usize, columns: &[u64], limits: Limits) -> Result<Self> {
        if k == 0 || k > MAX_ZEROS {
            return Err(Error::LimitExceeded {
                what: "k",
                value: k,
                limit: MAX_ZEROS,
            });
        }
        let rows = (0..k)
            .map(|i| BitVector::from_bools(columns.iter().map(|c| c >> i & 1 == 1)))
            .collect();
        Self::with_limits(rows, limits)
    }

    /// Builds the matrix from points packed as integers (bit `j` is coordinate `j`).
    pub fn from_points(n: usize, points: &[u64]) -> Result<Self> {
        Self::new(points.iter().map(|&p| BitVector::from_u64(p, n)).collect())
    }

    /// Parses the zero-matrix text format: one row of `0`/`1` characters per
    /// line; blank lines and lines starting with `#` are ignored.
    pub fn parse_text(text: &str, limits: Limits) -> Result<Self> {
        let mut rows = Vec::new();
        let mut lines = Vec::new();
        let mut seen: HashMap<BitVector, usize> = HashMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row: BitVector = line.parse().map_err(|e| match e {
                Error::MalformedRow { reason, .. } => Error::MalformedRow {
                    line: line_no,
                    reason,
                },
                other => other,
            })?;
            if let Some(first) = rows.first().map(BitVector::len) {
                if row.len() != first {
                    return Err(Error::MalformedRow {
                        line: line_no,
                        reason: format!("expected {first} columns, found {}", row.len()),
                    });
                }
            }
            if let Some(&first) = seen.get(&row) {
                return Err(Error::DuplicateRow {
                    first,
                    second: line_no,
                });
            }
            seen.insert(row.clone(), line_no);
            rows.push(row);
            lines.push(line_no);
        }
        Self::with_limits(rows, limits)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows.len() * (self.n + 1));
        for r in &self.rows {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }

    /// Number of rows (zeros).
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns (variables).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.rows[i]
    }

    /// Packed columns; bit `i` of column `j` is entry `(i, j)`.
    pub fn packed_columns(&self) -> &[u64] {
        &self.columns
    }

    pub fn packed_column(&self, j: usize) -> u64 {
        self.columns[j]
    }

    pub fn column(&self, j: usize) -> Result<BitVector> {
        if j >= self.n {
            return Err(Error::IndexOutOfRange {
                index: j,
                size: self.n,
            });
        }
        Ok(BitVector::from_u64(self.columns[j], self.k()))
    }

    /// Mask with one bit per row.
    pub fn row_mask(&self) -> u64 {
        (1u64 << self.k()) - 1
    }

    /// Rows as packed points, available when `n <= 64`.
    pub fn points(&self) -> Option<Vec<u64>> {
        self.rows.iter().map(BitVector::as_u64).collect()
    }
}

impl fmt::Debug for ZeroMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "ZeroMatrix[{}]", rows.join(","))
    }
}

/// A Boolean function given by its zero matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FewZeroFunction {
    matrix: ZeroMatrix,
    /// Zeros as packed points sorted numerically; empty when `n > 63`.
    zero_points: Vec<u64>,
}

impl FewZeroFunction {
    pub fn new(matrix: ZeroMatrix) -> Self {
        let mut zero_points = matrix.points().unwrap_or_default();
        zero_points.sort_unstable();
        FewZeroFunction {
            matrix,
            zero_points,
        }
    }

    pub fn from_rows(rows: &[&str]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.parse())
            .collect::<Result<Vec<BitVector>>>()?;
        Ok(Self::new(ZeroMatrix::new(rows)?))
    }

    pub fn from_points(n: usize, points: &[u64]) -> Result<Self> {
        Ok(Self::new(ZeroMatrix::from_points(n, points)?))
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        Ok(Self::new(ZeroMatrix::parse_text(text, Limits::default())?))
    }

    pub fn matrix(&self) -> &ZeroMatrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn k(&self) -> usize {
        self.matrix.k()
    }

    /// Zeros packed as points (bit `j` is coordinate `j`), sorted numerically.
    ///
    /// Fails when `n` does not fit one machine word.
    pub fn zero_points(&self) -> Result<&[u64]> {
        self.require_word_points()?;
        Ok(&self.zero_points)
    }

    pub(crate) fn require_word_points(&self) -> Result<()> {
        if self.n() > 63 {
            return Err(Error::LimitExceeded {
                what: "n",
                value: self.n(),
                limit: 63,
            });
        }
        Ok(())
    }

    /// `false` exactly on the rows of the zero matrix.
    pub fn evaluate(&self, p: &BitVector) -> Result<bool> {
        if p.len() != self.n() {
            return Err(Error::LengthMismatch {
                left: self.n(),
                right: p.len(),
            });
        }
        Ok(self.matrix.rows.binary_search(p).is_err())
    }

    /// Fast path for packed points; requires `n <= 63`.
    pub fn evaluate_point(&self, p: u64) -> bool {
        debug_assert!(self.n() <= 63);
        self.zero_points.binary_search(&p).is_err()
    }

    /// `(E(t), Z(t))`: rows with a 1 in column `t`, and the rest (0-based).
    pub fn column_sets(&self, t: usize) -> Result<(Vec<usize>, Vec<usize>)> {
        let col = self.matrix.column(t)?;
        let (ones, zeros): (Vec<usize>, Vec<usize>) = (0..self.k()).partition(|&i| col.get(i));
        Ok((ones, zeros))
    }
}

impl fmt::Debug for FewZeroFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FewZeroFunction({:?})", self.matrix)
    }
}

/// Structural class flags of a zero matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassMembership {
    pub has_constant_column: bool,
    pub rows_distinct: bool,
    pub has_adjacent_zeros: bool,
    pub is_proper: bool,
    pub is_reduced: bool,
    pub is_complete: bool,
    pub min_column_weight: usize,
    pub ones_le_zeros_all_columns: bool,
}

impl ClassMembership {
    /// Membership in the class of reduced functions with pairwise
    /// non-adjacent zeros and every column weight at least `lambda`.
    pub fn in_phi(&self, lambda: usize) -> bool {
        self.is_reduced && !self.has_adjacent_zeros && self.min_column_weight >= lambda
    }
}

pub fn evaluate(f: &FewZeroFunction, p: &BitVector) -> Result<bool> {
    f.evaluate(p)
}

pub fn column_sets(f: &FewZeroFunction, t: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    f.column_sets(t)
}

pub(crate) fn column_weight(col: u64, k: usize) -> usize {
    let ones = col.count_ones() as usize;
    ones.min(k - ones)
}

/// Any two rows at Hamming distance 1.
pub fn has_adjacent_rows(m: &ZeroMatrix) -> bool {
    let rows = m.rows();
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            if rows[i].hamming_distance(&rows[j]).unwrap_or(0) == 1 {
                return true;
            }
        }
    }
    false
}

pub fn classify_matrix(f: &FewZeroFunction) -> ClassMembership {
    let m = f.matrix();
    let k = m.k();
    let mask = m.row_mask();
    let cols = m.packed_columns();

    let has_constant_column = cols.iter().any(|&c| c == 0 || c == mask);

    let mut first_seen: HashMap<u64, usize> = HashMap::new();
    let mut contiguous = true;
    let mut duplicates = false;
    for (j, &c) in cols.iter().enumerate() {
        match first_seen.get(&c) {
            Some(_) => {
                duplicates = true;
                if cols[j - 1] != c {
                    contiguous = false;
                }
            }
            None => {
                first_seen.insert(c, j);
            }
        }
    }
    let complementary_pair = cols
        .iter()
        .any(|&c| c != 0 && c != mask && first_seen.contains_key(&(c ^ mask)));

    let is_proper = !has_constant_column && contiguous && !complementary_pair;
    let is_reduced = is_proper && !duplicates;
    let is_complete = is_reduced && k < 64 && m.n() as u64 == (1u64 << (k - 1)) - 1;

    ClassMembership {
        has_constant_column,
        rows_distinct: true,
        has_adjacent_zeros: has_adjacent_rows(m),
        is_proper,
        is_reduced,
        is_complete,
        min_column_weight: cols.iter().map(|&c| column_weight(c, k)).min().unwrap_or(0),
        ones_le_zeros_all_columns: cols.iter().all(|&c| 2 * c.count_ones() as usize <= k),
    }
}
