use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complexes::Basis;
use crate::differentials::ChainVector;
use crate::error::{Error, Result};

/// Exact integer matrix in coordinate form, entries sorted by `(col, row)`,
/// with no zeros and no repeats.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Build from unsorted triplets; repeated positions are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, i64)>) -> Result<Self> {
        let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Dimension(format!("entry ({r}, {c}) outside {rows}x{cols}")));
            }
            *acc.entry((c, r)).or_default() += v;
        }
        let entries = acc.into_iter().filter(|&(_, v)| v != 0).map(|((c, r), v)| (r, c, v)).collect();
        Ok(Self { rows, cols, entries })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, 1)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// `(row, col, value)` sorted by column, then row.
    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries
            .binary_search_by(|&(r, c, _)| (c, r).cmp(&(col, row)))
            .map(|i| self.entries[i].2)
            .unwrap_or(0)
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_unstable_by_key(|&(r, c, _)| (c, r));
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn scaled(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zeros(self.rows, self.cols);
        }
        Self {
            entries: self.entries.iter().map(|&(r, c, v)| (r, c, v * k)).collect(),
            ..self.clone()
        }
    }

    /// Column `j` as `(row, value)` pairs.
    pub fn column(&self, j: usize) -> &[(usize, usize, i64)] {
        let lo = self.entries.partition_point(|e| e.1 < j);
        let hi = self.entries.partition_point(|e| e.1 <= j);
        &self.entries[lo..hi]
    }

    /// Row-major copy: for each row, `(col, value)` sorted by column.
    pub fn row_lists(&self) -> Vec<Vec<(usize, i64)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for &(r, c, v) in &self.entries {
            rows[r].push((c, v));
        }
        rows
    }

    /// Exact product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut cols: Vec<Vec<(usize, usize, i64)>> = (0..other.cols)
            .into_par_iter()
            .map(|j| {
                let mut acc: BTreeMap<usize, i128> = BTreeMap::new();
                for &(k, _, b) in other.column(j) {
                    for &(i, _, a) in self.column(k) {
                        *acc.entry(i).or_default() += a as i128 * b as i128;
                    }
                }
                acc.into_iter()
                    .filter(|&(_, v)| v != 0)
                    .map(|(i, v)| (i, j, i64::try_from(v).expect("matrix product overflows i64")))
                    .collect()
            })
            .collect();
        let entries = cols.iter_mut().flat_map(std::mem::take).collect();
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("shape mismatch in subtraction".into()));
        }
        Self::from_triplets(
            self.rows,
            self.cols,
            self.entries
                .iter()
                .copied()
                .chain(other.entries.iter().map(|&(r, c, v)| (r, c, -v))),
        )
    }

    /// `self * x`
    pub fn apply(&self, x: &[i64]) -> Result<Vec<i64>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", x.len(), self.cols)));
        }
        let mut y = vec![0i64; self.rows];
        for &(r, c, v) in &self.entries {
            y[r] += v * x[c];
        }
        Ok(y)
    }

    /// Block matrix `[[a, b], [c, d]]`; blocks must have compatible shapes.
    pub fn block(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::Dimension("incompatible blocks".into()));
        }
        let (r0, c0) = (a.rows, a.cols);
        let t = a
            .entries
            .iter()
            .copied()
            .chain(b.entries.iter().map(|&(r, c, v)| (r, c + c0, v)))
            .chain(c.entries.iter().map(|&(r, c, v)| (r + r0, c, v)))
            .chain(d.entries.iter().map(|&(r, c, v)| (r + r0, c + c0, v)));
        Self::from_triplets(a.rows + c.rows, a.cols + b.cols, t)
    }

    /// Append one column.
    pub fn with_column(&self, col: &[i64]) -> Result<Self> {
        if col.len() != self.rows {
            return Err(Error::Dimension("column length mismatch".into()));
        }
        let mut m = self.clone();
        m.entries
            .extend(col.iter().enumerate().filter(|(_, &v)| v != 0).map(|(r, &v)| (r, self.cols, v)));
        m.cols += 1;
        Ok(m)
    }
}

/// Matrix of `op` from `source` to `target`: column `j` expands
/// `op(source[j])` in the target basis. A term missing from the target is an
/// error.
pub fn assemble<K, K2, F>(source: &Basis<K>, target: &Basis<K2>, op: F) -> Result<SparseIntMatrix>
where
    K: Clone + Eq + std::hash::Hash + Sync + Send,
    K2: Clone + Ord + Eq + std::hash::Hash + std::fmt::Display + Sync + Send,
    F: Fn(&K) -> Result<ChainVector<K2>> + Sync,
{
    let columns: Vec<Result<Vec<(usize, usize, i64)>>> = source
        .classes()
        .par_iter()
        .enumerate()
        .map(|(j, k)| {
            let v = op(k)?;
            v.iter()
                .map(|(key, c)| {
                    target
                        .position(key)
                        .map(|i| (i, j, c))
                        .ok_or_else(|| Error::MissingKey { key: key.to_string() })
                })
                .collect()
        })
        .collect();
    let mut triplets = Vec::new();
    for c in columns {
        triplets.extend(c?);
    }
    SparseIntMatrix::from_triplets(target.len(), source.len(), triplets)
}
