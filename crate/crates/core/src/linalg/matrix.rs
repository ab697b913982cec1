use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

pub type SparseRow = Vec<(usize, BigInt)>;

/// A sparse integer matrix stored by rows. Rows are sorted by column and
/// never hold explicit zeros or repeated columns.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseIntMatrix {
    n_cols: usize,
    rows: Vec<SparseRow>,
}

impl SparseIntMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self {
            n_cols,
            rows: vec![Vec::new(); n_rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            n_cols: n,
            rows: (0..n).map(|i| vec![(i, BigInt::from(1))]).collect(),
        }
    }

    /// Entries given as `(row, col, value)`. Zero values are dropped; a repeated
    /// position is an error.
    pub fn from_triplets(
        n_rows: usize,
        n_cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, BigInt)>,
    ) -> Result<Self> {
        let mut by_row: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); n_rows];
        for (r, c, v) in entries {
            if r >= n_rows || c >= n_cols {
                return Err(Error::IndexOutOfRange(format!(
                    "entry ({r}, {c}) outside a {n_rows}x{n_cols} matrix"
                )));
            }
            if by_row[r].insert(c, v).is_some() {
                return Err(Error::InvalidParams(format!("duplicate entry at ({r}, {c})")));
            }
        }
        Ok(Self {
            n_cols,
            rows: by_row
                .into_iter()
                .map(|row| row.into_iter().filter(|(_, v)| !v.is_zero()).collect())
                .collect(),
        })
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let n_cols = rows.first().map_or(0, Vec::len);
        Self {
            n_cols,
            rows: rows
                .iter()
                .map(|row| {
                    assert_eq!(row.len(), n_cols, "ragged dense matrix");
                    row.iter()
                        .enumerate()
                        .filter(|(_, &v)| v != 0)
                        .map(|(c, &v)| (c, BigInt::from(v)))
                        .collect()
                })
                .collect(),
        }
    }

    /// Appends a row, combining repeated columns.
    pub fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, BigInt)>) {
        let mut row: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (c, v) in entries {
            assert!(c < self.n_cols, "column {c} out of range");
            *row.entry(c).or_default() += v;
        }
        self.rows.push(row.into_iter().filter(|(_, v)| !v.is_zero()).collect());
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![Vec::new(); self.n_cols];
        for (r, c, v) in self.entries() {
            rows[c].push((r, v.clone()));
        }
        Self {
            n_cols: self.n_rows(),
            rows,
        }
    }

    /// Row `r` of the result is row `row_perm[r]` of `self`; column `c` of the
    /// result is column `col_perm[c]` of `self`.
    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        assert_eq!(row_perm.len(), self.n_rows());
        assert_eq!(col_perm.len(), self.n_cols);
        let mut inverse = vec![0; self.n_cols];
        for (new, &old) in col_perm.iter().enumerate() {
            inverse[old] = new;
        }
        let rows = row_perm
            .iter()
            .map(|&old| {
                let mut row: SparseRow =
                    self.rows[old].iter().map(|(c, v)| (inverse[*c], v.clone())).collect();
                row.sort_by_key(|(c, _)| *c);
                row
            })
            .collect();
        Self {
            n_cols: self.n_cols,
            rows,
        }
    }

    /// Keeps only the listed rows, in the given order.
    pub fn select_rows(&self, keep: &[usize]) -> Self {
        Self {
            n_cols: self.n_cols,
            rows: keep.iter().map(|&r| self.rows[r].clone()).collect(),
        }
    }

    /// Exact product with a sparse rational vector.
    pub fn mul_vec(&self, v: &[(usize, BigRational)]) -> Vec<BigRational> {
        let dense: BTreeMap<usize, &BigRational> = v.iter().map(|(c, x)| (*c, x)).collect();
        self.rows
            .iter()
            .map(|row| {
                let mut acc = BigRational::zero();
                for (c, a) in row {
                    if let Some(x) = dense.get(c) {
                        acc += *x * BigRational::from_integer(a.clone());
                    }
                }
                acc
            })
            .collect()
    }
}
