//! MatrixMarket coordinate dumps with exact integer values.

use std::io::{BufRead, Write};

use num_bigint::BigInt;

use super::matrix::SparseIntMatrix;
use crate::error::{Error, Result};

pub fn write_matrix_market(m: &SparseIntMatrix, mut out: impl Write) -> Result<()> {
    writeln!(out, "%%MatrixMarket matrix coordinate integer general")?;
    writeln!(out, "{} {} {}", m.n_rows(), m.n_cols(), m.nnz())?;
    for (r, c, v) in m.entries() {
        writeln!(out, "{} {} {}", r + 1, c + 1, v)?;
    }
    Ok(())
}

pub fn read_matrix_market(input: impl BufRead) -> Result<SparseIntMatrix> {
    let mut lines = input
        .lines()
        .filter(|l| l.as_ref().map_or(true, |l| !l.starts_with('%') && !l.trim().is_empty()));
    let header = lines.next().ok_or_else(|| Error::Parse("missing size line".into()))??;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad size line {header:?}"))))
        .collect::<Result<_>>()?;
    let [n_rows, n_cols, nnz] = dims[..] else {
        return Err(Error::Parse(format!("bad size line {header:?}")));
    };
    let mut entries = Vec::with_capacity(nnz);
    for line in lines {
        let line = line?;
        let mut parts = line.split_whitespace();
        let mut next = || parts.next().ok_or_else(|| Error::Parse(format!("short line {line:?}")));
        let r: usize = next()?.parse().map_err(|_| Error::Parse(format!("bad row in {line:?}")))?;
        let c: usize = next()?.parse().map_err(|_| Error::Parse(format!("bad column in {line:?}")))?;
        let v: BigInt = next()?.parse().map_err(|_| Error::Parse(format!("bad value in {line:?}")))?;
        if r == 0 || c == 0 {
            return Err(Error::Parse("MatrixMarket indices are 1-based".into()));
        }
        entries.push((r - 1, c - 1, v));
    }
    if entries.len() != nnz {
        return Err(Error::Parse(format!("expected {nnz} entries, found {}", entries.len())));
    }
    SparseIntMatrix::from_triplets(n_rows, n_cols, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dump_and_reload() {
        let m = SparseIntMatrix::from_dense(&[vec![1, 0, -3], vec![0, 0, 0], vec![7, 2, 0]]);
        let mut buf = Vec::new();
        write_matrix_market(&m, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("%%MatrixMarket matrix coordinate integer general\n3 3 4\n1 1 1\n"));
        assert_eq!(read_matrix_market(&buf[..]).unwrap(), m);
    }
}
