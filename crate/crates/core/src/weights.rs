//! sl(2)-weight bookkeeping for the blocks A, B, C.
//!
//! `ad X_0` acts on each chain `X_1..X_n`, `Y_1..Y_m`, `Z_1..Z_p` as the
//! raising operator of an irreducible sl(2)-module, so the cocycles of those
//! blocks are the maximal vectors of `Hom(V ∧ W, U)` and their count is the
//! number of basis maps of weight 0 or 1.

use crate::cohomology::BlockKind;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightModel {
    pub seq_v0: Vec<i64>,
    pub seq_v1: Vec<i64>,
    pub seq_v2: Vec<i64>,
}

/// `(−d+1, −d+3, …, d−1)`.
pub fn chain_weights(d: usize) -> Vec<i64> {
    let d = d as i64;
    (1..=d).map(|t| -d + 2 * t - 1).collect()
}

impl WeightModel {
    pub fn new(n: usize, m: usize, p: usize) -> Self {
        Self {
            seq_v0: chain_weights(n),
            seq_v1: chain_weights(m),
            seq_v2: chain_weights(p),
        }
    }

    pub fn n(&self) -> usize {
        self.seq_v0.len()
    }

    pub fn sequence(&self, degree: u32) -> &[i64] {
        match degree {
            0 => &self.seq_v0,
            1 => &self.seq_v1,
            _ => &self.seq_v2,
        }
    }

    /// Weight of the 1-based `index`-th element of the degree-`degree` chain.
    pub fn weight(&self, degree: u32, index: usize) -> Result<i64> {
        let seq = self.sequence(degree);
        index
            .checked_sub(1)
            .and_then(|t| seq.get(t))
            .copied()
            .ok_or_else(|| {
                Error::IndexOutOfRange(format!(
                    "index {index} outside 1..={} in degree {degree}",
                    seq.len()
                ))
            })
    }
}

fn covered(block: BlockKind) -> Result<()> {
    match block {
        BlockKind::A | BlockKind::B | BlockKind::C => Ok(()),
        other => Err(Error::BlockNotCovered(other)),
    }
}

/// `λ(φ^s_{i,j}) = λ(target_s) − λ(source_i) − λ(source_j)`.
pub fn cochain_weight(block: BlockKind, i: usize, j: usize, s: usize, wm: &WeightModel) -> Result<i64> {
    covered(block)?;
    let (g, h) = block.sources();
    if block == BlockKind::A && i == j {
        return Err(Error::IndexOutOfRange(format!("block A needs i != j, got i = j = {i}")));
    }
    Ok(wm.weight(block.target(), s)? - wm.weight(g, i)? - wm.weight(h, j)?)
}

/// Number of basis maps of the block with weight 1 (n even) or 0 (n odd);
/// skew pairs in A are counted once.
pub fn count_weight_dim(block: BlockKind, n: usize, m: usize, p: usize) -> Result<usize> {
    covered(block)?;
    let wm = WeightModel::new(n, m, p);
    let wanted = if n.is_multiple_of(2) { 1 } else { 0 };
    let (g, h) = block.sources();
    let (lg, lh) = (wm.sequence(g).len(), wm.sequence(h).len());
    let ls = wm.sequence(block.target()).len();
    let mut count = 0;
    for i in 1..=lg {
        let j_start = if block == BlockKind::A { i + 1 } else { 1 };
        for j in j_start..=lh {
            for s in 1..=ls {
                if cochain_weight(block, i, j, s, &wm)? == wanted {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}
