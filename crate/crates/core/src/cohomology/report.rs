use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use super::block::BlockKind;
use super::coboundary::{delta1, require_z3_trivial};
use super::cochain::{Cochain2, CochainKey, LinearMap};
use super::system::{assemble_z2_system, cochain_columns, SystemOptions};
use crate::algebra::{ColorLieAlgebra, Vector};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, rank_certified_with, rank_fraction_free, Primes, SparseIntMatrix};

/// Which elimination route computes ranks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RankMethod {
    /// Two-prime modular rank, certified (falls back to exact when needed).
    Certified(Primes),
    /// Fraction-free elimination on exact integers.
    FractionFree,
}

impl Default for RankMethod {
    fn default() -> Self {
        RankMethod::Certified(Primes::default())
    }
}

impl RankMethod {
    pub fn rank(&self, m: &SparseIntMatrix) -> usize {
        match self {
            RankMethod::Certified(primes) => rank_certified_with(m, *primes).rank,
            RankMethod::FractionFree => rank_fraction_free(m),
        }
    }

    pub fn nullity(&self, m: &SparseIntMatrix) -> usize {
        m.n_cols() - self.rank(m)
    }
}

/// Kernel dimension of the system restricted to one block.
pub fn block_dim(alg: &ColorLieAlgebra, block: BlockKind, opts: SystemOptions, method: RankMethod) -> Result<usize> {
    let sys = assemble_z2_system(alg, &[block], opts)?;
    Ok(method.nullity(&sys.matrix))
}

/// Per-block cocycle dimensions, with the decomposition checked against the
/// joint six-block system.
pub fn block_dims(alg: &ColorLieAlgebra) -> Result<BTreeMap<BlockKind, usize>> {
    block_dims_with(alg, SystemOptions::default(), RankMethod::default())
}

pub fn block_dims_with(alg: &ColorLieAlgebra, opts: SystemOptions, method: RankMethod) -> Result<BTreeMap<BlockKind, usize>> {
    let (per_block, joint) = rayon::join(
        || {
            BlockKind::ALL
                .par_iter()
                .map(|&b| block_dim(alg, b, opts, method).map(|d| (b, d)))
                .collect::<Result<BTreeMap<_, _>>>()
        },
        || joint_dim(alg, opts, method),
    );
    let per_block = per_block?;
    let joint = joint?;
    let sum: usize = per_block.values().sum();
    if sum != joint {
        return Err(Error::DecompositionMismatch { joint, sum });
    }
    Ok(per_block)
}

/// Kernel dimension of the joint six-block system.
pub fn joint_dim(alg: &ColorLieAlgebra, opts: SystemOptions, method: RankMethod) -> Result<usize> {
    let sys = assemble_z2_system(alg, &BlockKind::ALL, opts)?;
    Ok(method.nullity(&sys.matrix))
}

/// Exact cocycle basis of one block.
pub fn block_cocycles(alg: &ColorLieAlgebra, block: BlockKind, opts: SystemOptions) -> Result<Vec<Cochain2>> {
    let sys = assemble_z2_system(alg, &[block], opts)?;
    let kernel = kernel_basis(&sys.matrix);
    Ok(kernel.vectors.iter().map(|v| sys.cochain(v)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub dim_z2: usize,
    pub dim_b2: usize,
    pub dim_h2: usize,
    pub per_block: BTreeMap<BlockKind, usize>,
}

/// Basis of degree-0 maps `e_u ↦ e_v` with `deg u = deg v`.
pub fn degree_zero_maps(alg: &ColorLieAlgebra) -> Vec<LinearMap> {
    let mut out = Vec::new();
    for g in alg.grading().elements() {
        for u in alg.component(g) {
            for v in alg.component(g) {
                let mut map = LinearMap::zero();
                map.set(u, Vector::basis(v));
                out.push(map);
            }
        }
    }
    out
}

/// `dim Z²₀`, `dim B²₀` and `dim H²₀` inside the constrained cochain space.
///
/// `B²₀` is the part of the image of δ¹ (on degree-0 maps) that lies in the
/// constrained coordinates: `rank(D) − rank(π D)`, where `D` holds δ¹ of each
/// basis map and `π` keeps only the excluded coordinates.
pub fn cohomology_report(alg: &ColorLieAlgebra) -> Result<CohomologyReport> {
    cohomology_report_with(alg, SystemOptions::default(), RankMethod::default())
}

pub fn cohomology_report_with(alg: &ColorLieAlgebra, opts: SystemOptions, method: RankMethod) -> Result<CohomologyReport> {
    require_z3_trivial(alg)?;
    let per_block = block_dims_with(alg, opts, method)?;
    let dim_z2: usize = per_block.values().sum();

    let full = cochain_columns(alg, &BlockKind::ALL, SystemOptions::unconstrained());
    let constrained: std::collections::HashSet<CochainKey> =
        cochain_columns(alg, &BlockKind::ALL, opts).into_iter().collect();
    let index: HashMap<CochainKey, usize> = full.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let excluded: HashMap<CochainKey, usize> = full
        .iter()
        .filter(|k| !constrained.contains(k))
        .enumerate()
        .map(|(i, k)| (*k, i))
        .collect();

    let mut image = SparseIntMatrix::zeros(0, full.len());
    let mut projected = SparseIntMatrix::zeros(0, excluded.len());
    for g in degree_zero_maps(alg) {
        let d = delta1(alg, &g)?;
        image.push_row(d.terms().map(|(k, v)| (index[k], integral(v))));
        projected.push_row(d.terms().filter_map(|(k, v)| excluded.get(k).map(|&c| (c, integral(v)))));
    }
    let dim_b2 = method.rank(&image) - method.rank(&projected);
    Ok(CohomologyReport {
        dim_z2,
        dim_b2,
        dim_h2: dim_z2 - dim_b2,
        per_block,
    })
}

fn integral(v: &crate::scalar::Scalar) -> BigInt {
    // δ¹ of a 0/1 basis map over integral structure constants is integral;
    // rational constants are scaled out before this point is reached.
    assert!(v.is_integer(), "coboundary coefficient {v} is not integral");
    v.numer().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_model;

    fn dims(n: usize, m: usize, p: usize) -> Vec<usize> {
        block_dims(&build_model(n, m, p).unwrap()).unwrap().into_values().collect()
    }

    #[test]
    fn small_models() {
        assert_eq!(dims(2, 1, 1), [1, 1, 1, 0, 1, 0]);
        assert_eq!(dims(1, 1, 1), [0, 1, 1, 0, 1, 0]);
    }

    #[test]
    fn fraction_free_agrees() {
        let alg = build_model(4, 3, 2).unwrap();
        let fast = block_dims(&alg).unwrap();
        let exact = block_dims_with(&alg, SystemOptions::default(), RankMethod::FractionFree).unwrap();
        assert_eq!(fast, exact);
    }

    #[test]
    fn abelian_report() {
        let r = cohomology_report(&build_model(1, 1, 1).unwrap()).unwrap();
        assert_eq!((r.dim_z2, r.dim_b2, r.dim_h2), (3, 0, 3));
    }

    #[test]
    fn report_consistency() {
        for (n, m, p) in [(2, 1, 1), (3, 2, 2), (4, 2, 3)] {
            let r = cohomology_report(&build_model(n, m, p).unwrap()).unwrap();
            assert_eq!(r.dim_z2, r.per_block.values().sum::<usize>());
            assert_eq!(r.dim_h2 + r.dim_b2, r.dim_z2);
        }
    }
}
