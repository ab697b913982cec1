//! Cocycle basis export:
//! `{ "block": "A", "n": 2, "m": 1, "p": 1, "dim": 1,
//!    "basis": [[{"i": 1, "j": 2, "s": 2, "coeff": "1"}]] }`

use serde::{Deserialize, Serialize};

use super::block::BlockKind;
use super::cochain::{Cochain2, CochainKey};
use crate::algebra::ColorLieAlgebra;
use crate::error::{Error, Result};
use crate::scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExportTerm {
    pub i: usize,
    pub j: usize,
    pub s: usize,
    pub coeff: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleExport {
    pub block: BlockKind,
    pub n: usize,
    pub m: usize,
    pub p: usize,
    pub dim: usize,
    pub basis: Vec<Vec<ExportTerm>>,
}

/// `(n, m, p)` read off the component dimensions of a ℤ₃-graded algebra.
pub fn shape(alg: &ColorLieAlgebra) -> (usize, usize, usize) {
    let d = alg.dims();
    (d[0].saturating_sub(1), d[1], d[2])
}

impl CocycleExport {
    pub fn new(alg: &ColorLieAlgebra, block: BlockKind, cocycles: &[Cochain2]) -> Self {
        let (n, m, p) = shape(alg);
        let basis = cocycles
            .iter()
            .map(|c| {
                c.terms()
                    .map(|(k, v)| {
                        let (i, j, s) = k.local(alg);
                        ExportTerm { i, j, s, coeff: scalar::to_string(v) }
                    })
                    .collect()
            })
            .collect();
        Self { block, n, m, p, dim: cocycles.len(), basis }
    }

    /// Rebuilds basis vector `index` as a cochain on `alg`.
    pub fn cochain(&self, alg: &ColorLieAlgebra, index: usize) -> Result<Cochain2> {
        let terms = self.basis.get(index).ok_or_else(|| {
            Error::IndexOutOfRange(format!("basis vector {index} of {}", self.basis.len()))
        })?;
        let mut out = Cochain2::zero();
        for t in terms {
            let key = CochainKey::from_local(alg, self.block, t.i, t.j, t.s)?;
            out.add_term(key, &scalar::parse(&t.coeff)?);
        }
        Ok(out)
    }
}

/// Explicit cochain file: `{ "terms": [ {"block": "D", "i": 1, "j": 2, "s": 1, "coeff": "1"} ] }`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainFile {
    pub terms: Vec<BlockTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockTerm {
    pub block: BlockKind,
    pub i: usize,
    pub j: usize,
    pub s: usize,
    pub coeff: String,
}

impl CochainFile {
    pub fn from_cochain(alg: &ColorLieAlgebra, psi: &Cochain2) -> Result<Self> {
        let terms = psi
            .terms()
            .map(|(k, v)| {
                let block = k.block(alg).ok_or_else(|| {
                    Error::Unsupported(format!("coordinate {k:?} lies in no degree-0 block"))
                })?;
                let (i, j, s) = k.local(alg);
                Ok(BlockTerm { block, i, j, s, coeff: scalar::to_string(v) })
            })
            .collect::<Result<_>>()?;
        Ok(Self { terms })
    }

    pub fn cochain(&self, alg: &ColorLieAlgebra) -> Result<Cochain2> {
        let mut out = Cochain2::zero();
        for t in &self.terms {
            let key = CochainKey::from_local(alg, t.block, t.i, t.j, t.s)?;
            out.add_term(key, &scalar::parse(&t.coeff)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_model;
    use crate::cohomology::{block_cocycles, SystemOptions};

    #[test]
    fn export_block_a() {
        let alg = build_model(2, 1, 1).unwrap();
        let cocycles = block_cocycles(&alg, BlockKind::A, SystemOptions::default()).unwrap();
        let export = CocycleExport::new(&alg, BlockKind::A, &cocycles);
        assert_eq!(export.dim, 1);
        assert_eq!(
            export.basis,
            vec![vec![ExportTerm { i: 1, j: 2, s: 2, coeff: "1".into() }]]
        );
        let json = serde_json::to_value(&export).unwrap();
        assert_eq!(json["block"], "A");
        assert_eq!(export.cochain(&alg, 0).unwrap(), cocycles[0]);
        assert!(export.cochain(&alg, 1).is_err());
    }

    #[test]
    fn cochain_file_round_trip() {
        let alg = build_model(3, 2, 1).unwrap();
        let key = CochainKey::from_local(&alg, BlockKind::D, 1, 2, 1).unwrap();
        let psi = Cochain2::from_terms([(key, scalar::parse("-3/2").unwrap())]);
        let file = CochainFile::from_cochain(&alg, &psi).unwrap();
        let text = serde_json::to_string(&file).unwrap();
        let back: CochainFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.cochain(&alg).unwrap(), psi);
    }
}
