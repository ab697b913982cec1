use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use super::lie::ColorLieAlgebra;
use super::vector::Vector;
use crate::error::{Error, Result};

/// A subspace of the algebra kept as a reduced row echelon basis.
#[derive(Debug, Clone, Default)]
pub(crate) struct Subspace {
    rows: BTreeMap<usize, Vector>,
}

impl Subspace {
    pub(crate) fn dim(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn vectors(&self) -> impl Iterator<Item = &Vector> {
        self.rows.values()
    }

    fn reduce(&self, v: &Vector) -> Vector {
        let mut v = v.clone();
        for (&pivot, row) in &self.rows {
            let c = v.get(pivot);
            if !c.is_zero() {
                v.add_scaled(row, &-c);
            }
        }
        v
    }

    /// Adds `v`; returns false when it was already in the span.
    pub(crate) fn insert(&mut self, v: &Vector) -> bool {
        let v = self.reduce(v);
        let Some((pivot, lead)) = v.leading() else {
            return false;
        };
        let v = v.scaled(&lead.recip());
        for row in self.rows.values_mut() {
            let c = row.get(pivot);
            if !c.is_zero() {
                row.add_scaled(&v, &-c);
            }
        }
        debug_assert!(v.get(pivot).is_one());
        self.rows.insert(pivot, v);
        true
    }

    pub(crate) fn span<'a>(vectors: impl IntoIterator<Item = &'a Vector>) -> Self {
        let mut s = Self::default();
        for v in vectors {
            s.insert(v);
        }
        s
    }
}

/// Dimensions of `C^0(L_g) ⊇ C^1(L_g) ⊇ …` down to the first zero term,
/// where `C^{k+1}(L_g) = [L_0, C^k(L_g)]`.
pub fn descending_dims(alg: &ColorLieAlgebra, g: u32) -> Result<Vec<usize>> {
    if g >= alg.grading().modulus() {
        return Err(Error::InvalidParams(format!("degree {g} outside the grading group")));
    }
    let l0: Vec<Vector> = alg.component(0).map(Vector::basis).collect();
    let mut current = Subspace::span(&alg.component(g).map(Vector::basis).collect::<Vec<_>>());
    let mut dims = vec![current.dim()];
    // a strictly decreasing chain has at most dim(L) + 1 terms
    for _ in 0..=alg.dim() {
        if current.dim() == 0 {
            return Ok(dims);
        }
        let mut next = Subspace::default();
        for x in &l0 {
            for v in current.vectors() {
                next.insert(&alg.bracket(x, v));
            }
        }
        if next.dim() == current.dim() {
            return Err(Error::NotNilpotent {
                degree: g,
                dim: next.dim(),
            });
        }
        dims.push(next.dim());
        current = next;
    }
    unreachable!("descending sequence longer than dim(L) + 1")
}

/// Color-nilindex: per degree, the first `k` with `C^k(L_g) = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilindexReport {
    pub components: Vec<usize>,
}

impl NilindexReport {
    pub fn p0(&self) -> usize {
        self.components[0]
    }

    pub fn p1(&self) -> usize {
        self.components.get(1).copied().unwrap_or(0)
    }

    pub fn p2(&self) -> usize {
        self.components.get(2).copied().unwrap_or(0)
    }
}

pub fn color_nilindex(alg: &ColorLieAlgebra) -> Result<NilindexReport> {
    let components = alg
        .grading()
        .elements()
        .map(|g| descending_dims(alg, g).map(|dims| dims.len() - 1))
        .collect::<Result<_>>()?;
    Ok(NilindexReport { components })
}

/// Whether `L_g` is an `L_0`-filiform module: the descending sequence of
/// `L_g` loses exactly one dimension per step. Empty components qualify.
pub fn is_filiform_module(alg: &ColorLieAlgebra, g: u32) -> Result<bool> {
    if g == 0 {
        return Err(Error::InvalidParams("filiform module check needs g != 0".into()));
    }
    match descending_dims(alg, g) {
        Ok(dims) => Ok(steps_by_one(&dims)),
        Err(Error::NotNilpotent { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Whether `L_0` is a filiform Lie algebra: nilpotent of maximal nilindex
/// `dim L_0 - 1`.
pub fn is_filiform_lie_algebra(alg: &ColorLieAlgebra) -> Result<bool> {
    match descending_dims(alg, 0) {
        Ok(dims) => Ok(dims[0] >= 2 && dims.len() == dims[0]),
        Err(Error::NotNilpotent { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

fn steps_by_one(dims: &[usize]) -> bool {
    dims.windows(2).all(|w| w[0] == w[1] + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_model;

    #[test]
    fn model_nilindex() {
        let alg = build_model(3, 2, 2).unwrap();
        assert_eq!(descending_dims(&alg, 0).unwrap(), [4, 2, 1, 0]);
        assert_eq!(color_nilindex(&alg).unwrap().components, [3, 2, 2]);
        assert_eq!(color_nilindex(&build_model(1, 1, 1).unwrap()).unwrap().components, [1, 1, 1]);
        assert_eq!(color_nilindex(&build_model(2, 0, 3).unwrap()).unwrap().components, [2, 0, 3]);
    }

    #[test]
    fn model_nilindex_sweep() {
        for n in 1..=6 {
            for m in 0..=4 {
                for p in 0..=4 {
                    let alg = build_model(n, m, p).unwrap();
                    let r = color_nilindex(&alg).unwrap();
                    assert_eq!((r.p0(), r.p1(), r.p2()), (n, m, p));
                    assert!(is_filiform_lie_algebra(&alg).unwrap());
                }
            }
        }
    }

    #[test]
    fn filiform_modules() {
        let alg = build_model(3, 2, 2).unwrap();
        assert!(is_filiform_module(&alg, 1).unwrap());
        assert!(is_filiform_module(&alg, 2).unwrap());
        let x0 = alg.index_of_label("X0").unwrap();
        let y1 = alg.index_of_label("Y1").unwrap();
        let cut = alg.clone().with_constant(x0, y1, Vector::zero()).unwrap();
        // C^1(L_1) collapses to zero in one step from dimension 2
        assert_eq!(descending_dims(&cut, 1).unwrap(), [2, 0]);
        assert!(!is_filiform_module(&cut, 1).unwrap());
        assert!(is_filiform_module(&build_model(3, 0, 2).unwrap(), 1).unwrap());
        assert!(is_filiform_module(&alg, 0).is_err());
    }

    #[test]
    fn non_nilpotent_detected() {
        let alg = build_model(2, 1, 1).unwrap();
        let broken = alg.with_constant(1, 2, Vector::basis(2)).unwrap();
        assert!(matches!(color_nilindex(&broken), Err(Error::NotNilpotent { degree: 0, .. })));
        assert!(!is_filiform_lie_algebra(&broken).unwrap());
    }
}
