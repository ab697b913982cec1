use std::collections::BTreeMap;

use num_traits::Zero;

use super::block::BlockKind;
use crate::algebra::{BasisElement, ColorLieAlgebra, Vector};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Coordinate of the basis map sending `(e_first, e_second) ↦ e_target`
/// (and `(e_second, e_first) ↦ -e_target`). Always `first < second`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CochainKey {
    pub first: usize,
    pub second: usize,
    pub target: usize,
}

impl CochainKey {
    pub fn new(first: usize, second: usize, target: usize) -> Self {
        assert!(first < second, "cochain keys are stored with first < second");
        Self { first, second, target }
    }

    pub fn block(&self, alg: &ColorLieAlgebra) -> Option<BlockKind> {
        BlockKind::from_sources(alg.degree(self.first), alg.degree(self.second))
    }

    /// Family-local indices `(i, j, s)` of the two sources and the target.
    pub fn local(&self, alg: &ColorLieAlgebra) -> (usize, usize, usize) {
        let b = alg.basis();
        (b[self.first].index, b[self.second].index, b[self.target].index)
    }

    /// Key for `φ^s_{i,j}` in `block`, with family-local indices.
    pub fn from_local(alg: &ColorLieAlgebra, block: BlockKind, i: usize, j: usize, s: usize) -> Result<Self> {
        let (g, h) = block.sources();
        let find = |degree: u32, index: usize| {
            alg.index_of(BasisElement::new(degree, index)).ok_or_else(|| {
                Error::IndexOutOfRange(format!("{} not in the basis", BasisElement::new(degree, index)))
            })
        };
        let (u, v, t) = (find(g, i)?, find(h, j)?, find(block.target(), s)?);
        if u >= v {
            return Err(Error::IndexOutOfRange(format!(
                "block {block} stores pairs with i < j, got ({i}, {j})"
            )));
        }
        Ok(Self::new(u, v, t))
    }
}

/// A sparse skew-symmetric bilinear map `L × L → L`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cochain2 {
    coeffs: BTreeMap<CochainKey, Scalar>,
}

impl Cochain2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (CochainKey, Scalar)>) -> Self {
        let mut c = Self::zero();
        for (k, v) in terms {
            c.add_term(k, &v);
        }
        c
    }

    pub fn add_term(&mut self, key: CochainKey, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(key).or_insert_with(Scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    /// Adds `coeff · (e_u ∧ e_v ↦ e_target)` for any ordering of `u, v`.
    pub fn add_pair(&mut self, u: usize, v: usize, target: usize, coeff: &Scalar) {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => self.add_term(CochainKey::new(u, v, target), coeff),
            std::cmp::Ordering::Greater => self.add_term(CochainKey::new(v, u, target), &-coeff),
            std::cmp::Ordering::Equal => {}
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn get(&self, key: &CochainKey) -> Scalar {
        self.coeffs.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CochainKey, &Scalar)> {
        self.coeffs.iter()
    }

    /// `ψ(e_u, e_v)`.
    pub fn value(&self, u: usize, v: usize) -> Vector {
        let (a, b, sign) = match u.cmp(&v) {
            std::cmp::Ordering::Less => (u, v, false),
            std::cmp::Ordering::Greater => (v, u, true),
            std::cmp::Ordering::Equal => return Vector::zero(),
        };
        let lo = CochainKey { first: a, second: b, target: 0 };
        let hi = CochainKey { first: a, second: b, target: usize::MAX };
        let out: Vector = self.coeffs.range(lo..=hi).map(|(k, c)| (k.target, c.clone())).collect();
        if sign {
            -&out
        } else {
            out
        }
    }

    /// `ψ(x, y)` for arbitrary vectors.
    pub fn apply(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (u, a) in x.iter() {
            for (v, b) in y.iter() {
                out.add_scaled(&self.value(u, v), &(a * b));
            }
        }
        out
    }

    pub fn add(&self, other: &Cochain2) -> Cochain2 {
        let mut out = self.clone();
        for (k, v) in other.terms() {
            out.add_term(*k, v);
        }
        out
    }

    pub fn scaled(&self, factor: &Scalar) -> Cochain2 {
        Cochain2::from_terms(self.terms().map(|(k, v)| (*k, v * factor)))
    }

    /// The part of `self` lying in `block`.
    pub fn restrict(&self, alg: &ColorLieAlgebra, block: BlockKind) -> Cochain2 {
        Cochain2::from_terms(
            self.terms()
                .filter(|(k, _)| k.block(alg) == Some(block))
                .map(|(k, v)| (*k, v.clone())),
        )
    }

    /// Whether `ψ(X_0, ·) = 0`, with `X_0` the first basis element.
    pub fn vanishes_on_characteristic(&self) -> bool {
        self.coeffs.keys().all(|k| k.first != 0)
    }

    /// Every key respects degrees: `deg target = deg first + deg second`.
    pub fn is_degree_zero(&self, alg: &ColorLieAlgebra) -> bool {
        let grading = alg.grading();
        self.coeffs
            .keys()
            .all(|k| alg.degree(k.target) == grading.add(alg.degree(k.first), alg.degree(k.second)))
    }
}

/// A linear map `L → L` given by the images of basis elements.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinearMap {
    images: BTreeMap<usize, Vector>,
}

impl LinearMap {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            images: (0..dim).map(|i| (i, Vector::basis(i))).collect(),
        }
    }

    pub fn set(&mut self, index: usize, image: Vector) {
        if image.is_zero() {
            self.images.remove(&index);
        } else {
            self.images.insert(index, image);
        }
    }

    pub fn image(&self, index: usize) -> Vector {
        self.images.get(&index).cloned().unwrap_or_default()
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, c) in v.iter() {
            if let Some(img) = self.images.get(&i) {
                out.add_scaled(img, c);
            }
        }
        out
    }

    pub fn is_degree_zero(&self, alg: &ColorLieAlgebra) -> bool {
        self.images
            .iter()
            .all(|(&i, img)| img.indices().all(|s| alg.degree(s) == alg.degree(i)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_model;
    use crate::scalar::int;

    #[test]
    fn skew_evaluation() {
        let alg = build_model(3, 2, 2).unwrap();
        let (x1, x2, x3) = (1, 2, 3);
        let psi = Cochain2::from_terms([(CochainKey::new(x1, x2, x3), int(2))]);
        assert_eq!(psi.value(x1, x2), Vector::term(x3, int(2)));
        assert_eq!(psi.value(x2, x1), Vector::term(x3, int(-2)));
        assert!(psi.value(x1, x1).is_zero());
        assert_eq!(CochainKey::new(x1, x2, x3).block(&alg), Some(BlockKind::A));
        assert_eq!(CochainKey::new(x1, x2, x3).local(&alg), (1, 2, 3));
    }

    #[test]
    fn local_keys() {
        let alg = build_model(3, 2, 2).unwrap();
        let key = CochainKey::from_local(&alg, BlockKind::D, 1, 2, 1).unwrap();
        assert_eq!(alg.label(key.first), "Y1");
        assert_eq!(alg.label(key.second), "Y2");
        assert_eq!(alg.label(key.target), "Z1");
        assert!(CochainKey::from_local(&alg, BlockKind::D, 2, 1, 1).is_err());
        assert!(CochainKey::from_local(&alg, BlockKind::A, 1, 9, 1).is_err());
        let mixed = CochainKey::from_local(&alg, BlockKind::E, 2, 1, 3).unwrap();
        assert_eq!(mixed.local(&alg), (2, 1, 3));
    }
}
