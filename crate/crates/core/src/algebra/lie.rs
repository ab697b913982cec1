use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::basis::BasisElement;
use super::grading::{CommutationFactor, GradingGroup};
use super::vector::Vector;
use crate::error::{Error, Result};
use crate::scalar::int;

/// A finite-dimensional ℤ_k-graded color Lie algebra given by sparse
/// structure constants.
///
/// Only pairs `i <= j` (global basis order) are stored; `[e_j, e_i]` is
/// synthesized as `-β(deg e_j, deg e_i) [e_i, e_j]`. Diagonal entries are only
/// meaningful when `β(g, g) = -1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorLieAlgebra {
    beta: CommutationFactor,
    dims: Vec<usize>,
    basis: Vec<BasisElement>,
    offsets: Vec<usize>,
    constants: BTreeMap<(usize, usize), Vector>,
}

impl ColorLieAlgebra {
    /// The abelian algebra with the given per-degree dimensions.
    pub fn abelian(beta: CommutationFactor, dims: Vec<usize>) -> Result<Self> {
        let k = beta.group().modulus() as usize;
        if dims.len() != k {
            return Err(Error::InvalidParams(format!(
                "expected {k} component dimensions, got {}",
                dims.len()
            )));
        }
        let mut basis = Vec::new();
        let mut offsets = Vec::with_capacity(k + 1);
        for (degree, &d) in dims.iter().enumerate() {
            offsets.push(basis.len());
            let first = BasisElement::first_index(degree as u32);
            basis.extend((first..first + d).map(|i| BasisElement::new(degree as u32, i)));
        }
        offsets.push(basis.len());
        Ok(Self {
            beta,
            dims,
            basis,
            offsets,
            constants: BTreeMap::new(),
        })
    }

    /// Builds an algebra from brackets `[e_i, e_j] = value` given in any order.
    /// Giving both `[e_i, e_j]` and `[e_j, e_i]` is rejected.
    pub fn from_constants(
        beta: CommutationFactor,
        dims: Vec<usize>,
        constants: impl IntoIterator<Item = (usize, usize, Vector)>,
    ) -> Result<Self> {
        let mut alg = Self::abelian(beta, dims)?;
        for (i, j, value) in constants {
            alg.insert_constant(i, j, value, false)?;
        }
        Ok(alg)
    }

    /// Returns a copy with `[e_i, e_j]` replaced by `value`.
    pub fn with_constant(mut self, i: usize, j: usize, value: Vector) -> Result<Self> {
        self.insert_constant(i, j, value, true)?;
        Ok(self)
    }

    fn insert_constant(&mut self, i: usize, j: usize, value: Vector, replace: bool) -> Result<()> {
        let n = self.dim();
        if i >= n || j >= n || value.indices().any(|s| s >= n) {
            return Err(Error::IndexOutOfRange(format!(
                "bracket [{i}, {j}] outside basis of size {n}"
            )));
        }
        let (key, value) = if i <= j {
            ((i, j), value)
        } else {
            let factor = -self.beta.get(self.degree(j), self.degree(i)).clone();
            ((j, i), value.scaled(&factor))
        };
        if !replace && self.constants.contains_key(&key) {
            return Err(Error::InvalidParams(format!(
                "bracket [{}, {}] given twice",
                self.basis[key.0], self.basis[key.1]
            )));
        }
        if value.is_zero() {
            self.constants.remove(&key);
        } else {
            self.constants.insert(key, value);
        }
        Ok(())
    }

    pub fn grading(&self) -> GradingGroup {
        self.beta.group()
    }

    pub fn beta(&self) -> &CommutationFactor {
        &self.beta
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, index: usize) -> u32 {
        self.basis[index].degree
    }

    /// Global indices of the degree-`g` component.
    pub fn component(&self, g: u32) -> std::ops::Range<usize> {
        let g = g as usize;
        self.offsets[g]..self.offsets[g + 1]
    }

    pub fn index_of(&self, element: BasisElement) -> Option<usize> {
        let g = element.degree as usize;
        if g >= self.dims.len() {
            return None;
        }
        let local = element.index.checked_sub(BasisElement::first_index(element.degree))?;
        (local < self.dims[g]).then(|| self.offsets[g] + local)
    }

    pub fn index_of_label(&self, label: &str) -> Result<usize> {
        let e = BasisElement::parse(label)?;
        self.index_of(e)
            .ok_or_else(|| Error::IndexOutOfRange(format!("{label} is not in the basis")))
    }

    /// Stored structure constants, `i <= j`.
    pub fn constants(&self) -> impl Iterator<Item = (usize, usize, &Vector)> {
        self.constants.iter().map(|(&(i, j), v)| (i, j, v))
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        if i <= j {
            self.constants.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            match self.constants.get(&(j, i)) {
                Some(v) => v.scaled(&-self.beta.get(self.degree(i), self.degree(j)).clone()),
                None => Vector::zero(),
            }
        }
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let e = self.basis_bracket(i, j);
                if !e.is_zero() {
                    out.add_scaled(&e, &(a * b));
                }
            }
        }
        out
    }

    /// Dense table of basis brackets, `table[i * dim + j] = [e_i, e_j]`.
    pub fn bracket_table(&self) -> Vec<Vector> {
        let n = self.dim();
        let mut table = vec![Vector::zero(); n * n];
        for (&(i, j), v) in &self.constants {
            table[i * n + j] = v.clone();
            if i != j {
                let f = -self.beta.get(self.degree(j), self.degree(i)).clone();
                table[j * n + i] = v.scaled(&f);
            }
        }
        table
    }

    pub fn label(&self, index: usize) -> String {
        self.basis[index].to_string()
    }

    pub fn format_vector(&self, v: &Vector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter()
            .map(|(i, c)| {
                if c.is_one() {
                    self.label(i)
                } else {
                    format!("({})*{}", crate::scalar::to_string(c), self.label(i))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }
}

/// The ℤ₃-graded filiform algebra `L^{n,m,p}` on
/// `X_0..X_n, Y_1..Y_m, Z_1..Z_p`, whose only nonzero brackets are
/// `[X_0, X_i] = X_{i+1}`, `[X_0, Y_j] = Y_{j+1}` and `[X_0, Z_k] = Z_{k+1}`.
pub fn build_model(n: usize, m: usize, p: usize) -> Result<ColorLieAlgebra> {
    if n < 1 {
        return Err(Error::InvalidParams(format!("model requires n >= 1, got n = {n}")));
    }
    let beta = CommutationFactor::trivial(GradingGroup::z3());
    let dims = vec![n + 1, m, p];
    let mut constants = Vec::new();
    let mut chain = |start: usize, len: usize| {
        // consecutive members of a chain starting at global index `start`
        for t in 0..len.saturating_sub(1) {
            constants.push((0, start + t, Vector::basis(start + t + 1)));
        }
    };
    chain(1, n);
    chain(n + 1, m);
    chain(n + 1 + m, p);
    ColorLieAlgebra::from_constants(beta, dims, constants)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `[e_i, e_j]` has a component outside degree `deg e_i + deg e_j`.
    Degree { x: usize, y: usize },
    /// A stored self-bracket `[e_i, e_i]` with `β(g, g) = 1`.
    Anticommutativity { x: usize },
    /// `[[x,y],z] ≠ [x,[y,z]] - β(g,h)[y,[x,z]]`.
    Jacobi { x: usize, y: usize, z: usize, defect: Vector },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Degree { x, y } => write!(f, "degree violation in [{x}, {y}]"),
            Violation::Anticommutativity { x } => write!(f, "[{x}, {x}] must vanish"),
            Violation::Jacobi { x, y, z, .. } => write!(f, "Jacobi fails on ({x}, {y}, {z})"),
        }
    }
}

/// Lists every degree, anticommutativity and β-Jacobi violation over basis
/// pairs and triples. An empty list means the algebra is a color Lie algebra.
pub fn validate_jacobi(alg: &ColorLieAlgebra) -> Vec<Violation> {
    let mut out = Vec::new();
    let grading = alg.grading();
    for (i, j, v) in alg.constants() {
        let target = grading.add(alg.degree(i), alg.degree(j));
        if v.indices().any(|s| alg.degree(s) != target) {
            out.push(Violation::Degree { x: i, y: j });
        }
        if i == j && !(alg.beta().get(alg.degree(i), alg.degree(i)) + int(1)).is_zero() {
            out.push(Violation::Anticommutativity { x: i });
        }
    }

    let n = alg.dim();
    let table = alg.bracket_table();
    let br = |i: usize, j: usize| &table[i * n + j];
    // [v, e_z] for a vector v
    let left = |v: &Vector, z: usize| {
        let mut acc = Vector::zero();
        for (a, c) in v.iter() {
            acc.add_scaled(br(a, z), c);
        }
        acc
    };
    // [e_x, v]
    let right = |x: usize, v: &Vector| {
        let mut acc = Vector::zero();
        for (a, c) in v.iter() {
            acc.add_scaled(br(x, a), c);
        }
        acc
    };

    // With β ≡ 1 and skew constants the Jacobiator is alternating, so sorted
    // triples of distinct elements suffice.
    let alternating = alg.beta().is_trivial() && alg.constants().all(|(i, j, _)| i != j);
    let mut check = |x: usize, y: usize, z: usize| {
        let g = alg.degree(x);
        let h = alg.degree(y);
        let mut defect = left(br(x, y), z);
        defect.add_scaled(&right(x, br(y, z)), &int(-1));
        defect.add_scaled(&right(y, br(x, z)), alg.beta().get(g, h));
        if !defect.is_zero() {
            out.push(Violation::Jacobi { x, y, z, defect });
        }
    };
    if alternating {
        for x in 0..n {
            for y in x + 1..n {
                for z in y + 1..n {
                    check(x, y, z);
                }
            }
        }
    } else {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    check(x, y, z);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_commutation_factor;

    fn nonzero(alg: &ColorLieAlgebra) -> Vec<String> {
        alg.constants()
            .map(|(i, j, v)| format!("[{},{}]={}", alg.label(i), alg.label(j), alg.format_vector(v)))
            .collect()
    }

    #[test]
    fn model_constants() {
        assert_eq!(nonzero(&build_model(2, 1, 1).unwrap()), ["[X0,X1]=X2"]);
        assert!(build_model(1, 1, 1).unwrap().is_abelian());
        assert_eq!(
            nonzero(&build_model(3, 2, 2).unwrap()),
            ["[X0,X1]=X2", "[X0,X2]=X3", "[X0,Y1]=Y2", "[X0,Z1]=Z2"]
        );
        assert!(matches!(build_model(0, 1, 1), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn degenerate_models_are_legal() {
        let alg = build_model(3, 0, 0).unwrap();
        assert_eq!(alg.dim(), 4);
        assert!(validate_jacobi(&alg).is_empty());
    }

    #[test]
    fn bracket_is_bilinear() {
        let alg = build_model(3, 2, 2).unwrap();
        let x0 = Vector::basis(alg.index_of_label("X0").unwrap());
        let x1 = alg.index_of_label("X1").unwrap();
        let y1 = alg.index_of_label("Y1").unwrap();
        let arg: Vector = [(x1, int(1)), (y1, int(1))].into_iter().collect();
        let expected: Vector = [
            (alg.index_of_label("X2").unwrap(), int(1)),
            (alg.index_of_label("Y2").unwrap(), int(1)),
        ]
        .into_iter()
        .collect();
        assert_eq!(alg.bracket(&x0, &arg), expected);
        assert_eq!(alg.bracket(&arg, &x0), -&expected);
        let x2 = Vector::basis(alg.index_of_label("X2").unwrap());
        assert!(alg.bracket(&Vector::basis(x1), &x2).is_zero());
        let x3 = Vector::basis(alg.index_of_label("X3").unwrap());
        assert!(alg.bracket(&x0, &x3).is_zero());
    }

    #[test]
    fn models_satisfy_jacobi() {
        assert!(validate_jacobi(&build_model(4, 3, 2).unwrap()).is_empty());
        let abelian = ColorLieAlgebra::abelian(
            CommutationFactor::trivial(GradingGroup::z3()),
            vec![3, 2, 2],
        )
        .unwrap();
        assert!(validate_jacobi(&abelian).is_empty());
    }

    #[test]
    fn injected_constant_breaks_jacobi() {
        let alg = build_model(2, 1, 1).unwrap();
        let (x1, x2) = (1, 2);
        let broken = alg.with_constant(x1, x2, Vector::basis(x1)).unwrap();
        let violations = validate_jacobi(&broken);
        assert!(violations
            .iter()
            .any(|v| matches!(v, Violation::Jacobi { x: 0, y: 1, z: 2, .. })));
    }

    #[test]
    fn degree_violation_reported() {
        let alg = build_model(2, 1, 1).unwrap();
        let y1 = alg.index_of_label("Y1").unwrap();
        let broken = alg.with_constant(1, 2, Vector::basis(y1)).unwrap();
        assert!(validate_jacobi(&broken).contains(&Violation::Degree { x: 1, y: 2 }));
    }

    #[test]
    fn degree_additivity_of_model() {
        let alg = build_model(4, 3, 3).unwrap();
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                let target = alg.grading().add(alg.degree(i), alg.degree(j));
                assert!(alg.basis_bracket(i, j).indices().all(|s| alg.degree(s) == target));
            }
        }
    }

    #[test]
    fn superalgebra_self_bracket_allowed() {
        // ℤ₂ with β(1,1) = -1: the odd part may bracket with itself.
        let beta = validate_commutation_factor(&[
            vec![int(1), int(1)],
            vec![int(1), int(-1)],
        ])
        .unwrap();
        // sl(1|1)-like: [Y1, Y1] = 0 stays fine, [Y1, Y2] = X0 symmetric
        let alg = ColorLieAlgebra::from_constants(beta, vec![1, 2], [(1, 2, Vector::basis(0))])
            .unwrap();
        assert_eq!(alg.basis_bracket(2, 1), Vector::basis(0));
        assert!(validate_jacobi(&alg).is_empty());
        let bad = alg.with_constant(0, 0, Vector::basis(0)).unwrap();
        assert!(validate_jacobi(&bad).contains(&Violation::Anticommutativity { x: 0 }));
    }
}
