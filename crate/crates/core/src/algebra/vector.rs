use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use crate::scalar::Scalar;

/// A sparse vector over the basis of an algebra, keyed by global basis index.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector(BTreeMap<usize, Scalar>);

impl Vector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(index: usize) -> Self {
        Self::term(index, crate::scalar::one())
    }

    pub fn term(index: usize, coeff: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(index, &coeff);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, index: usize) -> Scalar {
        self.0.get(&index).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().map(|(&i, c)| (i, c))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.0.iter().next().map(|(&i, c)| (i, c))
    }

    pub fn add_term(&mut self, index: usize, coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.0.get_mut(&index) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.0.remove(&index);
                }
            }
            None => {
                self.0.insert(index, coeff.clone());
            }
        }
    }

    /// `self += factor * other`
    pub fn add_scaled(&mut self, other: &Vector, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (i, c) in other.iter() {
            self.add_term(i, &(c * factor));
        }
    }

    pub fn scaled(&self, factor: &Scalar) -> Vector {
        if factor.is_zero() {
            return Vector::zero();
        }
        Vector(self.0.iter().map(|(&i, c)| (i, c * factor)).collect())
    }
}

impl FromIterator<(usize, Scalar)> for Vector {
    fn from_iter<T: IntoIterator<Item = (usize, Scalar)>>(iter: T) -> Self {
        let mut v = Vector::zero();
        for (i, c) in iter {
            v.add_term(i, &c);
        }
        v
    }
}

impl Add for &Vector {
    type Output = Vector;

    fn add(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_scaled(rhs, &crate::scalar::one());
        out
    }
}

impl Sub for &Vector {
    type Output = Vector;

    fn sub(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out.add_scaled(rhs, &crate::scalar::int(-1));
        out
    }
}

impl Neg for &Vector {
    type Output = Vector;

    fn neg(self) -> Vector {
        self.scaled(&crate::scalar::int(-1))
    }
}
