use std::fmt;

use crate::error::{Error, Result};

/// A homogeneous basis element: family (one per degree) and index.
///
/// Degree 0 is the `X` family indexed from 0; degrees 1 and 2 are `Y` and `Z`
/// indexed from 1. Higher degrees (only for ℤ_k with k > 3) are written
/// `W<d>_<i>`, also indexed from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisElement {
    pub degree: u32,
    pub index: usize,
}

impl BasisElement {
    pub fn new(degree: u32, index: usize) -> Self {
        Self { degree, index }
    }

    /// First index used by the family of the given degree.
    pub fn first_index(degree: u32) -> usize {
        usize::from(degree != 0)
    }

    pub fn parse(label: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad basis label {label:?}"));
        let (degree, rest) = match label.as_bytes().first() {
            Some(b'X') => (0, &label[1..]),
            Some(b'Y') => (1, &label[1..]),
            Some(b'Z') => (2, &label[1..]),
            Some(b'W') => {
                let (d, i) = label[1..].split_once('_').ok_or_else(bad)?;
                (d.parse().map_err(|_| bad())?, i)
            }
            _ => return Err(bad()),
        };
        let index: usize = rest.parse().map_err(|_| bad())?;
        if index < Self::first_index(degree) {
            return Err(bad());
        }
        Ok(Self { degree, index })
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.degree {
            0 => write!(f, "X{}", self.index),
            1 => write!(f, "Y{}", self.index),
            2 => write!(f, "Z{}", self.index),
            d => write!(f, "W{}_{}", d, self.index),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for label in ["X0", "X7", "Y1", "Z12", "W4_2"] {
            assert_eq!(BasisElement::parse(label).unwrap().to_string(), label);
        }
        assert!(BasisElement::parse("Y0").is_err());
        assert!(BasisElement::parse("Q1").is_err());
        assert!(BasisElement::parse("X").is_err());
    }
}
