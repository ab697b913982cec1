use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The cyclic grading group ℤ_k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GradingGroup {
    modulus: u32,
}

impl GradingGroup {
    pub fn new(modulus: u32) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::InvalidParams("grading modulus must be at least 1".into()));
        }
        Ok(Self { modulus })
    }

    pub fn z3() -> Self {
        Self { modulus: 3 }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn add(&self, g: u32, h: u32) -> u32 {
        (g + h) % self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.modulus
    }
}

/// A validated commutation factor β: ℤ_k × ℤ_k → ℚ*.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutationFactor {
    group: GradingGroup,
    table: Vec<Scalar>,
}

impl CommutationFactor {
    /// β ≡ 1, the ordinary graded Lie algebra case.
    pub fn trivial(group: GradingGroup) -> Self {
        let k = group.modulus() as usize;
        Self {
            group,
            table: vec![Scalar::one(); k * k],
        }
    }

    pub fn group(&self) -> GradingGroup {
        self.group
    }

    pub fn get(&self, g: u32, h: u32) -> &Scalar {
        let k = self.group.modulus();
        &self.table[((g % k) * k + (h % k)) as usize]
    }

    pub fn is_trivial(&self) -> bool {
        self.table.iter().all(One::is_one)
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        let k = self.group.modulus() as usize;
        self.table.chunks(k).map(<[Scalar]>::to_vec).collect()
    }
}

/// Checks the commutation factor axioms on every instance:
/// β(g,h)β(h,g) = 1, β(g,h+k) = β(g,h)β(g,k) and β(g+h,k) = β(g,k)β(h,k).
pub fn validate_commutation_factor(table: &[Vec<Scalar>]) -> Result<CommutationFactor> {
    let k = table.len();
    let group = GradingGroup::new(k as u32)?;
    if table.iter().any(|row| row.len() != k) {
        return Err(Error::InvalidParams(format!("commutation factor table must be {k}x{k}")));
    }
    let factor = CommutationFactor {
        group,
        table: table.iter().flatten().cloned().collect(),
    };
    let b = |g: u32, h: u32| factor.get(g, h);

    for g in group.elements() {
        for h in group.elements() {
            if b(g, h).is_zero() {
                return Err(Error::AxiomViolation {
                    identity: "beta(g,h) != 0",
                    args: vec![g, h],
                });
            }
        }
    }
    for g in group.elements() {
        for h in group.elements() {
            if !(b(g, h) * b(h, g)).is_one() {
                return Err(Error::AxiomViolation {
                    identity: "beta(g,h)*beta(h,g) = 1",
                    args: vec![g, h],
                });
            }
        }
    }
    for g in group.elements() {
        for h in group.elements() {
            for l in group.elements() {
                if *b(g, group.add(h, l)) != b(g, h) * b(g, l) {
                    return Err(Error::AxiomViolation {
                        identity: "beta(g,h+k) = beta(g,h)*beta(g,k)",
                        args: vec![g, h, l],
                    });
                }
                if *b(group.add(g, h), l) != b(g, l) * b(h, l) {
                    return Err(Error::AxiomViolation {
                        identity: "beta(g+h,k) = beta(g,k)*beta(h,k)",
                        args: vec![g, h, l],
                    });
                }
            }
        }
    }
    Ok(factor)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn table(k: usize, f: impl Fn(usize, usize) -> i64) -> Vec<Vec<Scalar>> {
        (0..k).map(|g| (0..k).map(|h| int(f(g, h))).collect()).collect()
    }

    #[test]
    fn z3_all_ones_is_valid() {
        let beta = validate_commutation_factor(&table(3, |_, _| 1)).unwrap();
        assert!(beta.is_trivial());
    }

    #[test]
    fn superalgebra_factor_is_valid() {
        let beta =
            validate_commutation_factor(&table(2, |g, h| if g == 1 && h == 1 { -1 } else { 1 }))
                .unwrap();
        assert_eq!(*beta.get(1, 1), int(-1));
        assert_eq!(*beta.get(0, 1), int(1));
    }

    #[test]
    fn z3_with_sign_is_rejected() {
        let err =
            validate_commutation_factor(&table(3, |g, h| if g == 1 && h == 1 { -1 } else { 1 }))
                .unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { .. }), "{err}");
    }

    #[test]
    fn zero_entry_is_rejected() {
        let err = validate_commutation_factor(&table(2, |g, _| g as i64)).unwrap_err();
        assert!(matches!(err, Error::AxiomViolation { identity: "beta(g,h) != 0", .. }));
    }

    #[test]
    fn only_trivial_factor_on_z3() {
        // Every ±1 table on ℤ₃ is tried; the all-ones table is the only survivor.
        let mut valid = Vec::new();
        for mask in 0u32..(1 << 9) {
            let t = table(3, |g, h| if mask >> (3 * g + h) & 1 == 1 { -1 } else { 1 });
            if validate_commutation_factor(&t).is_ok() {
                valid.push(mask);
            }
        }
        assert_eq!(valid, vec![0]);
    }

    #[test]
    fn consequences_hold_for_valid_factors() {
        let beta =
            validate_commutation_factor(&table(2, |g, h| if g == 1 && h == 1 { -1 } else { 1 }))
                .unwrap();
        for g in 0..2 {
            assert!(beta.get(0, g).is_one() && beta.get(g, 0).is_one());
            let sq = beta.get(g, g) * beta.get(g, g);
            assert!(sq.is_one());
        }
    }
}
