//! First-order deformations `μ₀ + φ` of a ℤ₃-graded Lie algebra law.

use crate::algebra::{
    color_nilindex, is_filiform_lie_algebra, is_filiform_module, validate_jacobi,
    ColorLieAlgebra, Vector,
};
use crate::cohomology::{first_defect, require_z3_trivial, Cochain2};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformedLaw {
    pub base: ColorLieAlgebra,
    pub phi: Cochain2,
    pub result: ColorLieAlgebra,
}

/// Adds `φ` to the structure constants of `alg`. `φ` must vanish on `X_0`
/// and preserve degrees.
pub fn deform(alg: &ColorLieAlgebra, phi: &Cochain2) -> Result<DeformedLaw> {
    require_z3_trivial(alg)?;
    if let Some(k) = phi.terms().map(|(k, _)| k).find(|k| k.first == 0) {
        return Err(Error::CharacteristicVectorViolation(format!(
            "φ({}, {}) has a {} component",
            alg.label(k.first),
            alg.label(k.second),
            alg.label(k.target)
        )));
    }
    if phi.terms().any(|(k, _)| k.second >= alg.dim() || k.target >= alg.dim()) {
        return Err(Error::IndexOutOfRange("cochain refers to a missing basis element".into()));
    }
    if !phi.is_degree_zero(alg) {
        return Err(Error::InvalidParams("φ must have degree 0".into()));
    }
    let mut result = alg.clone();
    let mut pairs: Vec<(usize, usize)> = phi.terms().map(|(k, _)| (k.first, k.second)).collect();
    pairs.dedup();
    for (u, v) in pairs {
        let sum = &alg.basis_bracket(u, v) + &phi.value(u, v);
        result = result.with_constant(u, v, sum)?;
    }
    Ok(DeformedLaw { base: alg.clone(), phi: phi.clone(), result })
}

/// Whether `μ₀ + φ` is again a Lie algebra law, checked as the Jacobi
/// identity of the deformed algebra. `φ` must be a cocycle of `μ₀`.
pub fn is_integrable(d: &DeformedLaw) -> Result<bool> {
    if let Some((a, b, c)) = first_defect(&d.base, &d.phi) {
        return Err(Error::NotACocycle(format!(
            "δφ({}, {}, {}) ≠ 0",
            d.base.label(a),
            d.base.label(b),
            d.base.label(c)
        )));
    }
    Ok(validate_jacobi(&d.result).is_empty())
}

/// `φ(φ(x,y),z) + φ(φ(y,z),x) + φ(φ(z,x),y)` on basis elements. For a
/// cocycle this is the Jacobiator of `μ₀ + φ`.
pub fn phi_square(phi: &Cochain2, x: usize, y: usize, z: usize) -> Vector {
    let (ex, ey, ez) = (Vector::basis(x), Vector::basis(y), Vector::basis(z));
    let mut out = phi.apply(&phi.value(x, y), &ez);
    out = &out + &phi.apply(&phi.value(y, z), &ex);
    &out + &phi.apply(&phi.value(z, x), &ey)
}

/// Whether `φ∘φ` vanishes on every basis triple.
pub fn phi_square_vanishes(alg: &ColorLieAlgebra, phi: &Cochain2) -> bool {
    let n = alg.dim();
    (0..n).all(|x| (x + 1..n).all(|y| (y + 1..n).all(|z| phi_square(phi, x, y, z).is_zero())))
}

/// Filiform test on the deformed algebra: `L_0` nilpotent of maximal
/// nilindex and every other component an `L_0`-filiform module.
pub fn filiform_check(d: &DeformedLaw) -> Result<bool> {
    let alg = &d.result;
    if !is_filiform_lie_algebra(alg)? {
        return Ok(false);
    }
    for g in alg.grading().elements().skip(1) {
        if !is_filiform_module(alg, g)? {
            return Ok(false);
        }
    }
    // every component must also reach zero
    Ok(color_nilindex(alg).is_ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_model;
    use crate::cohomology::{block_cocycles, BlockKind, CochainKey, SystemOptions};
    use crate::scalar::{int, one};

    fn key(alg: &ColorLieAlgebra, block: BlockKind, i: usize, j: usize, s: usize) -> CochainKey {
        CochainKey::from_local(alg, block, i, j, s).unwrap()
    }

    #[test]
    fn zero_deformation_is_identity() {
        let alg = build_model(3, 2, 2).unwrap();
        let d = deform(&alg, &Cochain2::zero()).unwrap();
        assert_eq!(d.result, alg);
        assert!(is_integrable(&d).unwrap());
        assert!(filiform_check(&d).unwrap());
    }

    #[test]
    fn d_block_example() {
        let alg = build_model(3, 2, 1).unwrap();
        let phi = Cochain2::from_terms([(key(&alg, BlockKind::D, 1, 2, 1), one())]);
        let d = deform(&alg, &phi).unwrap();
        let (y1, y2, z1) = (
            alg.index_of_label("Y1").unwrap(),
            alg.index_of_label("Y2").unwrap(),
            alg.index_of_label("Z1").unwrap(),
        );
        assert_eq!(d.result.basis_bracket(y1, y2), Vector::basis(z1));
        assert_eq!(d.result.basis_bracket(y2, y1), -&Vector::basis(z1));
        assert!(is_integrable(&d).unwrap());
        assert!(phi_square_vanishes(&alg, &phi));
        assert!(filiform_check(&d).unwrap());
    }

    #[test]
    fn characteristic_vector_rejected() {
        let alg = build_model(3, 2, 1).unwrap();
        let phi = Cochain2::from_terms([(CochainKey::new(0, 1, 2), one())]);
        assert!(matches!(deform(&alg, &phi), Err(Error::CharacteristicVectorViolation(_))));
    }

    #[test]
    fn non_cocycle_rejected() {
        let alg = build_model(3, 1, 1).unwrap();
        // weight 2, so not closed on its own
        let phi = Cochain2::from_terms([(key(&alg, BlockKind::A, 1, 2, 2), one())]);
        let d = deform(&alg, &phi).unwrap();
        assert!(matches!(is_integrable(&d), Err(Error::NotACocycle(_))));
    }

    #[test]
    fn linear_in_phi() {
        let alg = build_model(3, 2, 2).unwrap();
        let p1 = Cochain2::from_terms([(key(&alg, BlockKind::D, 1, 2, 1), int(2))]);
        let p2 = Cochain2::from_terms([
            (key(&alg, BlockKind::D, 1, 2, 1), int(-1)),
            (key(&alg, BlockKind::B, 1, 1, 2), int(3)),
        ]);
        let both = deform(&alg, &p1.add(&p2)).unwrap().result;
        let first = deform(&alg, &p1).unwrap().result;
        for u in 0..alg.dim() {
            for v in 0..alg.dim() {
                assert_eq!(both.basis_bracket(u, v), &first.basis_bracket(u, v) + &p2.value(u, v));
            }
        }
    }

    #[test]
    fn jacobi_matches_phi_square_on_cocycles() {
        for (n, m, p) in [(2, 2, 2), (3, 2, 2), (3, 3, 2)] {
            let alg = build_model(n, m, p).unwrap();
            let mut basis = Vec::new();
            for b in BlockKind::ALL {
                basis.extend(block_cocycles(&alg, b, SystemOptions::default()).unwrap());
            }
            for (i, a) in basis.iter().enumerate() {
                for b in &basis[i..] {
                    let phi = a.add(b);
                    let d = deform(&alg, &phi).unwrap();
                    assert_eq!(is_integrable(&d).unwrap(), phi_square_vanishes(&alg, &phi));
                }
            }
        }
    }

    #[test]
    fn some_cocycle_is_not_integrable() {
        let mut found = false;
        'outer: for (n, m, p) in [(1, 1, 1), (2, 1, 1), (2, 2, 2), (3, 2, 2), (3, 3, 3)] {
            let alg = build_model(n, m, p).unwrap();
            let d = block_cocycles(&alg, BlockKind::D, SystemOptions::default()).unwrap();
            let e = block_cocycles(&alg, BlockKind::E, SystemOptions::default()).unwrap();
            for a in &d {
                for b in &e {
                    if !is_integrable(&deform(&alg, &a.add(b)).unwrap()).unwrap() {
                        found = true;
                        break 'outer;
                    }
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn integrable_a_cocycle_that_is_not_filiform() {
        // n = 2: φ(X1, X2) = X2 is the only A-cocycle. The deformed L_0 has
        // [X1, X2] = X2 and is not nilpotent.
        let alg = build_model(2, 1, 1).unwrap();
        let phi = Cochain2::from_terms([(key(&alg, BlockKind::A, 1, 2, 2), one())]);
        let d = deform(&alg, &phi).unwrap();
        assert!(is_integrable(&d).unwrap());
        assert!(!filiform_check(&d).unwrap());
    }

    #[test]
    fn non_nilpotent_artificial_algebra() {
        let alg = build_model(3, 1, 1).unwrap();
        let bad = alg.clone().with_constant(1, 2, Vector::basis(1)).unwrap();
        let d = DeformedLaw { base: alg.clone(), phi: Cochain2::zero(), result: bad };
        assert!(!filiform_check(&d).unwrap());
    }
}
