use super::cochain::{Cochain2, LinearMap};
use crate::algebra::{ColorLieAlgebra, Vector};
use crate::error::{Error, Result};
use crate::scalar::int;

pub(crate) fn require_z3_trivial(alg: &ColorLieAlgebra) -> Result<()> {
    if alg.grading().modulus() != 3 || !alg.beta().is_trivial() {
        return Err(Error::Unsupported(
            "cochain computations need a ℤ₃ grading with trivial commutation factor".into(),
        ));
    }
    Ok(())
}

/// `(δ²ψ)(a, b, c)` for basis elements, commutation factor ≡ 1:
///
/// `[a,ψ(b,c)] - [b,ψ(a,c)] + [c,ψ(a,b)] - ψ([a,b],c) + ψ([a,c],b) + ψ(a,[b,c])`
pub fn delta2(alg: &ColorLieAlgebra, psi: &Cochain2, a: usize, b: usize, c: usize) -> Vector {
    let (ea, eb, ec) = (Vector::basis(a), Vector::basis(b), Vector::basis(c));
    let mut out = alg.bracket(&ea, &psi.value(b, c));
    out.add_scaled(&alg.bracket(&eb, &psi.value(a, c)), &int(-1));
    out.add_scaled(&alg.bracket(&ec, &psi.value(a, b)), &int(1));
    out.add_scaled(&psi.apply(&alg.basis_bracket(a, b), &ec), &int(-1));
    out.add_scaled(&psi.apply(&alg.basis_bracket(a, c), &eb), &int(1));
    out.add_scaled(&psi.apply(&ea, &alg.basis_bracket(b, c)), &int(1));
    out
}

/// `(δ¹g)(a, b) = [a, g(b)] - [b, g(a)] - g([a, b])` on every basis pair.
pub fn delta1(alg: &ColorLieAlgebra, g: &LinearMap) -> Result<Cochain2> {
    require_z3_trivial(alg)?;
    if !g.is_degree_zero(alg) {
        return Err(Error::InvalidParams("delta1 expects a degree-0 linear map".into()));
    }
    let n = alg.dim();
    let mut out = Cochain2::zero();
    for a in 0..n {
        let ga = g.image(a);
        for b in a + 1..n {
            let mut v = alg.bracket(&Vector::basis(a), &g.image(b));
            v.add_scaled(&alg.bracket(&Vector::basis(b), &ga), &int(-1));
            v.add_scaled(&g.apply(&alg.basis_bracket(a, b)), &int(-1));
            for (t, coeff) in v.iter() {
                out.add_pair(a, b, t, coeff);
            }
        }
    }
    Ok(out)
}

/// Whether `δ²ψ` vanishes on every sorted triple of distinct basis elements.
pub fn is_cocycle(alg: &ColorLieAlgebra, psi: &Cochain2) -> bool {
    first_defect(alg, psi).is_none()
}

pub(crate) fn first_defect(alg: &ColorLieAlgebra, psi: &Cochain2) -> Option<(usize, usize, usize)> {
    let n = alg.dim();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if !delta2(alg, psi, a, b, c).is_zero() {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_model;
    use crate::cohomology::CochainKey;

    #[test]
    fn zero_cochain() {
        let alg = build_model(3, 2, 2).unwrap();
        for (a, b, c) in [(0, 1, 2), (0, 4, 6), (1, 5, 7)] {
            assert!(delta2(&alg, &Cochain2::zero(), a, b, c).is_zero());
        }
    }

    #[test]
    fn delta2_examples() {
        let alg = build_model(2, 1, 1).unwrap();
        let (x0, x1, x2) = (0, 1, 2);
        let a = Cochain2::from_terms([(CochainKey::new(x1, x2, x1), int(1))]);
        assert_eq!(delta2(&alg, &a, x0, x1, x2), Vector::basis(x2));
        let b = Cochain2::from_terms([(CochainKey::new(x1, x2, x2), int(1))]);
        assert!(delta2(&alg, &b, x0, x1, x2).is_zero());
    }

    #[test]
    fn delta1_examples() {
        let alg = build_model(3, 2, 2).unwrap();
        assert!(delta1(&alg, &LinearMap::zero()).unwrap().is_zero());

        // identity: δ¹g(a, b) = [a, b]
        let id = delta1(&alg, &LinearMap::identity(alg.dim())).unwrap();
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                assert_eq!(id.value(a, b), alg.basis_bracket(a, b));
            }
        }

        let mut g = LinearMap::zero();
        g.set(1, Vector::basis(2));
        let d = delta1(&alg, &g).unwrap();
        assert_eq!(d.value(0, 1), Vector::basis(3));
    }

    #[test]
    fn delta1_rejects_inhomogeneous_maps() {
        let alg = build_model(2, 1, 1).unwrap();
        let mut g = LinearMap::zero();
        g.set(1, Vector::basis(3));
        assert!(delta1(&alg, &g).is_err());
    }
}
