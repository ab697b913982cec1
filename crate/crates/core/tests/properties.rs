use colorfil_core::cohomology::{is_cocycle, SystemOptions};
use colorfil_core::linalg::{rank_fraction_free, rank_mod, Prime};
use colorfil_core::scalar::int;
use colorfil_core::*;
use num_traits::Zero;
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = SparseIntMatrix> {
    (1usize..9, 1usize..9).prop_flat_map(|(r, c)| {
        // mostly zeros, like the cocycle systems
        let entry = prop_oneof![4 => Just(0i64), 2 => -1i64..=1, 1 => -4i64..=4];
        proptest::collection::vec(proptest::collection::vec(entry, c), r)
            .prop_map(|rows| SparseIntMatrix::from_dense(&rows))
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn model() -> impl Strategy<Value = ColorLieAlgebra> {
    (1usize..5, 1usize..4, 1usize..4).prop_map(|(n, m, p)| build_model(n, m, p).unwrap())
}

fn element(dim: usize) -> impl Strategy<Value = Vector> {
    proptest::collection::vec(-3i64..=3, dim).prop_map(|coeffs| {
        let mut v = Vector::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            v.add_term(i, &int(c));
        }
        v
    })
}

/// A degree-preserving linear map with small random integer entries.
fn degree_zero_map(alg: &ColorLieAlgebra, seed: &[i64]) -> LinearMap {
    let mut g = LinearMap::zero();
    let mut k = 0;
    for d in 0..3 {
        for u in alg.component(d) {
            let mut image = Vector::zero();
            for v in alg.component(d) {
                image.add_term(v, &int(seed[k % seed.len()]));
                k += 1;
            }
            g.set(u, image);
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_routes_agree(m in matrix()) {
        let exact = rank_fraction_free(&m);
        prop_assert_eq!(rank_certified(&m), exact);
        prop_assert_eq!(exact + kernel_basis(&m).dim, m.n_cols());
        prop_assert_eq!(rank_fraction_free(&m.transpose()), exact);
    }

    #[test]
    fn rank_survives_permutation(
        (m, rows, cols) in matrix().prop_flat_map(|m| {
            let (r, c) = (m.n_rows(), m.n_cols());
            (Just(m), permutation(r), permutation(c))
        })
    ) {
        prop_assert_eq!(rank_certified(&m.permuted(&rows, &cols)), rank_certified(&m));
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix()) {
        for v in kernel_basis(&m).vectors {
            prop_assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn modular_rank_never_exceeds_exact(m in matrix(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        prop_assert!(rank_mod(&m, Prime::new(p).unwrap()) <= rank_fraction_free(&m));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coboundaries_are_cocycles(alg in model(), seed in proptest::collection::vec(-2i64..=2, 1..16)) {
        let g = degree_zero_map(&alg, &seed);
        let psi = delta1(&alg, &g).unwrap();
        prop_assert!(is_cocycle(&alg, &psi));
    }

    #[test]
    fn system_kernels_are_cocycles(alg in model(), block in prop::sample::select(BlockKind::ALL.to_vec())) {
        let sys = assemble_z2_system(&alg, &[block], SystemOptions::default()).unwrap();
        for v in kernel_basis(&sys.matrix).vectors {
            let psi = sys.cochain(&v);
            prop_assert!(is_cocycle(&alg, &psi), "{:?} kernel vector is not a cocycle", block);
        }
    }

    #[test]
    fn bracket_is_skew(
        (alg, x, y) in model().prop_flat_map(|alg| {
            let d = alg.dim();
            (Just(alg), element(d), element(d))
        })
    ) {
        let xy = alg.bracket(&x, &y);
        let yx = alg.bracket(&y, &x);
        prop_assert_eq!(xy, yx.scaled(&int(-1)));
    }

    #[test]
    fn deformation_is_linear_in_phi(t in -4i64..=4) {
        let alg = build_model(3, 2, 1).unwrap();
        let (y1, y2, z1) = (
            alg.index_of_label("Y1").unwrap(),
            alg.index_of_label("Y2").unwrap(),
            alg.index_of_label("Z1").unwrap(),
        );
        let phi = Cochain2::from_terms([(CochainKey::new(y1, y2, z1), int(1))]);
        let law = deform(&alg, &phi.scaled(&int(t))).unwrap();
        for u in 0..alg.dim() {
            for v in 0..alg.dim() {
                let mut expected = alg.basis_bracket(u, v);
                expected.add_scaled(&phi.value(u, v), &int(t));
                prop_assert_eq!(law.result.basis_bracket(u, v), expected);
            }
        }
    }
}
