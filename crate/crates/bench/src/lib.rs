//! Fixtures shared by the benchmarks under `benches/`.

use colorfil_core::{assemble_z2_system, build_model, BlockKind, SparseIntMatrix, SystemOptions};

/// The joint six-block constraint matrix of the model `L^{n,m,p}`.
pub fn joint_system(n: usize, m: usize, p: usize) -> SparseIntMatrix {
    let alg = build_model(n, m, p).expect("valid model parameters");
    assemble_z2_system(&alg, &BlockKind::ALL, SystemOptions::default())
        .expect("model systems assemble")
        .matrix
}
