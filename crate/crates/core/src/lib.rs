//! Graded (color) Lie algebras, exact sparse linear algebra, and degree-zero
//! 2-cocycles of the ℤ₃-graded filiform algebras `L^{n,m,p}`.
//!
//! The deformation dimensions are computed three independent ways:
//! brute-force kernels of the cocycle constraint system ([`cohomology`]),
//! sl(2)-weight counting ([`weights`]) and the closed-form branch tables
//! ([`closed_forms`]). [`sweep`] runs them side by side over parameter grids.

pub mod algebra;
pub mod closed_forms;
pub mod cohomology;
pub mod deformation;
mod error;
pub mod linalg;
pub mod scalar;
pub mod sweep;
pub mod weights;

pub use algebra::{
    build_model, color_nilindex, is_filiform_module, validate_commutation_factor,
    validate_jacobi, BasisElement, ColorLieAlgebra, CommutationFactor, GradingGroup,
    NilindexReport, Vector, Violation,
};
pub use closed_forms::{main_theorem_total, DimensionReport, Method};
pub use cohomology::{
    assemble_z2_system, block_dims, cohomology_report, delta1, delta2, BlockKind, Cochain2,
    CochainKey, CohomologyReport, ConstraintSystem, LinearMap, SystemOptions,
};
pub use deformation::{deform, filiform_check, is_integrable, DeformedLaw};
pub use error::{Error, Result};
pub use linalg::{kernel_basis, nullity, rank_certified, KernelBasis, SparseIntMatrix};
pub use scalar::Scalar;
pub use weights::{cochain_weight, count_weight_dim, WeightModel};
