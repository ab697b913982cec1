//! Degree-0 two-cochains of ℤ₃-graded Lie algebras with adjoint
//! coefficients, the coboundaries δ¹ and δ², and the cocycle constraint
//! systems split into the six blocks A–F.

mod block;
mod coboundary;
mod cochain;
mod export;
mod report;
mod system;

pub use block::BlockKind;
pub use coboundary::{delta1, delta2, is_cocycle};
pub(crate) use coboundary::{first_defect, require_z3_trivial};
pub use cochain::{Cochain2, CochainKey, LinearMap};
pub use export::{shape, BlockTerm, CochainFile, CocycleExport, ExportTerm};
pub use report::{
    block_cocycles, block_dim, block_dims, block_dims_with, cohomology_report,
    cohomology_report_with, degree_zero_maps, joint_dim, CohomologyReport, RankMethod,
};
pub use system::{
    assemble_z2_system, cochain_columns, condition_number, ConstraintSystem, RowLabel,
    SystemOptions,
};
