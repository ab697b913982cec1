//! Graded vector spaces, commutation factors and color Lie algebras.

mod basis;
mod grading;
mod json;
mod lie;
mod series;
mod vector;

pub use basis::BasisElement;
pub use grading::{validate_commutation_factor, CommutationFactor, GradingGroup};
pub use lie::{build_model, validate_jacobi, ColorLieAlgebra, Violation};
pub use series::{
    color_nilindex, descending_dims, is_filiform_lie_algebra, is_filiform_module,
    NilindexReport,
};
pub use vector::Vector;
