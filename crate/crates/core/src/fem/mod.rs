//! Continuous piecewise linear finite elements on the unit square with
//! homogeneous Dirichlet conditions.

mod assembly;
mod field;
mod mesh;
mod project;
pub mod quadrature;
mod resolvent;

pub use crate::linalg::cg_solve;
pub use crate::quad::ResolventFamily;
pub use assembly::{assemble, assemble_full, SparseOperatorPair};
pub use field::Field;
pub use mesh::{build_mesh, StructuredMesh};
pub use project::{
    interpolate, l2_error, l2_error_with_values, l2_norm, l2_project, load_vector,
    quadrature_points,
};
pub use resolvent::shifted_solve;
