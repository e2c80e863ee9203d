//! Fractional powers `L^{-β}`, `0 < β < 1`, of a symmetric second-order
//! elliptic operator, applied through quadrature of the integral
//!
//! ```text
//! L^{-β} = C_β^{-1} ∫_0^∞ t^{2β-1} (I + t²L)^{-1} dt,   C_β = π / (2 sin πβ)
//! ```
//!
//! Every quadrature node costs one independent resolvent solve. The crate
//! provides three node/weight families (graded rectangle, dyadic weighted
//! Gauss, exponential sinc), P1 finite elements on the unit square to
//! realise the resolvents, a dense spectral oracle for verification and the
//! Fourier reference solution for the checkerboard source.
//!
//! The crate is `no_std` and needs only `alloc`. Threading, file formats and
//! the command line live in the companion `fracpow` crate; parallel node
//! solves plug in through [`frac::NodeExecutor`].
#![no_std]
#![warn(missing_debug_implementations)]
// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod beta;
pub mod error;
pub mod fem;
pub mod frac;
pub mod linalg;
pub mod quad;
pub mod rates;
pub mod reference;
pub mod spectral;

pub use beta::{c_beta, Beta};
pub use error::{Error, Result};
pub use fem::{
    assemble, build_mesh, cg_solve, l2_error, l2_norm, l2_project, shifted_solve, Field,
    ResolventFamily, SparseOperatorPair, StructuredMesh,
};
pub use frac::{apply_frac_inverse, ApplyReport, NodeExecutor, Sequential};
pub use linalg::{CgStats, Preconditioner, SolverConfig};
pub use quad::{
    dyadic_gauss_scheme, eval_scheme, exponential_scheme, graded_nodes, mesh_ratio_bound,
    operator_bound, rectangle_scheme, scalar_error, sup_error, theoretical_bound,
    weighted_gauss_rule, MChoice, QuadratureBound, QuadratureScheme, SchemeKind, SupErrorReport,
    SupSearch,
};
pub use spectral::{decompose, EigenDecomposition};
