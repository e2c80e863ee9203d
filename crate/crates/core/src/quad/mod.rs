//! Scalar quadratures for `λ^{-β}` and their error analysis.
//!
//! With `f¹_λ(t) = (1+λt²)^{-1}` and `f²_λ(t) = (t²+λ)^{-1}`,
//!
//! ```text
//! C_β λ^{-β} = ∫_0^1 t^{2β-1} f¹_λ(t) dt + ∫_0^1 t^{1-2β} f²_λ(t) dt
//! ```
//!
//! and each scheme replaces the two integrals by node/weight sums. The same
//! nodes drive the operator version in [`crate::frac`], where `f¹_λ(t)` becomes
//! the resolvent `(I + t²L)^{-1}` and `f²_λ(t)` becomes `(t²I + L)^{-1}`.

mod bounds;
mod gauss;
mod graded;
mod scheme;
mod sup;

pub use bounds::{operator_bound, theoretical_bound, QuadratureBound};
pub use gauss::{
    power_moment, weighted_gauss_rule, weighted_gauss_rule_with, LegendreRule, WeightedGaussRule,
    MAX_POINTS, MOMENT_TOLERANCE,
};
pub use graded::{graded_nodes, mesh_ratio_bound, GradedPartition};
pub use scheme::{
    dyadic_gauss_scheme, eval_scheme, exponential_scheme, exponential_scheme_symmetric,
    rectangle_scheme, scalar_error, MChoice, QuadratureScheme, ResolventFamily, ResolventNode,
    SchemeKind, SchemeParams,
};
pub use sup::{sup_error, SupErrorReport, SupSearch};
