use thiserror::Error;

/// Errors produced by the quadrature, finite element and spectral layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("β = {0} is outside the open interval (0, 1)")]
    InvalidBeta(f64),

    #[error("β = {0} is too close to 0 or 1 for a quadrature scheme (allowed [1e-3, 1-1e-3])")]
    DegenerateBeta(f64),

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("weighted Gauss rule on ({a}, {b}) with γ = {gamma}, r = {r} failed moment check (relative error {error:e})")]
    IllConditioned {
        a: f64,
        b: f64,
        gamma: f64,
        r: usize,
        error: f64,
    },

    #[error("floating point range exceeded: {0}")]
    Range(&'static str),

    #[error("conjugate gradients did not converge in {iterations} iterations (relative residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("resolvent solve at node t = {t:e} failed after {iterations} iterations (relative residual {residual:e})")]
    NodeSolveFailed {
        t: f64,
        iterations: usize,
        residual: f64,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("field belongs to a mesh with n = {found}, expected n = {expected}")]
    MeshMismatch { expected: usize, found: usize },

    #[error("{dofs} degrees of freedom exceed the dense eigensolver cap of {cap}")]
    DofCapExceeded { dofs: usize, cap: usize },

    #[error("matrix is not positive definite (pivot {pivot} = {value:e})")]
    NotPositiveDefinite { pivot: usize, value: f64 },

    #[error("symmetric eigenvalue iteration did not converge for eigenvalue {index}")]
    EigenNoConvergence { index: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
