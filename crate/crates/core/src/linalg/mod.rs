//! Sparse and dense linear algebra used by the finite element layer and the
//! spectral oracle.

mod cg;
mod csr;
pub mod dense;

pub use cg::{cg_solve, CgStats, Preconditioner, SolverConfig};
pub use csr::{CsrMatrix, TripletBuilder};

/// Euclidean inner product.
#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `y += alpha * x`
#[inline]
pub fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    debug_assert_eq!(x.len(), y.len());
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

#[inline]
pub fn norm2(a: &[f64]) -> f64 {
    num_traits::Float::sqrt(dot(a, a))
}
