use alloc::vec;
use alloc::vec::Vec;

use super::{axpy, dot, norm2, CsrMatrix};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Preconditioner {
    None,
    #[default]
    Diagonal,
}

/// Stopping rule and preconditioner for [`cg_solve`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Target for `‖b - Ax‖₂ / ‖b‖₂`.
    pub rel_tolerance: f64,
    /// `None` means ten times the system size.
    pub max_iterations: Option<usize>,
    pub preconditioner: Preconditioner,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            rel_tolerance: 1e-12,
            max_iterations: None,
            preconditioner: Preconditioner::Diagonal,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tolerance > 0.0 && self.rel_tolerance < 1.0) {
            return Err(Error::InvalidParameter {
                name: "rel_tolerance",
                value: self.rel_tolerance,
                reason: "must lie in (0, 1)",
            });
        }
        Ok(())
    }

    fn iteration_cap(&self, n: usize) -> usize {
        self.max_iterations.unwrap_or(10 * n.max(1))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CgStats {
    pub iterations: usize,
    /// True relative residual of the returned iterate.
    pub relative_residual: f64,
}

/// Preconditioned conjugate gradients for a symmetric positive definite
/// system. Convergence is declared on the true residual; when the recursive
/// residual drifts below the target first, the iteration restarts from the
/// true residual.
pub fn cg_solve(
    matrix: &CsrMatrix,
    rhs: &[f64],
    config: &SolverConfig,
) -> Result<(Vec<f64>, CgStats)> {
    config.validate()?;
    let n = matrix.dim();
    if rhs.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: rhs.len(),
        });
    }
    let mut x = vec![0.0; n];
    let b_norm = norm2(rhs);
    if b_norm == 0.0 {
        return Ok((
            x,
            CgStats {
                iterations: 0,
                relative_residual: 0.0,
            },
        ));
    }

    let inv_diag: Option<Vec<f64>> = match config.preconditioner {
        Preconditioner::None => None,
        Preconditioner::Diagonal => Some(
            matrix
                .diagonal()
                .into_iter()
                .map(|d| if d > 0.0 { 1.0 / d } else { 1.0 })
                .collect(),
        ),
    };
    let precondition = |r: &[f64], z: &mut [f64]| match &inv_diag {
        Some(d) => {
            for ((zi, ri), di) in z.iter_mut().zip(r).zip(d) {
                *zi = ri * di;
            }
        }
        None => z.copy_from_slice(r),
    };

    let tol = config.rel_tolerance * b_norm;
    let cap = config.iteration_cap(n);
    let mut r = rhs.to_vec();
    let mut z = vec![0.0; n];
    let mut q = vec![0.0; n];
    precondition(&r, &mut z);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut iterations = 0;
    let mut last_residual = 1.0;

    while iterations < cap {
        matrix.mul_vec_into(&p, &mut q);
        let pq = dot(&p, &q);
        if !(pq > 0.0) {
            return Err(Error::NotPositiveDefinite {
                pivot: iterations,
                value: pq,
            });
        }
        let alpha = rz / pq;
        axpy(alpha, &p, &mut x);
        axpy(-alpha, &q, &mut r);
        iterations += 1;

        let r_norm = norm2(&r);
        last_residual = r_norm / b_norm;
        if r_norm <= tol {
            // confirm against the true residual
            matrix.mul_vec_into(&x, &mut q);
            for ((ri, bi), qi) in r.iter_mut().zip(rhs).zip(&q) {
                *ri = bi - qi;
            }
            let true_norm = norm2(&r);
            last_residual = true_norm / b_norm;
            if true_norm <= tol {
                return Ok((
                    x,
                    CgStats {
                        iterations,
                        relative_residual: last_residual,
                    },
                ));
            }
            precondition(&r, &mut z);
            p.copy_from_slice(&z);
            rz = dot(&r, &z);
            continue;
        }

        precondition(&r, &mut z);
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for (pi, zi) in p.iter_mut().zip(&z) {
            *pi = zi + beta * *pi;
        }
    }
    Err(Error::NotConverged {
        iterations,
        residual: last_residual,
    })
}
