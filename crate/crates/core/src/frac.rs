//! The discrete fractional inverse `Q_h^β f`: one resolvent solve per
//! quadrature node, combined with the node weights.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::time::Duration;

use crate::error::{Error, Result};
use crate::fem::{shifted_solve, Field, SparseOperatorPair, StructuredMesh};
use crate::linalg::{CgStats, SolverConfig};
use crate::quad::{QuadratureScheme, ResolventNode};

/// Runs independent jobs `0..count` and returns their results by index.
///
/// Implementations may run jobs in any order or concurrently; callers only
/// rely on result `i` belonging to job `i`.
pub trait NodeExecutor {
    fn run<T, F>(&self, count: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync;
}

/// Runs jobs one after the other on the calling thread.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl NodeExecutor for Sequential {
    fn run<T, F>(&self, count: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync,
    {
        (0..count).map(job).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApplyReport {
    pub nsys_executed: usize,
    pub max_cg_iterations: usize,
    pub total_cg_iterations: usize,
    pub max_relative_residual: f64,
    /// Filled in by callers that have a clock; the core crate has none.
    pub wall_time: Option<Duration>,
    pub scheme: String,
}

/// `Q_h^β f`, the scheme's weighted sum of resolvents applied to `f`.
///
/// Solves may run in any order through `exec`; the sum is always formed in
/// ascending node order, so the result does not depend on the executor.
pub fn apply_frac_inverse<E: NodeExecutor>(
    mesh: &StructuredMesh,
    pair: &SparseOperatorPair,
    scheme: &QuadratureScheme,
    f: &Field,
    config: &SolverConfig,
    exec: &E,
) -> Result<(Field, ApplyReport)> {
    config.validate()?;
    f.check_mesh(mesh)?;
    if pair.n != mesh.n || pair.dofs() != mesh.dofs() {
        return Err(Error::MeshMismatch {
            expected: mesh.n,
            found: pair.n,
        });
    }
    let terms: Vec<ResolventNode> = scheme.resolvent_terms();
    let solves: Vec<Result<(Field, CgStats)>> = exec.run(terms.len(), |i| {
        let node = terms[i];
        shifted_solve(pair, node.t, f, node.family, config)
    });

    let mut out = vec![0.0; f.len()];
    let mut report = ApplyReport {
        nsys_executed: 0,
        max_cg_iterations: 0,
        total_cg_iterations: 0,
        max_relative_residual: 0.0,
        wall_time: None,
        scheme: scheme.to_string(),
    };
    for (node, solved) in terms.iter().zip(solves) {
        let (u, stats) = solved?;
        for (o, v) in out.iter_mut().zip(&u.values) {
            *o += node.weight * v;
        }
        report.nsys_executed += 1;
        report.max_cg_iterations = report.max_cg_iterations.max(stats.iterations);
        report.total_cg_iterations += stats.iterations;
        report.max_relative_residual = report.max_relative_residual.max(stats.relative_residual);
    }
    Ok((
        Field {
            n: f.n,
            values: out,
        },
        report,
    ))
}
