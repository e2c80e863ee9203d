use super::assembly::SparseOperatorPair;
use super::field::Field;
use crate::error::{Error, Result};
use crate::linalg::{cg_solve, CgStats, SolverConfig};
use crate::quad::ResolventFamily;

/// Applies `T₁(t)`: solve `(M + t²A)u = Mf`, or `T₂(t)`: solve
/// `(t²M + A)u = Mf`.
///
/// `T₂` is solved in this form directly, so tiny `t` never needs `1/t`.
pub fn shifted_solve(
    pair: &SparseOperatorPair,
    t: f64,
    f: &Field,
    family: ResolventFamily,
    config: &SolverConfig,
) -> Result<(Field, CgStats)> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::InvalidParameter {
            name: "t",
            value: t,
            reason: "resolvent parameter must be finite and nonnegative",
        });
    }
    if f.n != pair.n || f.len() != pair.dofs() {
        return Err(Error::MeshMismatch {
            expected: pair.n,
            found: f.n,
        });
    }
    let t2 = t * t;
    if family == ResolventFamily::T1 && t2 == 0.0 {
        return Ok((f.clone(), CgStats::default()));
    }
    let matrix = match family {
        ResolventFamily::T1 => pair.mass.linear_combination(1.0, &pair.stiffness, t2)?,
        ResolventFamily::T2 => pair.mass.linear_combination(t2, &pair.stiffness, 1.0)?,
    };
    let rhs = pair.mass.mul_vec(&f.values);
    let (values, stats) = cg_solve(&matrix, &rhs, config).map_err(|e| match e {
        Error::NotConverged {
            iterations,
            residual,
        } => Error::NodeSolveFailed {
            t,
            iterations,
            residual,
        },
        other => other,
    })?;
    Ok((Field { n: f.n, values }, stats))
}
