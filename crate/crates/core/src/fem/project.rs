use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is in the build
use num_traits::Float;

use super::assembly::SparseOperatorPair;
use super::field::Field;
use super::mesh::StructuredMesh;
use super::quadrature::{map, POINTS};
use crate::error::{Error, Result};
use crate::linalg::{cg_solve, SolverConfig};

/// `b_i = ∫ f φ_i` by the 6-point rule on every triangle.
pub fn load_vector(mesh: &StructuredMesh, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    let mut b = vec![0.0; mesh.dofs()];
    for (t, tri) in mesh.triangles.iter().enumerate() {
        let corners = mesh.corners(t);
        let area = mesh.signed_area(t);
        for (l, w) in &POINTS {
            let [x, y] = map(&corners, l);
            let fw = area * w * f(x, y);
            for (k, &v) in tri.iter().enumerate() {
                if let Some(d) = mesh.interior_index[v] {
                    b[d] += fw * l[k];
                }
            }
        }
    }
    b
}

/// L₂ projection onto the finite element space: solves `M c = b`.
pub fn l2_project(
    mesh: &StructuredMesh,
    pair: &SparseOperatorPair,
    f: impl Fn(f64, f64) -> f64,
    config: &SolverConfig,
) -> Result<Field> {
    check_pair(mesh, pair)?;
    let b = load_vector(mesh, f);
    let (values, _) = cg_solve(&pair.mass, &b, config)?;
    Field::from_values(mesh, values)
}

/// Nodal interpolant.
pub fn interpolate(mesh: &StructuredMesh, f: impl Fn(f64, f64) -> f64) -> Field {
    let values = mesh
        .interior_vertices
        .iter()
        .map(|&v| f(mesh.vertices[v][0], mesh.vertices[v][1]))
        .collect();
    Field { n: mesh.n, values }
}

/// `√(fᵀ M f)`.
pub fn l2_norm(pair: &SparseOperatorPair, f: &Field) -> f64 {
    pair.mass.bilinear(&f.values, &f.values).max(0.0).sqrt()
}

/// All element quadrature points, six per triangle in triangle order.
pub fn quadrature_points(mesh: &StructuredMesh) -> Vec<[f64; 2]> {
    let mut pts = Vec::with_capacity(6 * mesh.triangles.len());
    for t in 0..mesh.triangles.len() {
        let corners = mesh.corners(t);
        pts.extend(POINTS.iter().map(|(l, _)| map(&corners, l)));
    }
    pts
}

/// `‖f_h − u‖_{L₂}` with `u` given at [`quadrature_points`].
pub fn l2_error_with_values(mesh: &StructuredMesh, f: &Field, exact: &[f64]) -> Result<f64> {
    let all = f.vertex_values(mesh)?;
    let expected = 6 * mesh.triangles.len();
    if exact.len() != expected {
        return Err(Error::DimensionMismatch {
            expected,
            found: exact.len(),
        });
    }
    let mut sum = 0.0;
    for (t, tri) in mesh.triangles.iter().enumerate() {
        let area = mesh.signed_area(t);
        let nodal = [all[tri[0]], all[tri[1]], all[tri[2]]];
        for (q, (l, w)) in POINTS.iter().enumerate() {
            let uh = l[0] * nodal[0] + l[1] * nodal[1] + l[2] * nodal[2];
            let d = uh - exact[6 * t + q];
            sum += area * w * d * d;
        }
    }
    Ok(sum.sqrt())
}

/// `‖f_h − u‖_{L₂}` by the 6-point rule.
pub fn l2_error(
    mesh: &StructuredMesh,
    f: &Field,
    u_exact: impl Fn(f64, f64) -> f64,
) -> Result<f64> {
    let exact: Vec<f64> = quadrature_points(mesh)
        .into_iter()
        .map(|[x, y]| u_exact(x, y))
        .collect();
    l2_error_with_values(mesh, f, &exact)
}

pub(crate) fn check_pair(mesh: &StructuredMesh, pair: &SparseOperatorPair) -> Result<()> {
    if pair.n != mesh.n || pair.dofs() != mesh.dofs() {
        return Err(Error::MeshMismatch {
            expected: mesh.n,
            found: pair.n,
        });
    }
    Ok(())
}
