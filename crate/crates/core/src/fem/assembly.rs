use crate::error::{Error, Result};
use crate::linalg::{CsrMatrix, TripletBuilder};

use super::mesh::StructuredMesh;

/// Stiffness `A_ij = ∫ a₀ ∇φ_i·∇φ_j` and mass `M_ij = ∫ φ_i φ_j`.
///
/// Both matrices share one sparsity pattern (structural zeros included), so
/// shifted matrices like `M + t²A` are plain value combinations.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperatorPair {
    pub stiffness: CsrMatrix,
    pub mass: CsrMatrix,
    /// Squares per side of the mesh the pair was assembled on.
    pub n: usize,
    pub a0: f64,
}

impl SparseOperatorPair {
    pub fn dofs(&self) -> usize {
        self.mass.dim()
    }
}

/// Element matrices of a P1 triangle: `(stiffness, mass)`.
fn element(p: &[[f64; 2]; 3], a0: f64) -> ([[f64; 3]; 3], [[f64; 3]; 3]) {
    let det = (p[1][0] - p[0][0]) * (p[2][1] - p[0][1]) - (p[2][0] - p[0][0]) * (p[1][1] - p[0][1]);
    let area = 0.5 * det;
    // ∇φ_k = (y_{k+1} - y_{k+2}, x_{k+2} - x_{k+1}) / det
    let mut g = [[0.0; 2]; 3];
    for k in 0..3 {
        let a = p[(k + 1) % 3];
        let b = p[(k + 2) % 3];
        g[k] = [(a[1] - b[1]) / det, (b[0] - a[0]) / det];
    }
    let mut ke = [[0.0; 3]; 3];
    let mut me = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            ke[i][j] = a0 * area * (g[i][0] * g[j][0] + g[i][1] * g[j][1]);
            me[i][j] = area / if i == j { 6.0 } else { 12.0 };
        }
    }
    (ke, me)
}

fn assemble_with(
    mesh: &StructuredMesh,
    a0: f64,
    dofs: usize,
    dof: impl Fn(usize) -> Option<usize>,
) -> Result<SparseOperatorPair> {
    if !(a0 > 0.0) || !a0.is_finite() {
        return Err(Error::InvalidParameter {
            name: "a0",
            value: a0,
            reason: "diffusion coefficient must be positive",
        });
    }
    let mut a = TripletBuilder::with_capacity(dofs, 9 * mesh.triangles.len());
    let mut m = TripletBuilder::with_capacity(dofs, 9 * mesh.triangles.len());
    for (t, tri) in mesh.triangles.iter().enumerate() {
        let (ke, me) = element(&mesh.corners(t), a0);
        for (i, &vi) in tri.iter().enumerate() {
            let Some(di) = dof(vi) else { continue };
            for (j, &vj) in tri.iter().enumerate() {
                let Some(dj) = dof(vj) else { continue };
                a.push(di, dj, ke[i][j]);
                m.push(di, dj, me[i][j]);
            }
        }
    }
    Ok(SparseOperatorPair {
        stiffness: a.build(),
        mass: m.build(),
        n: mesh.n,
        a0,
    })
}

/// Matrices over the interior dofs (Dirichlet vertices eliminated).
pub fn assemble(mesh: &StructuredMesh, a0: f64) -> Result<SparseOperatorPair> {
    assemble_with(mesh, a0, mesh.dofs(), |v| mesh.interior_index[v])
}

/// Matrices over all vertices, before boundary elimination.
pub fn assemble_full(mesh: &StructuredMesh, a0: f64) -> Result<SparseOperatorPair> {
    assemble_with(mesh, a0, mesh.vertices.len(), Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::build_mesh;

    #[test]
    fn full_mass_sums_to_area() {
        let mesh = build_mesh(6).unwrap();
        let pair = assemble_full(&mesh, 1.0).unwrap();
        let total: f64 = pair.mass.values().iter().sum();
        assert!((total - 1.0).abs() < 1e-13);
        // constants are in the kernel of the full stiffness
        let ones = alloc::vec![1.0; pair.dofs()];
        let r = pair.stiffness.mul_vec(&ones);
        assert!(r.iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn five_point_stencil() {
        let mesh = build_mesh(4).unwrap();
        let pair = assemble(&mesh, 1.0).unwrap();
        // centre dof (2,2) has interior neighbours only
        let c = mesh.interior_index[mesh.vertex_id(2, 2)].unwrap();
        let mut row: alloc::vec::Vec<(usize, f64)> =
            pair.stiffness.row(c).filter(|(_, v)| *v != 0.0).collect();
        row.sort_by_key(|e| e.0);
        assert_eq!(row.len(), 5);
        let sum: f64 = row.iter().map(|e| e.1).sum();
        assert!(sum.abs() < 1e-14);
        for (j, v) in row {
            let want = if j == c { 4.0 } else { -1.0 };
            assert!((v - want).abs() < 1e-14);
        }
    }

    #[test]
    fn mass_row_sum_is_support_over_three() {
        let n = 8;
        let mesh = build_mesh(n).unwrap();
        let pair = assemble(&mesh, 1.0).unwrap();
        let c = mesh.interior_index[mesh.vertex_id(4, 4)].unwrap();
        // six triangles of area 1/(2n²) around an interior vertex
        let support = 6.0 / (2.0 * (n * n) as f64);
        let sum: f64 = pair.mass.row(c).map(|e| e.1).sum();
        assert!((sum - support / 3.0).abs() < 1e-15);
    }

    #[test]
    fn exactly_symmetric_and_shared_pattern() {
        let pair = assemble(&build_mesh(7).unwrap(), 2.5).unwrap();
        assert_eq!(pair.stiffness.asymmetry(), 0.0);
        assert_eq!(pair.mass.asymmetry(), 0.0);
        assert!(pair
            .mass
            .linear_combination(1.0, &pair.stiffness, 3.0)
            .is_ok());
        assert!(pair.mass.values().iter().all(|v| *v >= 0.0));
    }

    #[test]
    fn rejects_bad_coefficient() {
        let mesh = build_mesh(3).unwrap();
        assert!(assemble(&mesh, 0.0).is_err());
        assert!(assemble(&mesh, f64::NAN).is_err());
    }
}
