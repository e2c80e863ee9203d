use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is in the build
use num_traits::Float;

use crate::error::{Error, Result};

/// `n × n` squares on `[0,1]²`, each cut along the diagonal from its lower
/// left to its upper right corner.
///
/// Vertex `(i, j)` sits at `(i/n, j/n)` with id `j(n+1) + i`; interior
/// vertices are numbered row by row.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuredMesh {
    pub n: usize,
    pub vertices: Vec<[f64; 2]>,
    /// Counter-clockwise vertex triples.
    pub triangles: Vec<[usize; 3]>,
    /// Interior dof of each vertex, `None` on the boundary.
    pub interior_index: Vec<Option<usize>>,
    /// Vertex id of each interior dof.
    pub interior_vertices: Vec<usize>,
    /// Diameter of the triangles, `√2/n`.
    pub h: f64,
    /// Quasi-uniformity ratio; 1 for this family.
    pub rho_shape: f64,
}

impl StructuredMesh {
    pub fn dofs(&self) -> usize {
        self.interior_vertices.len()
    }

    pub fn vertex_id(&self, i: usize, j: usize) -> usize {
        j * (self.n + 1) + i
    }

    /// Coordinates of a triangle's three corners.
    pub fn corners(&self, t: usize) -> [[f64; 2]; 3] {
        let [a, b, c] = self.triangles[t];
        [self.vertices[a], self.vertices[b], self.vertices[c]]
    }

    pub fn signed_area(&self, t: usize) -> f64 {
        let [p, q, r] = self.corners(t);
        0.5 * ((q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1]))
    }
}

pub fn build_mesh(n: usize) -> Result<StructuredMesh> {
    if n < 2 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n as f64,
            reason: "need at least 2 squares per side for an interior vertex",
        });
    }
    let side = n + 1;
    let nf = n as f64;
    let mut vertices = Vec::with_capacity(side * side);
    let mut interior_index = Vec::with_capacity(side * side);
    let mut interior_vertices = Vec::with_capacity((n - 1) * (n - 1));
    for j in 0..side {
        for i in 0..side {
            vertices.push([i as f64 / nf, j as f64 / nf]);
            if i > 0 && i < n && j > 0 && j < n {
                interior_index.push(Some(interior_vertices.len()));
                interior_vertices.push(j * side + i);
            } else {
                interior_index.push(None);
            }
        }
    }
    let mut triangles = Vec::with_capacity(2 * n * n);
    for j in 0..n {
        for i in 0..n {
            let v00 = j * side + i;
            let v10 = v00 + 1;
            let v01 = v00 + side;
            let v11 = v01 + 1;
            triangles.push([v00, v10, v11]);
            triangles.push([v00, v11, v01]);
        }
    }
    Ok(StructuredMesh {
        n,
        vertices,
        triangles,
        interior_index,
        interior_vertices,
        h: 2.0.sqrt() / nf,
        rho_shape: 1.0,
    })
}
