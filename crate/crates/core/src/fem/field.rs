use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

use super::mesh::StructuredMesh;

/// A finite element function given by its values at the interior vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct Field {
    /// Squares per side of the owning mesh.
    pub n: usize,
    pub values: Vec<f64>,
}

impl Field {
    pub fn zeros(mesh: &StructuredMesh) -> Self {
        Field {
            n: mesh.n,
            values: vec![0.0; mesh.dofs()],
        }
    }

    pub fn from_values(mesh: &StructuredMesh, values: Vec<f64>) -> Result<Self> {
        if values.len() != mesh.dofs() {
            return Err(Error::DimensionMismatch {
                expected: mesh.dofs(),
                found: values.len(),
            });
        }
        Ok(Field { n: mesh.n, values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn check_mesh(&self, mesh: &StructuredMesh) -> Result<()> {
        if self.n != mesh.n {
            return Err(Error::MeshMismatch {
                expected: mesh.n,
                found: self.n,
            });
        }
        if self.values.len() != mesh.dofs() {
            return Err(Error::DimensionMismatch {
                expected: mesh.dofs(),
                found: self.values.len(),
            });
        }
        Ok(())
    }

    /// Values at every vertex, zero on the boundary, ordered by vertex id.
    pub fn vertex_values(&self, mesh: &StructuredMesh) -> Result<Vec<f64>> {
        self.check_mesh(mesh)?;
        Ok(mesh
            .interior_index
            .iter()
            .map(|d| d.map_or(0.0, |d| self.values[d]))
            .collect())
    }

    /// Inverse of [`Field::vertex_values`]; boundary entries are ignored.
    pub fn from_vertex_values(mesh: &StructuredMesh, all: &[f64]) -> Result<Self> {
        if all.len() != mesh.vertices.len() {
            return Err(Error::DimensionMismatch {
                expected: mesh.vertices.len(),
                found: all.len(),
            });
        }
        let values = mesh.interior_vertices.iter().map(|&v| all[v]).collect();
        Ok(Field { n: mesh.n, values })
    }

    pub fn scaled(&self, alpha: f64) -> Self {
        Field {
            n: self.n,
            values: self.values.iter().map(|v| alpha * v).collect(),
        }
    }
}
