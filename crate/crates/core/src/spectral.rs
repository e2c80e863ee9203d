//! Dense generalized eigendecomposition `Aψ = λMψ`, the exact reference for
//! the discrete fractional powers.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is in the build
use num_traits::Float;

use crate::error::{Error, Result};
use crate::fem::{Field, SparseOperatorPair};
use crate::linalg::dense::{
    backward_substitute_transposed, cholesky_in_place, forward_substitute, symmetric_eigen,
};

pub const DEFAULT_DOF_CAP: usize = 5000;

/// Eigenvalues `λ_i` (ascending) of `M^{-1}A` and `M`-orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    pub n: usize,
    pub eigenvalues: Vec<f64>,
    /// Row-major `dofs × dofs`; column `i` is `ψ_i`.
    vectors: Vec<f64>,
    mass: Vec<f64>,
}

/// Factor `M = LLᵀ`, diagonalize `L^{-1} A L^{-T}`, map back with `L^{-T}`.
pub fn decompose(pair: &SparseOperatorPair, cap: usize) -> Result<EigenDecomposition> {
    let n = pair.dofs();
    if n > cap {
        return Err(Error::DofCapExceeded { dofs: n, cap });
    }
    let mass = pair.mass.to_dense();
    let mut l = mass.clone();
    cholesky_in_place(&mut l, n)?;

    // C = L^{-1} A L^{-T}: columns of A through forward substitution, twice
    let a = pair.stiffness.to_dense();
    let mut c = vec![0.0; n * n];
    let mut col = vec![0.0; n];
    for j in 0..n {
        for i in 0..n {
            col[i] = a[i * n + j];
        }
        forward_substitute(&l, n, &mut col);
        for i in 0..n {
            c[i * n + j] = col[i];
        }
    }
    // c now holds L^{-1}A; its transpose is A L^{-T}, so repeat on rows
    for i in 0..n {
        col.copy_from_slice(&c[i * n..(i + 1) * n]);
        forward_substitute(&l, n, &mut col);
        c[i * n..(i + 1) * n].copy_from_slice(&col);
    }
    // symmetrize away rounding
    for i in 0..n {
        for j in 0..i {
            let s = 0.5 * (c[i * n + j] + c[j * n + i]);
            c[i * n + j] = s;
            c[j * n + i] = s;
        }
    }
    let eig = symmetric_eigen(&c, n)?;
    let mut vectors = vec![0.0; n * n];
    for j in 0..n {
        let mut v = eig.vector(j);
        backward_substitute_transposed(&l, n, &mut v);
        for i in 0..n {
            vectors[i * n + j] = v[i];
        }
    }
    Ok(EigenDecomposition {
        n: pair.n,
        eigenvalues: eig.values,
        vectors,
        mass,
    })
}

impl EigenDecomposition {
    pub fn dofs(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigenvalues[0]
    }

    /// `ψ_i` as a field.
    pub fn eigenvector(&self, i: usize) -> Field {
        let n = self.dofs();
        Field {
            n: self.n,
            values: (0..n).map(|r| self.vectors[r * n + i]).collect(),
        }
    }

    fn check(&self, f: &Field) -> Result<()> {
        if f.n != self.n || f.len() != self.dofs() {
            return Err(Error::MeshMismatch {
                expected: self.n,
                found: f.n,
            });
        }
        Ok(())
    }

    /// `⟨f, ψ_i⟩_M` for every `i`.
    pub fn coefficients(&self, f: &Field) -> Result<Vec<f64>> {
        self.check(f)?;
        let n = self.dofs();
        let mf: Vec<f64> = self
            .mass
            .chunks_exact(n)
            .map(|row| row.iter().zip(&f.values).map(|(a, b)| a * b).sum())
            .collect();
        let mut c = vec![0.0; n];
        for (r, m) in mf.iter().enumerate() {
            let row = &self.vectors[r * n..(r + 1) * n];
            for (ci, v) in c.iter_mut().zip(row) {
                *ci += v * m;
            }
        }
        Ok(c)
    }

    fn synthesize(&self, coeffs: &[f64]) -> Field {
        let n = self.dofs();
        let values = (0..n)
            .map(|r| {
                self.vectors[r * n..(r + 1) * n]
                    .iter()
                    .zip(coeffs)
                    .map(|(v, c)| v * c)
                    .sum()
            })
            .collect();
        Field { n: self.n, values }
    }

    /// `Σ λ_i^{-β} ⟨f, ψ_i⟩_M ψ_i`; a negative exponent gives positive powers.
    pub fn apply_power(&self, beta: f64, f: &Field) -> Result<Field> {
        let mut c = self.coefficients(f)?;
        for (ci, l) in c.iter_mut().zip(&self.eigenvalues) {
            *ci *= l.powf(-beta);
        }
        Ok(self.synthesize(&c))
    }

    /// Discrete dotted norm `(Σ λ_i^s ⟨f, ψ_i⟩²_M)^{1/2}`.
    pub fn dotted_norm(&self, s: f64, f: &Field) -> Result<f64> {
        let c = self.coefficients(f)?;
        Ok(c.iter()
            .zip(&self.eigenvalues)
            .map(|(ci, l)| l.powf(s) * ci * ci)
            .sum::<f64>()
            .sqrt())
    }
}
