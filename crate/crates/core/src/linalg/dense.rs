//! Dense row-major kernels: Cholesky factorization and the symmetric
//! eigenproblem (Householder tridiagonalization followed by implicit QL).

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is in the build
use num_traits::Float;

use crate::error::{Error, Result};

const QL_MAX_SWEEPS: usize = 60;

/// In-place lower Cholesky factor `A = L Lᵀ` of a row-major `n × n` matrix.
/// The strict upper triangle is zeroed.
pub fn cholesky_in_place(a: &mut [f64], n: usize) -> Result<()> {
    assert_eq!(a.len(), n * n);
    for j in 0..n {
        let mut d = a[j * n + j];
        for k in 0..j {
            d -= a[j * n + k] * a[j * n + k];
        }
        if !(d > 0.0) {
            return Err(Error::NotPositiveDefinite { pivot: j, value: d });
        }
        let d = d.sqrt();
        a[j * n + j] = d;
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / d;
        }
        for k in j + 1..n {
            a[j * n + k] = 0.0;
        }
    }
    Ok(())
}

/// Solves `L x = b` in place for lower-triangular row-major `L`.
pub fn forward_substitute(l: &[f64], n: usize, b: &mut [f64]) {
    for i in 0..n {
        let mut s = b[i];
        let row = &l[i * n..i * n + i];
        for (k, lik) in row.iter().enumerate() {
            s -= lik * b[k];
        }
        b[i] = s / l[i * n + i];
    }
}

/// Solves `Lᵀ x = b` in place for lower-triangular row-major `L`.
pub fn backward_substitute_transposed(l: &[f64], n: usize, b: &mut [f64]) {
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in i + 1..n {
            s -= l[k * n + i] * b[k];
        }
        b[i] = s / l[i * n + i];
    }
}

/// Eigenvalues (ascending) and eigenvectors of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    /// Row-major; column `j` is the eigenvector of `values[j]`.
    pub vectors: Vec<f64>,
    pub n: usize,
}

impl SymmetricEigen {
    pub fn vector(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.vectors[i * self.n + j]).collect()
    }
}

/// Full eigendecomposition of a symmetric row-major matrix (only the lower
/// triangle is read).
pub fn symmetric_eigen(a: &[f64], n: usize) -> Result<SymmetricEigen> {
    assert_eq!(a.len(), n * n);
    if n == 0 {
        return Ok(SymmetricEigen {
            values: Vec::new(),
            vectors: Vec::new(),
            n,
        });
    }
    let mut v = a.to_vec();
    // symmetrize from the lower triangle
    for i in 0..n {
        for j in i + 1..n {
            v[i * n + j] = v[j * n + i];
        }
    }
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    householder_tridiagonalize(&mut v, n, &mut d, &mut e);
    tridiagonal_ql(&mut d, &mut e, &mut v, n, n)?;
    sort_ascending(&mut d, &mut v, n, n);
    Ok(SymmetricEigen {
        values: d,
        vectors: v,
        n,
    })
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// sub-diagonal `off` (length `n - 1`), together with the first component
/// of each normalized eigenvector. Used for Golub–Welsch.
pub fn tridiagonal_eigen_first_components(
    diag: &[f64],
    off: &[f64],
) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    assert_eq!(off.len() + 1, n.max(1));
    let mut d = diag.to_vec();
    // tridiagonal_ql expects e[i] = sub-diagonal entry (i, i-1) with e[0] unused
    let mut e = vec![0.0; n];
    e[1..n].copy_from_slice(off);
    let mut z = vec![0.0; n];
    z[0] = 1.0;
    tridiagonal_ql(&mut d, &mut e, &mut z, n, 1)?;
    sort_ascending(&mut d, &mut z, n, 1);
    Ok((d, z))
}

/// Householder reduction of a symmetric matrix to tridiagonal form
/// (EISPACK `tred2`). On return `v` holds the orthogonal transformation,
/// `d` the diagonal and `e[1..]` the sub-diagonal.
fn householder_tridiagonalize(v: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64]) {
    for j in 0..n {
        d[j] = v[(n - 1) * n + j];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for dk in d.iter().take(i) {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[(i - 1) * n + j];
                v[i * n + j] = 0.0;
                v[j * n + i] = 0.0;
            }
        } else {
            for dk in d.iter_mut().take(i) {
                *dk /= scale;
                h += *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = 0.0;
            }
            for j in 0..i {
                f = d[j];
                v[j * n + i] = f;
                g = e[j] + v[j * n + j] * f;
                for k in j + 1..i {
                    g += v[k * n + j] * d[k];
                    e[k] += v[k * n + j] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[k * n + j] -= f * e[k] + g * d[k];
                }
                d[j] = v[(i - 1) * n + j];
                v[i * n + j] = 0.0;
            }
        }
        d[i] = h;
    }

    // accumulate transformations
    for i in 0..n - 1 {
        v[(n - 1) * n + i] = v[i * n + i];
        v[i * n + i] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[k * n + i + 1] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[k * n + i + 1] * v[k * n + j];
                }
                for k in 0..=i {
                    v[k * n + j] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[k * n + i + 1] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[(n - 1) * n + j];
        v[(n - 1) * n + j] = 0.0;
    }
    v[(n - 1) * n + (n - 1)] = 1.0;
    e[0] = 0.0;
}

/// Implicit QL iteration on a symmetric tridiagonal matrix (EISPACK `tql2`).
/// `z` is row-major with `rows` rows and `n` columns; its columns are rotated
/// along with the iteration, so passing the tridiagonalizing transform gives
/// eigenvectors and passing the first unit row gives first components.
fn tridiagonal_ql(
    d: &mut [f64],
    e: &mut [f64],
    z: &mut [f64],
    n: usize,
    rows: usize,
) -> Result<()> {
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    let eps = f64::EPSILON;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut sweeps = 0;
            loop {
                sweeps += 1;
                if sweeps > QL_MAX_SWEEPS {
                    return Err(Error::EigenNoConvergence { index: l });
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    for k in 0..rows {
                        let zi1 = z[k * n + i + 1];
                        let zi = z[k * n + i];
                        z[k * n + i + 1] = s * zi + c * zi1;
                        z[k * n + i] = c * zi - s * zi1;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}

fn sort_ascending(d: &mut [f64], z: &mut [f64], n: usize, rows: usize) {
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        let mut p = d[i];
        for (j, &dj) in d.iter().enumerate().take(n).skip(i + 1) {
            if dj < p {
                k = j;
                p = dj;
            }
        }
        if k != i {
            d.swap(i, k);
            for r in 0..rows {
                z.swap(r * n + i, r * n + k);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_spd(n: usize, seed: u64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b: Vec<f64> = (0..n * n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += b[i * n + k] * b[j * n + k];
                }
                a[i * n + j] = s + if i == j { n as f64 } else { 0.0 };
            }
        }
        a
    }

    #[test]
    fn cholesky_reconstructs() {
        let n = 7;
        let a = random_spd(n, 3);
        let mut l = a.clone();
        cholesky_in_place(&mut l, n).unwrap();
        for i in 0..n {
            for j in 0..n {
                let s: f64 = (0..n).map(|k| l[i * n + k] * l[j * n + k]).sum();
                assert!((s - a[i * n + j]).abs() < 1e-12);
            }
        }
        let mut x: Vec<f64> = (0..n).map(|i| i as f64).collect();
        let b = x.clone();
        forward_substitute(&l, n, &mut x);
        backward_substitute_transposed(&l, n, &mut x);
        for i in 0..n {
            let s: f64 = (0..n).map(|k| a[i * n + k] * x[k]).sum();
            assert!((s - b[i]).abs() < 1e-11);
        }
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let mut a = vec![1.0, 2.0, 2.0, 1.0];
        assert!(matches!(
            cholesky_in_place(&mut a, 2),
            Err(Error::NotPositiveDefinite { pivot: 1, .. })
        ));
    }

    #[test]
    fn eigen_residual_and_orthogonality() {
        for &n in &[1usize, 2, 5, 30] {
            let a = random_spd(n, n as u64);
            let eig = symmetric_eigen(&a, n).unwrap();
            for w in eig.values.windows(2) {
                assert!(w[0] <= w[1]);
            }
            for j in 0..n {
                let v = eig.vector(j);
                for i in 0..n {
                    let av: f64 = (0..n).map(|k| a[i * n + k] * v[k]).sum();
                    assert!((av - eig.values[j] * v[i]).abs() < 1e-10 * eig.values[n - 1]);
                }
                for k in 0..n {
                    let vk = eig.vector(k);
                    let d: f64 = v.iter().zip(&vk).map(|(x, y)| x * y).sum();
                    let expect = if j == k { 1.0 } else { 0.0 };
                    assert!((d - expect).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn tridiagonal_first_components() {
        // Legendre Jacobi matrix for 2 points: nodes ±1/√3, weights 1 (μ0 = 2)
        let (x, z) =
            tridiagonal_eigen_first_components(&[0.0, 0.0], &[1.0 / 3.0f64.sqrt()]).unwrap();
        assert!((x[0] + 1.0 / 3.0f64.sqrt()).abs() < 1e-15);
        assert!((x[1] - 1.0 / 3.0f64.sqrt()).abs() < 1e-15);
        assert!((2.0 * z[0] * z[0] - 1.0).abs() < 1e-15);
        assert!((2.0 * z[1] * z[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn known_spectrum_of_path_laplacian() {
        let n = 12;
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            a[i * n + i] = 2.0;
            if i + 1 < n {
                a[i * n + i + 1] = -1.0;
                a[(i + 1) * n + i] = -1.0;
            }
        }
        let eig = symmetric_eigen(&a, n).unwrap();
        for (k, lam) in eig.values.iter().enumerate() {
            let theta = (k + 1) as f64 * core::f64::consts::PI / (n + 1) as f64;
            assert!((lam - (2.0 - 2.0 * theta.cos())).abs() < 1e-13);
        }
    }
}
