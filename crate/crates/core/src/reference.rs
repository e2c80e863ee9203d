//! The checkerboard source and the exact solution of `(−Δ)^β u = f` on the
//! unit square with zero boundary values, as a truncated double sine series.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent methods when std is in the build
use num_traits::Float;

use crate::beta::Beta;
use crate::error::{Error, Result};

/// Default truncation per direction.
pub const DEFAULT_MODES: usize = 300;

/// 1 on the lower-left and upper-right quarters, 0 elsewhere.
pub fn checkerboard(x: f64, y: f64) -> f64 {
    if (x - 0.5) * (y - 0.5) > 0.0 {
        1.0
    } else {
        0.0
    }
}

fn cos_quarter(m: usize) -> f64 {
    // cos(mπ/2)
    match m % 4 {
        0 => 1.0,
        2 => -1.0,
        _ => 0.0,
    }
}

/// `(∫_0^{1/2} sin(mπx) dx, ∫_{1/2}^1 sin(mπx) dx)`.
fn half_integrals(m: usize) -> (f64, f64) {
    let mp = m as f64 * PI;
    let c_half = cos_quarter(m);
    let c_full = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    ((1.0 - c_half) / mp, (c_half - c_full) / mp)
}

/// Coefficient of `sin(mπx) sin(nπy)` in the checkerboard, `m, n ≥ 1`.
pub fn checkerboard_sine_coeff(m: usize, n: usize) -> f64 {
    assert!(m >= 1 && n >= 1, "sine modes start at 1");
    let (lm, rm) = half_integrals(m);
    let (ln, rn) = half_integrals(n);
    4.0 * (lm * ln + rm * rn)
}

/// Coefficient of `sin(mπx) sin(nπy)` in the constant function 1.
pub fn constant_sine_coeff(m: usize, n: usize) -> f64 {
    assert!(m >= 1 && n >= 1, "sine modes start at 1");
    if m % 2 == 1 && n % 2 == 1 {
        16.0 / (PI * PI * (m * n) as f64)
    } else {
        0.0
    }
}

/// `Σ_{m,n ≤ K} a_{mn} sin(mπx) sin(nπy)` with
/// `a_{mn} = (π²(m²+n²))^{−s} c_{mn}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SineSeries {
    pub modes: usize,
    pub exponent: f64,
    /// Row `m-1`, column `n-1`.
    coeffs: Vec<f64>,
}

impl SineSeries {
    /// `(−Δ)^{−s}` applied to the series with coefficients `c(m, n)`.
    pub fn with_exponent(
        exponent: f64,
        modes: usize,
        c: impl Fn(usize, usize) -> f64,
    ) -> Result<Self> {
        if modes == 0 {
            return Err(Error::InvalidParameter {
                name: "modes",
                value: 0.0,
                reason: "need at least one mode",
            });
        }
        let mut coeffs = vec![0.0; modes * modes];
        for m in 1..=modes {
            for n in 1..=modes {
                let lambda = PI * PI * ((m * m + n * n) as f64);
                coeffs[(m - 1) * modes + n - 1] = lambda.powf(-exponent) * c(m, n);
            }
        }
        if coeffs.iter().any(|a| !a.is_finite()) {
            return Err(Error::Range("sine coefficient overflow"));
        }
        Ok(SineSeries {
            modes,
            exponent,
            coeffs,
        })
    }

    /// `u = (−Δ)^{−β} f` for the checkerboard `f`.
    pub fn exact_solution(beta: Beta, modes: usize) -> Result<Self> {
        Self::with_exponent(beta.value(), modes, checkerboard_sine_coeff)
    }

    /// The checkerboard itself (exponent 0).
    pub fn checkerboard_source(modes: usize) -> Result<Self> {
        Self::with_exponent(0.0, modes, checkerboard_sine_coeff)
    }

    pub fn coefficient(&self, m: usize, n: usize) -> f64 {
        self.coeffs[(m - 1) * self.modes + n - 1]
    }

    pub fn evaluate_at(&self, x: f64, y: f64) -> f64 {
        let k = self.modes;
        let sx: Vec<f64> = (1..=k).map(|m| (m as f64 * PI * x).sin()).collect();
        let sy: Vec<f64> = (1..=k).map(|n| (n as f64 * PI * y).sin()).collect();
        let mut s = 0.0;
        for (m, sxm) in sx.iter().enumerate() {
            let row = &self.coeffs[m * k..(m + 1) * k];
            let inner: f64 = row.iter().zip(&sy).map(|(a, b)| a * b).sum();
            s += sxm * inner;
        }
        s
    }

    /// Values at many points, sharing sine tables between points with equal
    /// coordinates.
    pub fn evaluate(&self, points: &[[f64; 2]]) -> Vec<f64> {
        let k = self.modes;
        let (xs, x_of) = distinct(points.iter().map(|p| p[0]));
        let (ys, y_of) = distinct(points.iter().map(|p| p[1]));
        let table = |coords: &[f64]| -> Vec<f64> {
            // row per coordinate, column per mode
            let mut t = Vec::with_capacity(coords.len() * k);
            for &c in coords {
                t.extend((1..=k).map(|m| (m as f64 * PI * c).sin()));
            }
            t
        };
        let sx = table(&xs);
        let sy = table(&ys);
        // g[ix][n] = Σ_m a_{mn} sin(mπx)
        let mut g = vec![0.0; xs.len() * k];
        for ix in 0..xs.len() {
            let gx = &mut g[ix * k..(ix + 1) * k];
            for m in 0..k {
                let s = sx[ix * k + m];
                let row = &self.coeffs[m * k..(m + 1) * k];
                for (gv, a) in gx.iter_mut().zip(row) {
                    *gv += s * a;
                }
            }
        }
        x_of.iter()
            .zip(&y_of)
            .map(|(&ix, &iy)| {
                g[ix * k..(ix + 1) * k]
                    .iter()
                    .zip(&sy[iy * k..(iy + 1) * k])
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `‖u_K‖²_{L₂} = Σ a²/4`.
    pub fn l2_norm_squared(&self) -> f64 {
        self.coeffs.iter().map(|a| a * a).sum::<f64>() / 4.0
    }

    /// Rigorous bound on the L₂ norm of the checkerboard modes left out,
    /// from `|c_{mn}| ≤ 32/(π² m n)`.
    pub fn tail_bound(&self) -> f64 {
        let s = self.exponent;
        let k = self.modes as f64;
        let per_side =
            256.0 / PI.powi(4) * PI.powf(-4.0 * s) * (PI * PI / 6.0) * k.powf(-1.0 - 4.0 * s)
                / (1.0 + 4.0 * s);
        (2.0 * per_side).sqrt()
    }

    /// L₂ norm of the checkerboard modes with `K < max(m, n) ≤ 2K`, a lower
    /// estimate of the truncation error.
    pub fn tail_estimate(&self) -> f64 {
        let k = self.modes;
        let mut sum = 0.0;
        for m in 1..=2 * k {
            for n in 1..=2 * k {
                if m <= k && n <= k {
                    continue;
                }
                let lambda = PI * PI * ((m * m + n * n) as f64);
                let a = lambda.powf(-self.exponent) * checkerboard_sine_coeff(m, n);
                sum += a * a;
            }
        }
        (sum / 4.0).sqrt()
    }
}

/// Sorted distinct values and the index of each input in them.
fn distinct(values: impl Iterator<Item = f64> + Clone) -> (Vec<f64>, Vec<usize>) {
    let mut sorted: Vec<f64> = values.clone().collect();
    sorted.sort_by(f64::total_cmp);
    sorted.dedup_by(|a, b| a.to_bits() == b.to_bits());
    let idx = values
        .map(|v| sorted.binary_search_by(|p| p.total_cmp(&v)).unwrap_or(0))
        .collect();
    (sorted, idx)
}
