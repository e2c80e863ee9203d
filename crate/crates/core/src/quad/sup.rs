use alloc::string::{String, ToString};
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is in the build
use num_traits::Float;

use super::scheme::{error_unchecked, QuadratureScheme};
use crate::error::{Error, Result};

/// Log-uniform scan of `λ ↦ |λ^{-β} - Q(λ)|` on `[λ₀, ∞)` followed by local
/// refinement around the largest sample.
///
/// The scan uses `points_per_decade` samples per decade and stops once `λ`
/// has passed `min_end`, the maximum has not moved for `patience` samples and
/// those samples are non-increasing (or negligible against the maximum). It
/// never goes beyond `max_lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupSearch {
    pub lambda0: f64,
    pub points_per_decade: usize,
    pub min_end: f64,
    pub patience: usize,
    pub max_lambda: f64,
    pub refine_levels: usize,
    pub refine_points: usize,
}

impl Default for SupSearch {
    fn default() -> Self {
        SupSearch {
            lambda0: 1.0,
            points_per_decade: 20,
            min_end: 1e8,
            patience: 40,
            max_lambda: 1e30,
            refine_levels: 3,
            refine_points: 21,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupErrorReport {
    pub sup_error: f64,
    pub argmax_lambda: f64,
    /// Number of error evaluations, scan and refinement together.
    pub lambdas_scanned: usize,
    /// `(λ, error)` along the log-uniform scan.
    pub samples: Vec<(f64, f64)>,
    pub scheme: String,
}

/// Negligible relative to the running maximum.
const NEGLIGIBLE: f64 = 1e-8;

impl SupSearch {
    pub fn with_lambda0(lambda0: f64) -> Self {
        SupSearch {
            lambda0,
            ..Self::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.lambda0 > 0.0) || !self.lambda0.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda0",
                value: self.lambda0,
                reason: "must be positive and finite",
            });
        }
        if self.points_per_decade == 0 || self.refine_points < 3 {
            return Err(Error::InvalidParameter {
                name: "points_per_decade",
                value: self.points_per_decade as f64,
                reason: "need a nonempty scan and at least 3 refinement points",
            });
        }
        if !(self.max_lambda > self.lambda0) {
            return Err(Error::InvalidParameter {
                name: "max_lambda",
                value: self.max_lambda,
                reason: "must exceed lambda0",
            });
        }
        Ok(())
    }

    pub fn run(&self, scheme: &QuadratureScheme) -> Result<SupErrorReport> {
        let mut report = self.run_with(|lambda| error_unchecked(scheme, lambda))?;
        report.scheme = scheme.to_string();
        Ok(report)
    }

    /// Same search for an arbitrary nonnegative error curve.
    pub fn run_with(&self, error: impl Fn(f64) -> f64) -> Result<SupErrorReport> {
        self.validate()?;
        let ppd = self.points_per_decade as f64;
        let lambda_at = |i: usize| self.lambda0 * 10.0.powf(i as f64 / ppd);

        let mut samples: Vec<(f64, f64)> = Vec::new();
        let mut best = 0usize;
        let mut i = 0usize;
        loop {
            let lambda = lambda_at(i);
            if lambda > self.max_lambda {
                break;
            }
            let e = error(lambda);
            if !e.is_finite() {
                return Err(Error::Range("error curve is not finite"));
            }
            samples.push((lambda, e));
            if e > samples[best].1 {
                best = i;
            }
            if lambda >= self.min_end
                && i - best >= self.patience
                && self.tail_settled(&samples, samples[best].1)
            {
                break;
            }
            i += 1;
        }
        let mut evaluations = samples.len();

        // refine in log λ around the best scan sample
        let (mut arg, mut max) = samples[best];
        let mut half_width = 1.0 / ppd;
        for _ in 0..self.refine_levels {
            let center = arg.log10();
            let lo = (center - half_width).max(self.lambda0.log10());
            let hi = center + half_width;
            let m = self.refine_points;
            for j in 0..m {
                let lambda = 10.0.powf(lo + (hi - lo) * j as f64 / (m - 1) as f64);
                let e = error(lambda);
                evaluations += 1;
                if e > max {
                    max = e;
                    arg = lambda;
                }
            }
            half_width /= 10.0;
        }

        Ok(SupErrorReport {
            sup_error: max,
            argmax_lambda: arg,
            lambdas_scanned: evaluations,
            samples,
            scheme: String::new(),
        })
    }

    fn tail_settled(&self, samples: &[(f64, f64)], max: f64) -> bool {
        let start = samples.len().saturating_sub(self.patience + 1);
        samples[start..]
            .windows(2)
            .all(|w| w[1].1 <= w[0].1 || w[1].1 < NEGLIGIBLE * max)
    }
}

/// `sup_{λ ≥ λ₀} |λ^{-β} - Q(λ)|` with the default search.
pub fn sup_error(scheme: &QuadratureScheme, lambda0: f64) -> Result<SupErrorReport> {
    SupSearch::with_lambda0(lambda0).run(scheme)
}
