use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is in the build
use num_traits::Float;

use crate::error::{Error, Result};

/// Bound on the ratio of consecutive interval lengths of the partition
/// `t_i = (i/N)^θ`: `2^θ - 1` for `θ > 1`, else `1`.
pub fn mesh_ratio_bound(theta: f64) -> Result<f64> {
    if !(theta > 0.0) || !theta.is_finite() {
        return Err(Error::InvalidParameter {
            name: "theta",
            value: theta,
            reason: "grading exponent must be positive",
        });
    }
    Ok(if theta > 1.0 {
        2.0.powf(theta) - 1.0
    } else {
        1.0
    })
}

/// Graded partition `0 = t_0 < t_1 < ... < t_N = 1` with `t_i = (i/N)^θ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedPartition {
    pub theta: f64,
    pub nodes: Vec<f64>,
}

impl GradedPartition {
    /// Number of subintervals.
    pub fn len(&self) -> usize {
        self.nodes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn intervals(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.windows(2).map(|w| (w[0], w[1]))
    }

    /// `max_i (t_{i+1} - t_i) / (t_i - t_{i-1})`, or 1 for a single interval.
    pub fn max_consecutive_ratio(&self) -> f64 {
        let lengths: Vec<f64> = self.intervals().map(|(a, b)| b - a).collect();
        lengths.windows(2).map(|w| w[1] / w[0]).fold(1.0, f64::max)
    }
}

pub fn graded_nodes(n: usize, theta: f64) -> Result<GradedPartition> {
    mesh_ratio_bound(theta)?;
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "N",
            value: 0.0,
            reason: "partition needs at least one interval",
        });
    }
    let nodes: Vec<f64> = (0..=n)
        .map(|i| {
            if i == n {
                1.0
            } else if theta == 1.0 {
                i as f64 / n as f64
            } else {
                (i as f64 / n as f64).powf(theta)
            }
        })
        .collect();
    if nodes.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Range("graded partition collapses in floating point"));
    }
    Ok(GradedPartition { theta, nodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_bound_values() {
        assert_eq!(mesh_ratio_bound(1.0).unwrap(), 1.0);
        assert_eq!(mesh_ratio_bound(2.0).unwrap(), 3.0);
        assert_eq!(mesh_ratio_bound(0.5).unwrap(), 1.0);
        assert!(mesh_ratio_bound(0.0).is_err());
        assert!(mesh_ratio_bound(-1.0).is_err());
    }

    #[test]
    fn uniform_and_quadratic_nodes() {
        let p = graded_nodes(4, 1.0).unwrap();
        assert_eq!(p.nodes, [0.0, 0.25, 0.5, 0.75, 1.0]);
        let p = graded_nodes(4, 2.0).unwrap();
        assert_eq!(p.nodes, [0.0, 1.0 / 16.0, 0.25, 9.0 / 16.0, 1.0]);
    }

    #[test]
    fn ratio_sixteen_intervals_theta_two() {
        let p = graded_nodes(16, 2.0).unwrap();
        // lengths (2i+1)/256, ratios (2i+1)/(2i-1); the first one is 3
        let brute = (1..16)
            .map(|i| (p.nodes[i + 1] - p.nodes[i]) / (p.nodes[i] - p.nodes[i - 1]))
            .fold(0.0, f64::max);
        assert!((brute - 3.0).abs() < 1e-12);
        assert!(p.max_consecutive_ratio() <= mesh_ratio_bound(2.0).unwrap() + 1e-12);
    }

    #[test]
    fn rejects_degenerate() {
        assert!(graded_nodes(0, 1.0).is_err());
        assert!(graded_nodes(4, 0.0).is_err());
        // (1/1000)^500 underflows
        assert!(graded_nodes(1000, 500.0).is_err());
    }
}
