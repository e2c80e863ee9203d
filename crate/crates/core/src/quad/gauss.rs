//! Gauss rules for the weight `t^γ` on `(a, b)`.
//!
//! For `a = 0` the three-term recurrence is the shifted Jacobi recurrence in
//! closed form. For `a > 0` the weight is analytic on `[a, b]` and the
//! recurrence comes from a discretized Stieltjes procedure on a composite
//! Gauss–Legendre rule, graded geometrically towards `a` when the interval
//! is wide relative to its distance from the origin. Nodes and weights then
//! follow from the Jacobi matrix (Golub–Welsch), and every rule is checked
//! against the closed-form moments before it is returned.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent methods when std is in the build
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::dense::tridiagonal_eigen_first_components;

/// Largest supported number of points.
pub const MAX_POINTS: usize = 16;
/// Relative tolerance of the moment check.
pub const MOMENT_TOLERANCE: f64 = 1e-10;

const DISCRETIZATION_POINTS: usize = 32;

/// `r`-point Gauss rule for `∫_a^b t^γ g(t) dt`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGaussRule {
    pub a: f64,
    pub b: f64,
    pub gamma: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl WeightedGaussRule {
    pub fn points(&self) -> usize {
        self.nodes.len()
    }

    pub fn integrate(&self, g: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * g(t))
            .sum()
    }
}

/// `∫_a^b t^{γ+k} dt` in closed form, accurate also when `a ≈ b`.
pub fn power_moment(a: f64, b: f64, gamma: f64, k: usize) -> f64 {
    let p = gamma + k as f64 + 1.0;
    if a == 0.0 {
        return b.powf(p) / p;
    }
    // b^p (1 - (a/b)^p) / p without cancellation
    let log_ratio = -((b - a) / a).ln_1p();
    b.powf(p) * -(p * log_ratio).exp_m1() / p
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct LegendreRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl LegendreRule {
    pub fn new(n: usize) -> Self {
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

pub fn weighted_gauss_rule(a: f64, b: f64, gamma: f64, r: usize) -> Result<WeightedGaussRule> {
    weighted_gauss_rule_with(&LegendreRule::new(DISCRETIZATION_POINTS), a, b, gamma, r)
}

/// Same as [`weighted_gauss_rule`] with a caller-provided discretization rule,
/// so that scheme constructors build the Legendre rule once.
pub fn weighted_gauss_rule_with(
    legendre: &LegendreRule,
    a: f64,
    b: f64,
    gamma: f64,
    r: usize,
) -> Result<WeightedGaussRule> {
    if r == 0 || r > MAX_POINTS {
        return Err(Error::InvalidParameter {
            name: "r",
            value: r as f64,
            reason: "number of Gauss points must be in 1..=16",
        });
    }
    if !(a >= 0.0) || !(b > a) || !b.is_finite() {
        return Err(Error::InvalidParameter {
            name: "interval",
            value: b,
            reason: "need 0 <= a < b < inf",
        });
    }
    if !(gamma > -1.0) || !gamma.is_finite() {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma,
            reason: "weight exponent must exceed -1",
        });
    }

    let (diag, off) = if a == 0.0 {
        jacobi_recurrence(b, gamma, r)
    } else {
        stieltjes_recurrence(legendre, a, b, gamma, r)
    };
    let (nodes, first) = tridiagonal_eigen_first_components(&diag, &off)?;
    let mu0 = power_moment(a, b, gamma, 0);
    let weights: Vec<f64> = first.iter().map(|z| mu0 * z * z).collect();

    let rule = WeightedGaussRule {
        a,
        b,
        gamma,
        nodes,
        weights,
    };
    let error = moment_error(&rule, r);
    let interior = rule.nodes.iter().all(|&t| t > a && t < b);
    let positive = rule.weights.iter().all(|&w| w > 0.0);
    if !(error <= MOMENT_TOLERANCE) || !interior || !positive {
        return Err(Error::IllConditioned {
            a,
            b,
            gamma,
            r,
            error,
        });
    }
    Ok(rule)
}

/// Worst relative error over the monomials `t^0 .. t^{2r-1}`.
fn moment_error(rule: &WeightedGaussRule, r: usize) -> f64 {
    (0..2 * r)
        .map(|k| {
            let exact = power_moment(rule.a, rule.b, rule.gamma, k);
            let quad = rule.integrate(|t| t.powi(k as i32));
            ((quad - exact) / exact).abs()
        })
        .fold(0.0, f64::max)
}

/// Monic Jacobi recurrence for `(1+x)^γ` on `[-1, 1]`, mapped to `t ∈ [0, b]`.
fn jacobi_recurrence(b: f64, gamma: f64, r: usize) -> (Vec<f64>, Vec<f64>) {
    let g = gamma;
    let mut diag = Vec::with_capacity(r);
    let mut off = Vec::with_capacity(r.saturating_sub(1));
    for k in 0..r {
        let kf = k as f64;
        let alpha = if k == 0 {
            g / (g + 2.0)
        } else {
            g * g / ((2.0 * kf + g) * (2.0 * kf + g + 2.0))
        };
        diag.push(0.5 * b * (alpha + 1.0));
        if k + 1 < r {
            let m = kf + 1.0;
            let beta = if k == 0 {
                4.0 * (1.0 + g) / ((2.0 + g) * (2.0 + g) * (3.0 + g))
            } else {
                let s = 2.0 * m + g;
                4.0 * m * m * (m + g) * (m + g) / (s * s * (s + 1.0) * (s - 1.0))
            };
            off.push(0.5 * b * beta.sqrt());
        }
    }
    (diag, off)
}

/// Discretized Stieltjes procedure in the local variable `s = (t-a)/(b-a)`.
fn stieltjes_recurrence(
    legendre: &LegendreRule,
    a: f64,
    b: f64,
    gamma: f64,
    r: usize,
) -> (Vec<f64>, Vec<f64>) {
    let len = b - a;
    // pieces [p_j, p_{j+1}] in t; each piece has length <= its left endpoint
    let mut breaks = vec![a];
    let mut left = a;
    while left < b {
        let right = (2.0 * left).min(b);
        breaks.push(right);
        left = right;
    }

    let mut s_pts = Vec::with_capacity((breaks.len() - 1) * legendre.nodes.len());
    let mut w_pts = Vec::with_capacity(s_pts.capacity());
    // scale the weight by a^{-γ} to keep values O(1); undone by μ0 later
    for piece in breaks.windows(2) {
        let (p, q) = (piece[0], piece[1]);
        let half = 0.5 * (q - p);
        let mid = 0.5 * (q + p);
        for (x, w) in legendre.nodes.iter().zip(&legendre.weights) {
            let t = mid + half * x;
            s_pts.push((t - a) / len);
            w_pts.push(w * half / len * (t / a).powf(gamma));
        }
    }

    let mut diag = Vec::with_capacity(r);
    let mut off = Vec::with_capacity(r.saturating_sub(1));
    let mut p_prev = vec![0.0; s_pts.len()];
    let mut p_cur = vec![1.0; s_pts.len()];
    let mut norm_prev = 1.0;
    let mut beta_prev = 0.0;
    for k in 0..r {
        let mut norm = 0.0;
        let mut first = 0.0;
        for ((w, s), p) in w_pts.iter().zip(&s_pts).zip(&p_cur) {
            norm += w * p * p;
            first += w * s * p * p;
        }
        let alpha = first / norm;
        if k > 0 {
            beta_prev = norm / norm_prev;
            off.push(len * beta_prev.sqrt());
        }
        diag.push(a + len * alpha);
        if k + 1 < r {
            for ((pp, pc), s) in p_prev.iter_mut().zip(p_cur.iter_mut()).zip(&s_pts) {
                let next = (s - alpha) * *pc - beta_prev * *pp;
                *pp = *pc;
                *pc = next;
            }
        }
        norm_prev = norm;
    }
    (diag, off)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_rule_is_exact() {
        let rule = LegendreRule::new(32);
        let total: f64 = rule.weights.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
        for k in (0..64).step_by(2) {
            let q: f64 = rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(x, w)| w * x.powi(k))
                .sum();
            assert!((q - 2.0 / (k as f64 + 1.0)).abs() < 1e-13, "k = {k}");
        }
    }

    #[test]
    fn midpoint_rule() {
        let rule = weighted_gauss_rule(0.0, 1.0, 0.0, 1).unwrap();
        assert!((rule.nodes[0] - 0.5).abs() < 1e-15);
        assert!((rule.weights[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn two_point_legendre_on_unit_interval() {
        let rule = weighted_gauss_rule(0.0, 1.0, 0.0, 2).unwrap();
        let d = 0.5 / 3.0f64.sqrt();
        assert!((rule.nodes[0] - (0.5 - d)).abs() < 1e-15);
        assert!((rule.nodes[1] - (0.5 + d)).abs() < 1e-15);
        assert!((rule.weights[0] - 0.5).abs() < 1e-15);
        assert!((rule.weights[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn inverse_square_root_weight_one_point() {
        // m0 = ∫ t^{-1/2} = 2, m1 = ∫ t^{1/2} = 2/3, node = m1/m0
        let rule = weighted_gauss_rule(0.0, 1.0, -0.5, 1).unwrap();
        assert!((rule.weights[0] - 2.0).abs() < 1e-14);
        assert!((rule.nodes[0] - 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn shifted_interval_matches_centroid() {
        // one-point rule on (a,b) with a > 0 sits at m1/m0
        let (a, b, g) = (0.3, 0.45, 0.4);
        let rule = weighted_gauss_rule(a, b, g, 1).unwrap();
        let centroid = power_moment(a, b, g, 1) / power_moment(a, b, g, 0);
        assert!((rule.nodes[0] - centroid).abs() < 1e-14);
    }

    #[test]
    fn narrow_interval_far_from_origin() {
        // dyadic pieces: [2^-30, 2^-30 (1 + 1/64)]
        let a = 2.0f64.powi(-30);
        let b = a * (1.0 + 1.0 / 64.0);
        for r in 1..=5 {
            let rule = weighted_gauss_rule(a, b, -0.8, r).unwrap();
            assert_eq!(rule.points(), r);
        }
    }

    #[test]
    fn wide_interval_close_to_origin() {
        // graded partitions produce (t_1, t_2) = (N^-θ, (2/N)^θ) with large θ
        let a = 1e-40;
        let b = 1e-30;
        let rule = weighted_gauss_rule(a, b, -0.9, 3).unwrap();
        assert!(rule.nodes.iter().all(|&t| t > a && t < b));
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(weighted_gauss_rule(0.0, 1.0, 0.0, 0).is_err());
        assert!(weighted_gauss_rule(0.0, 1.0, -1.0, 1).is_err());
        assert!(weighted_gauss_rule(1.0, 1.0, 0.0, 1).is_err());
        assert!(weighted_gauss_rule(-0.1, 1.0, 0.0, 1).is_err());
    }

    #[test]
    fn moment_closed_form_accuracy() {
        let a = 1.0;
        let b = 1.0 + 1e-9;
        let d = b - a;
        // ∫_a^b t^{1/2} = d (1 + d/4 + O(d²)) near a = 1
        let m = power_moment(a, b, 0.5, 0);
        assert!((m - d * (1.0 + d / 4.0)).abs() < 1e-12 * d);
    }
}
