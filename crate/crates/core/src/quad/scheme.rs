use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

#[allow(unused_imports)] // shadowed by inherent methods when std is in the build
use num_traits::Float;

use super::gauss::{power_moment, weighted_gauss_rule_with, LegendreRule};
use super::graded::graded_nodes;
use crate::beta::{c_beta, Beta};
use crate::error::{Error, Result};

const DISCRETIZATION_POINTS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SchemeKind {
    Rectangle,
    GaussDyadic,
    Exponential,
}

impl fmt::Display for SchemeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SchemeKind::Rectangle => "rect",
            SchemeKind::GaussDyadic => "gauss",
            SchemeKind::Exponential => "exp",
        })
    }
}

/// How many dyadic intervals `[2^-i, 2^-i+1]` each integral gets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MChoice {
    /// One count for both integrals: `⌈r log₂N / min(β, 1-β)⌉`.
    Combined,
    /// `M₁ = ⌈r log₂N / β⌉`, `M₂ = ⌈r log₂N / (1-β)⌉`.
    #[default]
    PerIntegral,
    /// `M₁ = ⌊r log₂(2N) / β⌋ + 1`, `M₂ = ⌊r log₂(2N) / (1-β)⌋ + 1`; the counts
    /// behind the published two-point dyadic error table.
    Reported,
}

/// Which resolvent a node feeds: `T₁(t) = (I + t²L)^{-1}` or
/// `T₂(t) = (t²I + L)^{-1} = t^{-2} T₁(1/t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResolventFamily {
    T1,
    T2,
}

/// One term `weight · T_family(t)` of a fully normalized scheme, so that
/// `λ^{-β} ≈ Σ weight · r_family(t, λ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolventNode {
    pub family: ResolventFamily,
    pub t: f64,
    pub weight: f64,
}

impl ResolventNode {
    /// Scalar kernel at `λ`.
    #[inline]
    pub fn kernel(&self, lambda: f64) -> f64 {
        match self.family {
            ResolventFamily::T1 => 1.0 / (1.0 + self.t * self.t * lambda),
            ResolventFamily::T2 => 1.0 / (self.t * self.t + lambda),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeParams {
    Rectangle {
        n: usize,
        /// grading exponents of the two partitions
        theta1: f64,
        theta2: f64,
    },
    GaussDyadic {
        n: usize,
        r: usize,
        m1: usize,
        m2: usize,
        m_choice: MChoice,
    },
    Exponential {
        k: f64,
        /// nodes `y_ℓ = ℓk` for `ℓ = -left ..= right`
        left: usize,
        right: usize,
        equalized: bool,
    },
}

/// A fully materialized quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureScheme {
    pub kind: SchemeKind,
    pub beta: Beta,
    pub params: SchemeParams,
    /// Nodes/weights approximating `∫_0^1 t^{2β-1} f¹_λ(t) dt` (not divided by `C_β`).
    pub t1_nodes: Vec<f64>,
    pub t1_weights: Vec<f64>,
    /// Nodes/weights approximating `∫_0^1 t^{1-2β} f²_λ(t) dt`.
    pub t2_nodes: Vec<f64>,
    pub t2_weights: Vec<f64>,
    /// `y_ℓ` for the exponential rule (empty otherwise).
    pub exp_nodes: Vec<f64>,
}

impl QuadratureScheme {
    /// Number of resolvent solves the operator version needs.
    pub fn nsys(&self) -> usize {
        self.t1_nodes.len() + self.t2_nodes.len() + self.exp_nodes.len()
    }

    /// Grid parameter shown in tables: `N` for rectangle/Gauss, `k` for exponential.
    pub fn size_param(&self) -> f64 {
        match self.params {
            SchemeParams::Rectangle { n, .. } | SchemeParams::GaussDyadic { n, .. } => n as f64,
            SchemeParams::Exponential { k, .. } => k,
        }
    }

    /// The normalized terms in evaluation order: the `T₁` family then the
    /// `T₂` family, or the exponential nodes in increasing `ℓ`.
    pub fn resolvent_terms(&self) -> Vec<ResolventNode> {
        let beta = self.beta.value();
        match self.params {
            SchemeParams::Exponential { k, .. } => {
                let scale = 2.0 * k * (PI * beta).sin() / PI;
                self.exp_nodes
                    .iter()
                    .map(|&y| ResolventNode {
                        family: ResolventFamily::T1,
                        t: y.exp(),
                        weight: scale * (2.0 * beta * y).exp(),
                    })
                    .collect()
            }
            _ => {
                let inv_c = 1.0 / c_beta(self.beta);
                let t1 = self
                    .t1_nodes
                    .iter()
                    .zip(&self.t1_weights)
                    .map(|(&t, &w)| ResolventNode {
                        family: ResolventFamily::T1,
                        t,
                        weight: w * inv_c,
                    });
                let t2 = self
                    .t2_nodes
                    .iter()
                    .zip(&self.t2_weights)
                    .map(|(&t, &w)| ResolventNode {
                        family: ResolventFamily::T2,
                        t,
                        weight: w * inv_c,
                    });
                t1.chain(t2).collect()
            }
        }
    }
}

impl fmt::Display for QuadratureScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let beta = self.beta.value();
        match self.params {
            SchemeParams::Rectangle { n, .. } => {
                write!(f, "rect(beta={beta}, N={n}, nsys={})", self.nsys())
            }
            SchemeParams::GaussDyadic { n, r, m1, m2, .. } => write!(
                f,
                "gauss(beta={beta}, N={n}, r={r}, M1={m1}, M2={m2}, nsys={})",
                self.nsys()
            ),
            SchemeParams::Exponential { k, left, right, .. } => write!(
                f,
                "exp(beta={beta}, k={k}, M={left}, N={right}, nsys={})",
                self.nsys()
            ),
        }
    }
}

fn positive_count(name: &'static str, value: usize, min: usize) -> Result<()> {
    if value < min {
        return Err(Error::InvalidParameter {
            name,
            value: value as f64,
            reason: "count too small",
        });
    }
    Ok(())
}

/// Graded rectangle rule with a one-point weighted Gauss node per subinterval.
pub fn rectangle_scheme(beta: Beta, n: usize) -> Result<QuadratureScheme> {
    let beta = beta.check_scheme_range()?;
    positive_count("N", n, 1)?;
    let b = beta.value();
    let gamma1 = 2.0 * b - 1.0;
    let gamma2 = 1.0 - 2.0 * b;
    // cases (i)/(ii) and (iii)/(iv): grade only where the weight is singular
    let theta1 = if gamma1 < 0.0 { 1.0 / (2.0 * b) } else { 1.0 };
    let theta2 = if gamma2 < 0.0 {
        1.0 / (2.0 - 2.0 * b)
    } else {
        1.0
    };

    let legendre = LegendreRule::new(DISCRETIZATION_POINTS);
    let family = |theta: f64, gamma: f64| -> Result<(Vec<f64>, Vec<f64>)> {
        let part = graded_nodes(n, theta)?;
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for (lo, hi) in part.intervals() {
            let rule = weighted_gauss_rule_with(&legendre, lo, hi, gamma, 1)?;
            nodes.push(rule.nodes[0]);
            weights.push(power_moment(lo, hi, gamma, 0));
        }
        Ok((nodes, weights))
    };
    let (t1_nodes, t1_weights) = family(theta1, gamma1)?;
    let (t2_nodes, t2_weights) = family(theta2, gamma2)?;
    Ok(QuadratureScheme {
        kind: SchemeKind::Rectangle,
        beta,
        params: SchemeParams::Rectangle { n, theta1, theta2 },
        t1_nodes,
        t1_weights,
        t2_nodes,
        t2_weights,
        exp_nodes: Vec::new(),
    })
}

/// Interval counts `(M₁, M₂)` for the dyadic Gauss rule.
pub(crate) fn dyadic_counts(beta: f64, n: usize, r: usize, choice: MChoice) -> (usize, usize) {
    let log2n = if n.is_power_of_two() {
        n.trailing_zeros() as f64
    } else {
        (n as f64).log2()
    };
    let rl = r as f64 * log2n;
    let up = |x: f64| (x - 1e-9).ceil().max(0.0) as usize;
    match choice {
        MChoice::Combined => {
            let m = up(rl / beta.min(1.0 - beta));
            (m, m)
        }
        MChoice::PerIntegral => (up(rl / beta), up(rl / (1.0 - beta))),
        MChoice::Reported => {
            let rl2 = r as f64 * (log2n + 1.0);
            let down = |x: f64| (x + 1e-9).floor() as usize + 1;
            (down(rl2 / beta), down(rl2 / (1.0 - beta)))
        }
    }
}

/// `r`-point weighted Gauss rules on `N` uniform pieces of each dyadic
/// interval `[2^-i, 2^-i+1]`, `i = 1..M`; the piece `[0, 2^-M]` is dropped.
pub fn dyadic_gauss_scheme(
    beta: Beta,
    n: usize,
    r: usize,
    m_choice: MChoice,
) -> Result<QuadratureScheme> {
    let beta = beta.check_scheme_range()?;
    positive_count("N", n, 2)?;
    positive_count("r", r, 1)?;
    let b = beta.value();
    let (m1, m2) = dyadic_counts(b, n, r, m_choice);

    let legendre = LegendreRule::new(DISCRETIZATION_POINTS);
    let family = |m: usize, gamma: f64| -> Result<(Vec<f64>, Vec<f64>)> {
        let mut nodes = Vec::with_capacity(m * n * r);
        let mut weights = Vec::with_capacity(m * n * r);
        for i in 1..=m {
            let left = 2.0.powi(-(i as i32));
            let piece = left / n as f64;
            for j in 0..n {
                let lo = left + j as f64 * piece;
                let hi = if j + 1 == n {
                    2.0 * left
                } else {
                    left + (j + 1) as f64 * piece
                };
                let rule = weighted_gauss_rule_with(&legendre, lo, hi, gamma, r)?;
                nodes.extend_from_slice(&rule.nodes);
                weights.extend_from_slice(&rule.weights);
            }
        }
        Ok((nodes, weights))
    };
    let (t1_nodes, t1_weights) = family(m1, 2.0 * b - 1.0)?;
    let (t2_nodes, t2_weights) = family(m2, 1.0 - 2.0 * b)?;
    Ok(QuadratureScheme {
        kind: SchemeKind::GaussDyadic,
        beta,
        params: SchemeParams::GaussDyadic {
            n,
            r,
            m1,
            m2,
            m_choice,
        },
        t1_nodes,
        t1_weights,
        t2_nodes,
        t2_weights,
        exp_nodes: Vec::new(),
    })
}

/// Sinc rule in `y = ln t`. With `equalize`, `ℓ = -M..N` where
/// `M = ⌈π²/(4βk²)⌉`, `N = ⌈π²/(4(1-β)k²)⌉`; otherwise the symmetric rule
/// with `N = ⌈1/k²⌉` and step `1/√N`.
pub fn exponential_scheme(beta: Beta, k: f64, equalize: bool) -> Result<QuadratureScheme> {
    if !(k > 0.0) || !k.is_finite() {
        return Err(Error::InvalidParameter {
            name: "k",
            value: k,
            reason: "step must be positive",
        });
    }
    if equalize {
        let beta = beta.check_scheme_range()?;
        let b = beta.value();
        let base = PI * PI / (4.0 * k * k);
        let left = (base / b - 1e-9).ceil() as usize;
        let right = (base / (1.0 - b) - 1e-9).ceil() as usize;
        build_exponential(beta, k, left, right, true)
    } else {
        let n = (1.0 / (k * k) - 1e-9).ceil().max(1.0) as usize;
        exponential_scheme_symmetric(beta, n)
    }
}

/// Symmetric sinc rule `ℓ = -N..N` with `k = 1/√N`.
pub fn exponential_scheme_symmetric(beta: Beta, n: usize) -> Result<QuadratureScheme> {
    let beta = beta.check_scheme_range()?;
    positive_count("N", n, 1)?;
    build_exponential(beta, 1.0 / (n as f64).sqrt(), n, n, false)
}

fn build_exponential(
    beta: Beta,
    k: f64,
    left: usize,
    right: usize,
    equalized: bool,
) -> Result<QuadratureScheme> {
    let y_max = right as f64 * k;
    if !(2.0 * y_max).exp().is_finite() || left > 10_000_000 || right > 10_000_000 {
        return Err(Error::Range("exponential rule nodes overflow"));
    }
    let exp_nodes: Vec<f64> = (-(left as i64)..=right as i64)
        .map(|l| l as f64 * k)
        .collect();
    Ok(QuadratureScheme {
        kind: SchemeKind::Exponential,
        beta,
        params: SchemeParams::Exponential {
            k,
            left,
            right,
            equalized,
        },
        t1_nodes: Vec::new(),
        t1_weights: Vec::new(),
        t2_nodes: Vec::new(),
        t2_weights: Vec::new(),
        exp_nodes,
    })
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidParameter {
            name: "lambda",
            value: lambda,
            reason: "must be positive and finite",
        });
    }
    Ok(())
}

/// The scheme's approximation of `λ^{-β}`.
pub fn eval_scheme(scheme: &QuadratureScheme, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok(eval_unchecked(scheme, lambda))
}

pub(crate) fn eval_unchecked(scheme: &QuadratureScheme, lambda: f64) -> f64 {
    let beta = scheme.beta.value();
    match scheme.params {
        SchemeParams::Exponential { k, .. } => {
            let sum: f64 = scheme
                .exp_nodes
                .iter()
                .map(|&y| (2.0 * beta * y).exp() / (1.0 + (2.0 * y).exp() * lambda))
                .sum();
            2.0 * k * (PI * beta).sin() / PI * sum
        }
        _ => {
            let i1: f64 = scheme
                .t1_nodes
                .iter()
                .zip(&scheme.t1_weights)
                .map(|(&t, &w)| w / (1.0 + lambda * t * t))
                .sum();
            let i2: f64 = scheme
                .t2_nodes
                .iter()
                .zip(&scheme.t2_weights)
                .map(|(&t, &w)| w / (t * t + lambda))
                .sum();
            (i1 + i2) / c_beta(scheme.beta)
        }
    }
}

/// `|λ^{-β} - Q(λ)|`, the error normalization of all three published tables.
pub fn scalar_error(scheme: &QuadratureScheme, lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    Ok(error_unchecked(scheme, lambda))
}

pub(crate) fn error_unchecked(scheme: &QuadratureScheme, lambda: f64) -> f64 {
    (lambda.powf(-scheme.beta.value()) - eval_unchecked(scheme, lambda)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn beta(v: f64) -> Beta {
        Beta::new(v).unwrap()
    }

    #[test]
    fn rectangle_half_two_intervals() {
        let s = rectangle_scheme(beta(0.5), 2).unwrap();
        assert_eq!(s.nsys(), 4);
        for (got, want) in s.t1_weights.iter().zip([0.5, 0.5]) {
            assert!((got - want).abs() < 1e-15);
        }
        for (got, want) in s.t1_nodes.iter().zip([0.25, 0.75]) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn rectangle_graded_weights_are_constant() {
        let s = rectangle_scheme(beta(0.25), 4).unwrap();
        for w in &s.t1_weights {
            assert!((w - 0.5).abs() < 1e-14);
        }
        let s = rectangle_scheme(beta(0.75), 4).unwrap();
        for w in &s.t2_weights {
            assert!((w - 0.5).abs() < 1e-14);
        }
    }

    #[test]
    fn rectangle_nodes_inside_their_intervals() {
        for &b in &[0.1, 0.25, 0.5, 0.75, 0.9] {
            let s = rectangle_scheme(beta(b), 37).unwrap();
            for t in s.t1_nodes.iter().chain(&s.t2_nodes) {
                assert!(*t > 0.0 && *t <= 1.0);
            }
            for w in s.t1_weights.iter().chain(&s.t2_weights) {
                assert!(*w > 0.0);
            }
            // weights sum to ∫_0^1 t^γ
            let s1: f64 = s.t1_weights.iter().sum();
            assert!((s1 - 1.0 / (2.0 * b)).abs() < 1e-12);
            let s2: f64 = s.t2_weights.iter().sum();
            assert!((s2 - 1.0 / (2.0 - 2.0 * b)).abs() < 1e-12);
        }
    }

    #[test]
    fn dyadic_counts_per_integral() {
        assert_eq!(dyadic_counts(0.5, 2, 2, MChoice::PerIntegral), (4, 4));
        assert_eq!(dyadic_counts(0.75, 2, 2, MChoice::PerIntegral), (3, 8));
        assert_eq!(dyadic_counts(0.75, 2, 2, MChoice::Combined), (8, 8));
        let s = dyadic_gauss_scheme(beta(0.5), 2, 2, MChoice::PerIntegral).unwrap();
        assert_eq!(s.nsys(), 32);
    }

    #[test]
    fn dyadic_counts_reported_match_published_nsys() {
        let published = [
            (0.5, [72, 208, 544, 1344]),
            (0.75, [92, 272, 704, 1760]),
            (0.25, [92, 272, 704, 1760]),
        ];
        for (b, counts) in published {
            for (i, n) in [2usize, 4, 8, 16].into_iter().enumerate() {
                let (m1, m2) = dyadic_counts(b, n, 2, MChoice::Reported);
                assert_eq!(2 * n * (m1 + m2), counts[i], "beta {b} N {n}");
            }
        }
    }

    #[test]
    fn dyadic_piece_length() {
        let s = dyadic_gauss_scheme(beta(0.5), 4, 1, MChoice::PerIntegral).unwrap();
        // interval I_3 = [1/8, 1/4] split in 4: pieces of length 1/32,
        // one-point nodes at the midpoints for γ = 0
        let inside: Vec<f64> = s
            .t1_nodes
            .iter()
            .copied()
            .filter(|&t| (0.125..0.25).contains(&t))
            .collect();
        assert_eq!(inside.len(), 4);
        for (j, t) in inside.iter().enumerate() {
            assert!((t - (0.125 + (j as f64 + 0.5) / 32.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn dyadic_rejects_single_interval() {
        assert!(dyadic_gauss_scheme(beta(0.5), 1, 2, MChoice::PerIntegral).is_err());
    }

    #[test]
    fn exponential_counts() {
        let s = exponential_scheme(beta(0.5), 1.0, true).unwrap();
        assert_eq!(s.nsys(), 11);
        let s = exponential_scheme(beta(0.75), 0.5, true).unwrap();
        assert!(matches!(
            s.params,
            SchemeParams::Exponential {
                left: 14,
                right: 40,
                ..
            }
        ));
        assert_eq!(s.nsys(), 55);
        let s = exponential_scheme(beta(0.25), 0.25, true).unwrap();
        assert!(matches!(
            s.params,
            SchemeParams::Exponential {
                left: 158,
                right: 53,
                ..
            }
        ));
        assert_eq!(s.nsys(), 212);
        let s = exponential_scheme(beta(0.3), 0.5, false).unwrap();
        assert_eq!(s.nsys(), 9);
    }

    #[test]
    fn exponential_overflow_is_reported() {
        assert!(exponential_scheme(beta(0.999), 0.25, true).is_err());
    }

    #[test]
    fn eval_rejects_nonpositive_lambda() {
        let s = exponential_scheme(beta(0.5), 1.0, true).unwrap();
        assert!(eval_scheme(&s, 0.0).is_err());
        assert!(eval_scheme(&s, -1.0).is_err());
        assert!(scalar_error(&s, f64::NAN).is_err());
    }

    #[test]
    fn terms_reproduce_eval() {
        let schemes = [
            rectangle_scheme(beta(0.3), 17).unwrap(),
            dyadic_gauss_scheme(beta(0.6), 4, 2, MChoice::PerIntegral).unwrap(),
            exponential_scheme(beta(0.4), 0.5, true).unwrap(),
        ];
        for s in &schemes {
            let terms = s.resolvent_terms();
            assert_eq!(terms.len(), s.nsys());
            for &lambda in &[0.5, 10.0, 1e4] {
                let direct = eval_scheme(s, lambda).unwrap();
                let via: f64 = terms.iter().map(|t| t.weight * t.kernel(lambda)).sum();
                assert!((direct - via).abs() <= 1e-14 * direct.abs());
            }
        }
    }

    #[test]
    fn value_at_one_close_to_one() {
        let s = exponential_scheme(beta(0.5), 1.0 / 3.0, true).unwrap();
        assert!((eval_scheme(&s, 1.0).unwrap() - 1.0).abs() < 1e-6);
        let s = exponential_scheme(beta(0.5), 1.0 / 3.0, true).unwrap();
        let e = scalar_error(&s, 10.0).unwrap();
        assert!(e <= 1.80e-7 * 1.05, "{e}");
    }
}
