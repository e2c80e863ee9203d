use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent methods when std is in the build
use num_traits::Float;

use super::graded::mesh_ratio_bound;
use super::scheme::{QuadratureScheme, SchemeParams};
use crate::beta::c_beta;
use crate::error::{Error, Result};

/// A priori bound on `sup_{λ ≥ λ₀} |λ^{-β} - Q(λ)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureBound {
    /// Bound on the normalized error `|λ^{-β} - Q(λ)|`.
    pub value: f64,
    /// The same bound before division by `C_β`, i.e. on the error in the sum
    /// of the two integrals.
    pub integral_bound: f64,
    /// True when the bound carries an unspecified constant (taken as 1), so
    /// only its rate is meaningful.
    pub constant_implicit: bool,
}

/// Bound over `λ ≥ λ₀`.
pub fn theoretical_bound(scheme: &QuadratureScheme, lambda0: f64) -> Result<QuadratureBound> {
    if !(lambda0 > 0.0) || !lambda0.is_finite() {
        return Err(Error::InvalidParameter {
            name: "lambda0",
            value: lambda0,
            reason: "must be positive and finite",
        });
    }
    let b = scheme.beta.value();
    let cb = c_beta(scheme.beta);
    let (integral_bound, constant_implicit) = match scheme.params {
        SchemeParams::Rectangle { n, theta1, theta2 } => {
            let n = n as f64;
            let a = if theta1 != 1.0 { 2.0 * b } else { 1.0 };
            let bb = if theta2 != 1.0 { 2.0 - 2.0 * b } else { 1.0 };
            let rho1 = mesh_ratio_bound(theta1)?;
            let rho2 = mesh_ratio_bound(theta2)?;
            let e1 = (2.0 + rho1 * PI) / (n * a);
            let e2 = (2.0 + rho2 * PI) / (lambda0 * n * bb);
            (e1 + e2, false)
        }
        SchemeParams::GaussDyadic { n, r, .. } => {
            let rate = (n as f64).powi(-2 * r as i32);
            let c = 1.0 / (2.0 * b) + 1.0 / (2.0 * (1.0 - b) * lambda0);
            (c * rate, true)
        }
        SchemeParams::Exponential { k, equalized, .. } => {
            let q = PI * PI / (4.0 * k);
            let value = if equalized {
                let c = 1.0 / (2.0 * b) + 1.0 / ((2.0 - 2.0 * b) * lambda0);
                c * ((-q).exp() / q.sinh() + (-2.0 * q).exp())
            } else {
                let nd = 1.0 / b + 1.0 / ((1.0 - b) * lambda0);
                nd / (2.0 * q.sinh()) * (-q).exp()
                    + (-2.0 * b / k).exp() / (2.0 * b)
                    + (-(2.0 - 2.0 * b) / k).exp() / ((2.0 - 2.0 * b) * lambda0)
            };
            // sinc bounds are stated for the normalized sum already
            return Ok(QuadratureBound {
                value: value / cb,
                integral_bound: value,
                constant_implicit: false,
            });
        }
    };
    Ok(QuadratureBound {
        value: integral_bound / cb,
        integral_bound,
        constant_implicit,
    })
}

/// Bound for an operator whose spectrum lies in `[μ⁻¹_max, ∞)` after
/// inversion, i.e. `L^{-1}` has eigenvalues in `(0, μ_max]`.
pub fn operator_bound(scheme: &QuadratureScheme, mu_max: f64) -> Result<QuadratureBound> {
    if !(mu_max > 0.0) || !mu_max.is_finite() {
        return Err(Error::InvalidParameter {
            name: "mu_max",
            value: mu_max,
            reason: "must be positive and finite",
        });
    }
    theoretical_bound(scheme, 1.0 / mu_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beta::Beta;
    use crate::quad::scheme::{exponential_scheme, rectangle_scheme};

    #[test]
    fn rectangle_half_closed_form() {
        let s = rectangle_scheme(Beta::new(0.5).unwrap(), 10).unwrap();
        let bound = theoretical_bound(&s, 1.0).unwrap();
        let want = 2.0 * (2.0 + PI) / 10.0;
        assert!((bound.integral_bound - want).abs() < 1e-14);
        assert!((bound.value - want / (PI / 2.0)).abs() < 1e-14);
    }

    #[test]
    fn exponential_bound_decreases_with_k() {
        let beta = Beta::new(0.3).unwrap();
        let mut prev = f64::INFINITY;
        for k in [1.0, 0.5, 1.0 / 3.0, 0.25] {
            let s = exponential_scheme(beta, k, true).unwrap();
            let b = theoretical_bound(&s, 1.0).unwrap().value;
            assert!(b < prev);
            prev = b;
        }
    }

    #[test]
    fn operator_bound_is_bound_at_inverse() {
        let s = rectangle_scheme(Beta::new(0.3).unwrap(), 8).unwrap();
        assert_eq!(
            operator_bound(&s, 4.0).unwrap(),
            theoretical_bound(&s, 0.25).unwrap()
        );
    }
}
