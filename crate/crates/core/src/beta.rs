use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent methods when std is in the build
use num_traits::Float;

use crate::error::{Error, Result};

/// Smallest distance from 0 and 1 accepted by the scheme constructors.
pub const SCHEME_BETA_MARGIN: f64 = 1e-3;

/// Fractional exponent `β ∈ (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Beta(f64);

impl Beta {
    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value < 1.0 {
            Ok(Self(value))
        } else {
            Err(Error::InvalidBeta(value))
        }
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// `1 - β`
    #[inline]
    pub fn complement(self) -> f64 {
        1.0 - self.0
    }

    /// Rejects exponents whose quadrature bounds blow up like `1/β` or `1/(1-β)`.
    pub fn check_scheme_range(self) -> Result<Self> {
        if self.0 < SCHEME_BETA_MARGIN || self.0 > 1.0 - SCHEME_BETA_MARGIN {
            Err(Error::DegenerateBeta(self.0))
        } else {
            Ok(self)
        }
    }
}

impl TryFrom<f64> for Beta {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Beta::new(value)
    }
}

/// `C_β = ∫_0^∞ t^{2β-1} (1+t²)^{-1} dt = π / (2 sin πβ)`.
pub fn c_beta(beta: Beta) -> f64 {
    PI / (2.0 * (PI * beta.value()).sin())
}
