//! Observed convergence rates.

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is in the build
use num_traits::Float;

/// `ln(e_i/e_{i+1}) / ln(h_i/h_{i+1})` for consecutive pairs.
pub fn oroc(errors: &[f64], h: &[f64]) -> Vec<f64> {
    assert_eq!(errors.len(), h.len(), "one mesh size per error");
    errors
        .windows(2)
        .zip(h.windows(2))
        .map(|(e, h)| (e[0] / e[1]).ln() / (h[0] / h[1]).ln())
        .collect()
}

/// Mean of the observed rates; NaN for an empty list.
pub fn aroc(orocs: &[f64]) -> f64 {
    orocs.iter().sum::<f64>() / orocs.len() as f64
}

/// L₂ rate predicted for the checkerboard source, `min(2β + 1/2, 2)`.
pub fn expected_rate(beta: f64) -> f64 {
    (2.0 * beta + 0.5).min(2.0)
}

/// Least-squares slope of `y` against `x`.
pub fn fit_slope(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}
