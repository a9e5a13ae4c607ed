//! Least-squares growth exponent of a count against `X` on log-log axes.

use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Points that entered the fit.
    pub used: usize,
    /// Points dropped because their count was zero.
    pub dropped_zero: usize,
}

/// Fits `log(count) = slope · log(X) + intercept`.
///
/// `X` must be strictly increasing. Zero counts have no logarithm and are
/// skipped (and reported); fewer than two remaining points is an error.
pub fn exponent_fit(points: &[(u64, u128)]) -> Result<SlopeFit> {
    if points.windows(2).any(|w| w[0].0 >= w[1].0) || points.iter().any(|p| p.0 == 0) {
        return Err(Error::InvalidInput("X values must be positive and strictly increasing".into()));
    }
    let logs: Vec<(f64, f64)> =
        points.iter().filter(|p| p.1 > 0).map(|&(x, c)| (libm::log(x as f64), libm::log(c as f64))).collect();
    if logs.len() < 2 {
        return Err(Error::InsufficientData);
    }
    let n = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = logs.iter().map(|p| (p.0 - mean_x) * (p.0 - mean_x)).sum();
    let slope = sxy / sxx;
    Ok(SlopeFit {
        slope,
        intercept: mean_y - slope * mean_x,
        used: logs.len(),
        dropped_zero: points.len() - logs.len(),
    })
}
