//! Winding numbers of sampled closed curves, by summing argument increments.

use num_complex::Complex64;

use crate::{Error, Result};

/// Winding number of the closed sampled `curve` around `z`.
///
/// The query point must be farther from the curve than the sampling
/// resolution (the largest consecutive-sample gap), otherwise the rounded sum
/// of argument increments is not trustworthy.
pub fn winding_number(curve: &[Complex64], z: Complex64) -> Result<i64> {
    assert!(curve.len() >= 3, "winding needs at least three samples");
    let mut resolution = 0.0_f64;
    let mut min_dist = f64::INFINITY;
    let n = curve.len();
    for i in 0..n {
        let a = curve[i];
        let b = curve[(i + 1) % n];
        resolution = resolution.max((b - a).norm());
        min_dist = min_dist.min((a - z).norm());
    }
    if min_dist <= resolution {
        return Err(Error::PointTooCloseToCurve);
    }
    let mut total = 0.0_f64;
    for i in 0..n {
        let a = curve[i] - z;
        let b = curve[(i + 1) % n] - z;
        // Increment in (-π, π]: the resolution check guarantees no segment
        // subtends a half turn.
        total += (b / a).arg();
    }
    Ok((total / std::f64::consts::TAU).round() as i64)
}
