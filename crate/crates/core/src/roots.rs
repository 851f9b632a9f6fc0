//! Aberth-Ehrlich simultaneous root iteration.
//!
//! All roots are refined together from a perturbed-circle initialization,
//! which avoids the error accumulation of deflation. Multiple roots converge
//! linearly to a cluster whose diameter is limited by finite precision
//! (roughly eps^(1/m) for multiplicity m); callers that need multiplicities
//! cluster the raw output themselves.

use num_complex::Complex64;

use crate::{Error, Result};

pub const MAX_ITERATIONS: u32 = 500;

/// Residual tolerance at `z` for a degree-`d` polynomial with leading
/// coefficient `c_d`: `1e-12 * (1 + |z|^d * |c_d|)`.
pub fn residual_tolerance(z: Complex64, degree: usize, leading_norm: f64) -> f64 {
    1e-12 * (1.0 + z.norm().powi(degree as i32) * leading_norm)
}

fn horner_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// Cauchy-style bound on the modulus of every root.
fn root_radius_bound(coeffs: &[Complex64]) -> f64 {
    let lead = coeffs.last().unwrap().norm();
    let max_ratio = coeffs[..coeffs.len() - 1]
        .iter()
        .map(|c| c.norm() / lead)
        .fold(0.0_f64, f64::max);
    1.0 + max_ratio
}

/// All roots of the polynomial with the given ascending coefficients.
///
/// Returns raw approximations (no clustering), sorted lexicographically by
/// (re, im). The leading coefficient must be nonzero and the degree >= 1.
pub fn find_all_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let degree = coeffs.len() - 1;
    debug_assert!(degree >= 1);
    debug_assert!(coeffs[degree].norm() > 0.0);

    if degree == 1 {
        return Ok(vec![-coeffs[0] / coeffs[1]]);
    }

    let lead_norm = coeffs[degree].norm();
    let radius = root_radius_bound(coeffs);
    // Deterministic perturbed circle: a fixed angular offset breaks the
    // symmetry that would otherwise trap symmetric polynomials.
    let mut zs: Vec<Complex64> = (0..degree)
        .map(|k| {
            let angle = std::f64::consts::TAU * (k as f64) / (degree as f64) + 0.3785;
            Complex64::from_polar(radius * (1.0 + 0.01 * (k as f64) / (degree as f64)), angle)
        })
        .collect();

    let mut converged = false;
    for _ in 0..MAX_ITERATIONS {
        let mut max_update = 0.0_f64;
        let mut all_small = true;
        let snapshot = zs.clone();
        for i in 0..degree {
            let z = snapshot[i];
            let (p, dp) = horner_with_derivative(coeffs, z);
            if p.norm() <= residual_tolerance(z, degree, lead_norm) {
                continue;
            }
            all_small = false;
            let newton = if dp.norm() > 0.0 {
                p / dp
            } else {
                Complex64::new(1e-8, 1e-8)
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, &other) in snapshot.iter().enumerate() {
                if j != i {
                    let diff = z - other;
                    if diff.norm() > 0.0 {
                        repulsion += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let update = if denom.norm() > 1e-300 {
                newton / denom
            } else {
                newton
            };
            if update.is_finite() {
                zs[i] = z - update;
                max_update = max_update.max(update.norm() / (1.0 + z.norm()));
            }
        }
        if all_small || max_update < 1e-15 {
            converged = true;
            break;
        }
    }
    if !converged {
        // The update-size criterion above is how multiple-root clusters stop;
        // reaching the cap without either criterion means genuine failure.
        return Err(Error::NoConvergence {
            iterations: MAX_ITERATIONS,
        });
    }

    // Polish with residual-monotone Newton: a step is kept only if it
    // decreases |p|. Simple roots reach machine precision in a couple of
    // steps, double roots tighten geometrically, and noisy high-multiplicity
    // clusters stop at their attainable accuracy instead of wandering.
    for z in zs.iter_mut() {
        let mut current = *z;
        let mut residual = horner_with_derivative(coeffs, current).0.norm();
        for _ in 0..16 {
            let (p, dp) = horner_with_derivative(coeffs, current);
            if dp.norm() < 1e-300 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() || step.norm() > 0.1 * (1.0 + current.norm()) {
                break;
            }
            let candidate = current - step;
            let next_residual = horner_with_derivative(coeffs, candidate).0.norm();
            if !next_residual.is_finite() || next_residual >= residual {
                break;
            }
            current = candidate;
            residual = next_residual;
        }
        *z = current;
    }

    // Residual sanity: every approximation must satisfy the scaled tolerance
    // (multiple-root clusters do, since |p| ~ diameter^m there).
    for &z in &zs {
        let (p, _) = horner_with_derivative(coeffs, z);
        if !p.is_finite() || p.norm() > 1e4 * residual_tolerance(z, degree, lead_norm) {
            return Err(Error::NoConvergence {
                iterations: MAX_ITERATIONS,
            });
        }
    }

    zs.sort_by(|a, b| {
        (a.re, a.im)
            .partial_cmp(&(b.re, b.im))
            .expect("finite root approximations")
    });
    Ok(zs)
}
