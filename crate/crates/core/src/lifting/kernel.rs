//! Predictor-corrector continuation of `p(z) = w(t)`.
//!
//! Euler predictor `z += w'(t)·Δt / p'(z)`, Newton corrector on
//! `p(z) - w(t+Δt)`. A step is accepted iff Newton converges within
//! `newton_cap` iterations to residual `residual_scale·(1 + |w|)`; on failure
//! the step is halved, and it doubles back toward `max_step` after
//! `grow_after` consecutive successes.

use num_complex::Complex64;

use super::path::RangePath;
use super::{Anchor, TracedStrand};
use crate::poly::Polynomial;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct StepPolicy {
    /// Largest parameter step; also the sampling density floor.
    pub max_step: f64,
    /// Smallest allowed parameter step before reporting StepUnderflow.
    pub min_step: f64,
    /// Newton iterations allowed per corrector call.
    pub newton_cap: u32,
    /// Residual tolerance scale: accepted when `|p(z) - w| <= scale·(1+|w|)`.
    pub residual_scale: f64,
    /// Consecutive successes before the step doubles.
    pub grow_after: u32,
    /// Reject a step whose predicted domain move exceeds this fraction of
    /// `1 + |z|`; keeps the predictor from hopping to another sheet where
    /// `p'` is small.
    pub max_relative_domain_step: f64,
}

impl Default for StepPolicy {
    fn default() -> Self {
        StepPolicy {
            max_step: 1.0 / 256.0,
            min_step: 1e-10,
            newton_cap: 5,
            residual_scale: 1e-12,
            grow_after: 8,
            max_relative_domain_step: 0.25,
        }
    }
}

impl StepPolicy {
    pub fn with_max_step(max_step: f64) -> Self {
        StepPolicy {
            max_step,
            ..StepPolicy::default()
        }
    }

    /// All continuation steps halved: the determinism regression policy.
    pub fn halved(&self) -> Self {
        StepPolicy {
            max_step: self.max_step / 2.0,
            ..*self
        }
    }

    fn residual_tol(&self, w: Complex64) -> f64 {
        self.residual_scale * (1.0 + w.norm())
    }
}

/// Damped Newton solve of `p(z) = w` from `seed`. `step_cap` bounds each
/// update so a poorly conditioned seed (e.g. next to a critical point) walks
/// instead of jumping sheets.
pub fn newton_snap(
    p: &Polynomial,
    w: Complex64,
    seed: Complex64,
    step_cap: f64,
    tol: f64,
) -> Result<Complex64> {
    let mut z = seed;
    for _ in 0..100 {
        let (pv, dp) = p.eval_with_derivative(z);
        let f = pv - w;
        if f.norm() <= tol {
            return Ok(z);
        }
        if dp.norm() < 1e-300 {
            break;
        }
        let mut step = f / dp;
        if !step.is_finite() {
            break;
        }
        if step.norm() > step_cap {
            step *= step_cap / step.norm();
        }
        z -= step;
        if !z.is_finite() {
            break;
        }
    }
    Err(Error::NoConvergence { iterations: 100 })
}

/// Continue the solution of `p(z) = w(t)` from `z_start` over `t ∈ [0, 1]`,
/// stopping early when `stop` returns true at an accepted sample.
pub fn continue_path_until(
    p: &Polynomial,
    path: &RangePath,
    z_start: Complex64,
    policy: &StepPolicy,
    stop: Option<&(dyn Fn(Complex64) -> bool + Sync)>,
) -> Result<TracedStrand> {
    let w0 = path.value(0.0);
    let z0 = newton_snap(p, w0, z_start, f64::INFINITY, policy.residual_tol(w0))?;
    let mut samples = vec![(0.0, z0)];
    let mut z = z0;
    let mut t = 0.0_f64;
    let mut dt = policy.max_step;
    let mut streak = 0u32;

    if let Some(f) = stop {
        if f(z) {
            return Ok(strand(samples));
        }
    }

    while t < 1.0 {
        let step = dt.min(1.0 - t);
        let t_next = t + step;
        let w_next = path.value(t_next);
        let tol = policy.residual_tol(w_next);

        let mut accepted = false;
        let (_, dp) = p.eval_with_derivative(z);
        if dp.norm() > 0.0 {
            let prediction = path.derivative(t) * step / dp;
            if prediction.is_finite()
                && prediction.norm() <= policy.max_relative_domain_step * (1.0 + z.norm())
            {
                let z_pred = z + prediction;
                let mut zc = z_pred;
                for _ in 0..=policy.newton_cap {
                    if !zc.is_finite() {
                        break;
                    }
                    let (pv, pd) = p.eval_with_derivative(zc);
                    let f = pv - w_next;
                    if f.norm() <= tol {
                        accepted = true;
                        break;
                    }
                    if pd.norm() < 1e-300 || !f.is_finite() {
                        break;
                    }
                    zc -= f / pd;
                }
                // The corrector must contract toward the predicted point; a
                // larger move means the predictor left the basin of the sheet
                // being tracked.
                if accepted
                    && (zc - z_pred).norm() > 0.5 * prediction.norm() + 1e-7 * (1.0 + z.norm())
                {
                    accepted = false;
                }
                if accepted {
                    z = zc;
                }
            }
        }

        if accepted {
            t = t_next;
            samples.push((t, z));
            if let Some(f) = stop {
                if f(z) {
                    break;
                }
            }
            streak += 1;
            if streak >= policy.grow_after {
                dt = (dt * 2.0).min(policy.max_step);
                streak = 0;
            }
        } else {
            streak = 0;
            dt *= 0.5;
            if dt < policy.min_step {
                return Err(Error::StepUnderflow { t });
            }
        }
    }
    Ok(strand(samples))
}

fn strand(samples: Vec<(f64, Complex64)>) -> TracedStrand {
    TracedStrand {
        samples,
        start_anchor: Anchor::Free,
        end_anchor: Anchor::Free,
    }
}

/// Continue `p(z) = w(t)` over the whole parameter range, after checking that
/// the path keeps the safety margin from every critical value of `p`.
pub fn lift_path(
    p: &Polynomial,
    path: &RangePath,
    z_start: Complex64,
    policy: &StepPolicy,
) -> Result<TracedStrand> {
    let crit = crate::poly::critical_data(p)?;
    let cvs: Vec<Complex64> = crit.critical_values.values();
    let mut margin = f64::INFINITY;
    for (i, &a) in cvs.iter().enumerate() {
        margin = margin.min(a.norm());
        for &b in cvs.iter().skip(i + 1) {
            margin = margin.min((a - b).norm());
        }
    }
    let margin = 0.25 * margin;
    check_clearance(path, &cvs, margin)?;
    continue_path_until(p, path, z_start, policy, None)
}

/// Verify that the sampled path stays at least `margin` away from every
/// listed critical value (with a hair of slack for boundary-tangent paths).
pub(crate) fn check_clearance(path: &RangePath, cvs: &[Complex64], margin: f64) -> Result<()> {
    for w in path.sample(512) {
        for &c in cvs {
            let d = (w - c).norm();
            if d < margin * (1.0 - 1e-9) {
                return Err(Error::PathTooCloseToCriticalValue {
                    value: c,
                    distance: d,
                    margin,
                });
            }
        }
    }
    Ok(())
}
