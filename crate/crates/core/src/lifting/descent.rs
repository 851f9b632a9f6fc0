//! Steepest-descent branches from a critical point.
//!
//! Near a critical point `b` of multiplicity `κ` the polynomial looks like
//! `p(b) + C·(z-b)^{κ+1}` with `C = p^{(κ+1)}(b)/(κ+1)!`. The `κ+1` rays along
//! which `|p|` decreases at constant argument solve
//! `conj(p(b))·C·e^{i(κ+1)θ} = -|p(b)·C|`; continuing each one down the
//! critical ray identifies the roots that merge at `b`.

use num_complex::Complex64;

use super::kernel::{continue_path_until, newton_snap, StepPolicy};
use super::path::RangePath;
use super::{Anchor, TracedStrand};
use crate::poly::PolyContext;
use crate::{arg_tau, circular_distance, Error, Result};

/// Factorial of small integers as f64.
fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product::<f64>().max(1.0)
}

/// The descent branches from critical point entry `cp_index`, reported as the
/// `m(b)+1` root ids reached, in branch order. Also returns the traced
/// strands for rendering and diagnostics.
pub fn descend_from_critical_point(
    ctx: &PolyContext,
    cp_index: usize,
    policy: &StepPolicy,
) -> Result<(Vec<usize>, Vec<TracedStrand>)> {
    let entry = &ctx.crit.critical_points.entries[cp_index];
    let b = entry.value;
    let kappa = entry.multiplicity;
    let c = ctx.poly.eval(b);
    debug_assert!(c.norm() > 0.0);
    let arg_c = arg_tau(c);

    // A critical value with smaller modulus on (or numerically near) the same
    // ray blocks the descent; report rather than guess the merge.
    let own_value = ctx.crit.value_of[cp_index];
    for (k, other) in ctx.crit.critical_values.entries.iter().enumerate() {
        let cv = other.value;
        if k == own_value || cv.norm() >= c.norm() {
            continue;
        }
        let angle_gap = circular_distance(arg_tau(cv), arg_c);
        let ray_distance = cv.norm() * angle_gap.sin().abs();
        if angle_gap < std::f64::consts::FRAC_PI_2 && ray_distance < 0.25 * isolation(ctx, k) {
            return Err(Error::DescentStalled { index: cp_index });
        }
    }

    let local_model = ctx.poly.nth_derivative(kappa + 1).eval(b) / factorial(kappa + 1);
    if local_model.norm() == 0.0 {
        return Err(Error::DescentStalled { index: cp_index });
    }
    let scale = ctx.local_scale_at_critical_point(cp_index);
    let epsilon = 1e-4 * scale;
    let delta = 1e-6 * c.norm();
    // Launch each branch at the local-model radius for the starting modulus
    // gap delta. At the bare offset epsilon the derivative of a multiplicity
    // >= 2 critical point is below the floating-point noise floor and Newton
    // has no usable direction.
    let rho_model = (delta / local_model.norm()).powf(1.0 / (kappa as f64 + 1.0));
    let start_radius = rho_model.clamp(epsilon, 0.25 * scale);

    let mut roots = Vec::with_capacity(kappa + 1);
    let mut strands = Vec::with_capacity(kappa + 1);
    for m in 0..=kappa {
        let theta = (std::f64::consts::PI + arg_c - local_model.arg()
            + std::f64::consts::TAU * m as f64)
            / (kappa as f64 + 1.0);
        let z0 = b + Complex64::from_polar(start_radius, theta);
        let s_start = ctx.poly.eval(z0).norm().min(c.norm() - delta);
        if s_start <= ctx.s_min {
            return Err(Error::DescentStalled { index: cp_index });
        }
        let w_start = Complex64::from_polar(s_start, arg_c);
        let anchored = newton_snap(&ctx.poly, w_start, z0, scale / 8.0, 1e-12 * (1.0 + s_start))
            .map_err(|_| Error::DescentStalled { index: cp_index })?;
        let path = RangePath::RadialGeometric {
            argument: arg_c,
            s_from: s_start,
            s_to: ctx.s_min,
        };
        let mut strand =
            continue_path_until(&ctx.poly, &path, anchored, policy, None).map_err(|e| match e {
                Error::StepUnderflow { .. } => Error::DescentStalled { index: cp_index },
                other => other,
            })?;
        let (root, dist) = ctx.nearest_root(strand.end());
        let radius = 0.45 * ctx.min_root_separation;
        if dist > radius {
            return Err(Error::EndpointMatchAmbiguous {
                distance: dist,
                radius,
            });
        }
        strand.start_anchor = Anchor::CriticalPoint(cp_index);
        strand.end_anchor = Anchor::Root(root);
        if roots.contains(&root) {
            return Err(Error::EndpointMatchAmbiguous {
                distance: dist,
                radius,
            });
        }
        roots.push(root);
        strands.push(strand);
    }
    Ok((roots, strands))
}

/// Distance from critical value entry `k` to the nearest other critical value
/// or the origin.
fn isolation(ctx: &PolyContext, k: usize) -> f64 {
    let c = ctx.crit.critical_values.entries[k].value;
    let mut iso = c.norm();
    for (j, e) in ctx.crit.critical_values.entries.iter().enumerate() {
        if j != k {
            iso = iso.min((c - e.value).norm());
        }
    }
    iso
}
