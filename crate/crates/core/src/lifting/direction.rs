//! Direction set tracing: one strand per root, continued from just above the
//! root along the longitude `arg w = u` until it leaves every root's sphere
//! of influence, then labeled by which of the `d` infinity edges it reaches.

use num_complex::Complex64;
use std::f64::consts::TAU;

use super::kernel::{continue_path_until, StepPolicy};
use super::path::RangePath;
use super::{Anchor, TracedStrand};
use crate::annulus::AnnulusComplex;
use crate::poly::PolyContext;
use crate::{arg_tau, circular_distance, exec, Error, Result};

#[derive(Debug, Clone)]
pub struct DirectionTrace {
    pub argument: f64,
    /// One strand per root, indexed by root id.
    pub strands: Vec<TracedStrand>,
    /// Root id of each strand (the identity map, kept explicit).
    pub root_of: Vec<usize>,
    /// Infinity edge index in `{0, …, d-1}` of each strand.
    pub infinity_index_of: Vec<usize>,
}

impl DirectionTrace {
    /// Root ids sorted by infinity index: position `m` holds the root whose
    /// strand reaches infinity edge `m`.
    pub fn roots_by_infinity_index(&self) -> Vec<usize> {
        let d = self.strands.len();
        let mut out = vec![usize::MAX; d];
        for (strand, &m) in self.infinity_index_of.iter().enumerate() {
            out[m] = self.root_of[strand];
        }
        out
    }
}

/// Index of the infinity edge a far-away point `z` sits on, given the
/// longitude argument `u`: asymptotically `arg p(z) = arg c_d + d·arg z`, so
/// `m = round((d·arg z + arg c_d - u) / 2π) mod d`.
fn infinity_index(z: Complex64, u: f64, lead_arg: f64, d: usize) -> usize {
    let raw = ((d as f64) * arg_tau(z) + lead_arg - u) / TAU;
    let m = raw.round() as i64;
    m.rem_euclid(d as i64) as usize
}

/// Trace the direction set at the regular argument `u`.
pub fn trace_direction_set(
    ctx: &PolyContext,
    cells: &AnnulusComplex,
    u: f64,
    policy: &StepPolicy,
    parallel: bool,
) -> Result<DirectionTrace> {
    let arg_margin = 0.25 * cells.min_argument_gap();
    for &uc in &cells.critical_arguments {
        if circular_distance(u, uc) < arg_margin * (1.0 - 1e-9) {
            return Err(Error::PathTooCloseToCriticalValue {
                value: Complex64::from_polar(1.0, uc),
                distance: circular_distance(u, uc),
                margin: arg_margin,
            });
        }
    }
    trace_direction_ray(ctx, u, policy, parallel)
}

/// Trace the longitude ray at argument `u` without the regularity
/// precondition (render offsets sit deliberately close to critical
/// longitudes).
pub(crate) fn trace_direction_ray(
    ctx: &PolyContext,
    u: f64,
    policy: &StepPolicy,
    parallel: bool,
) -> Result<DirectionTrace> {
    let d = ctx.degree();
    let lead_arg = arg_tau(ctx.poly.leading_coefficient());
    let r_stop = 10.0 * ctx.max_root_norm + 10.0;
    let s_max = ctx.poly.leading_coefficient().norm() * (2.0 * r_stop).powi(d as i32);
    let s_min = ctx.s_min;
    let dir = Complex64::from_polar(1.0, u);

    let indexed: Vec<(usize, Complex64)> = ctx.roots.iter().copied().enumerate().collect();
    let strands = exec::try_map(parallel, indexed, |(j, root)| {
        let z0 = root + dir * s_min / ctx.derivative.eval(root);
        let path = RangePath::RadialGeometric {
            argument: u,
            s_from: s_min,
            s_to: s_max,
        };
        let stop = |z: Complex64| z.norm() >= r_stop;
        let mut strand = continue_path_until(&ctx.poly, &path, z0, policy, Some(&stop))?;
        strand.start_anchor = Anchor::Root(j);
        if strand.end().norm() < r_stop {
            return Err(Error::StepUnderflow { t: 1.0 });
        }
        // The index must already be stable one sample earlier.
        let n = strand.samples.len();
        let last = infinity_index(strand.samples[n - 1].1, u, lead_arg, d);
        let previous = infinity_index(strand.samples[n - 2].1, u, lead_arg, d);
        if last != previous {
            return Err(Error::InfinityIndexUnstable { previous, last });
        }
        strand.end_anchor = Anchor::InfinityEdge(last);
        Ok((strand, last))
    })?;

    let mut taken = vec![false; d];
    let mut infinity_index_of = Vec::with_capacity(d);
    let mut out_strands = Vec::with_capacity(d);
    for (strand, index) in strands {
        if taken[index] {
            return Err(Error::InfinityIndexCollision { index });
        }
        taken[index] = true;
        infinity_index_of.push(index);
        out_strands.push(strand);
    }

    Ok(DirectionTrace {
        argument: u,
        root_of: (0..d).collect(),
        strands: out_strands,
        infinity_index_of,
    })
}
