//! Numerical path lifting: continue solutions of `p(z) = w(t)` along range
//! paths that avoid the critical values, and trace the level sets, direction
//! sets and descent branches that the combinatorics layer reads off.

mod descent;
mod direction;
mod kernel;
mod level;
mod path;
mod winding;

pub use descent::descend_from_critical_point;
pub use direction::{trace_direction_set, DirectionTrace};
pub use kernel::{continue_path_until, lift_path, newton_snap, StepPolicy};
pub use level::{solve_fiber, trace_level_set, LevelComponent, LevelTrace};
pub use path::RangePath;
pub use winding::winding_number;

pub(crate) use direction::trace_direction_ray;
pub(crate) use level::trace_level_circle;

use num_complex::Complex64;

/// What a strand endpoint is pinned to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    Root(usize),
    InfinityEdge(usize),
    CriticalPoint(usize),
    Free,
}

/// A continued solution curve: samples `(t, z)` with `p(z) ≈ w(t)` at every
/// accepted step.
#[derive(Debug, Clone)]
pub struct TracedStrand {
    pub samples: Vec<(f64, Complex64)>,
    pub start_anchor: Anchor,
    pub end_anchor: Anchor,
}

impl TracedStrand {
    pub fn start(&self) -> Complex64 {
        self.samples.first().expect("nonempty strand").1
    }

    pub fn end(&self) -> Complex64 {
        self.samples.last().expect("nonempty strand").1
    }

    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.samples.iter().map(|&(_, z)| z)
    }
}

/// Match each endpoint to the nearest of `targets`, requiring the match to be
/// within `radius`; used for permutation extraction and root identification.
pub(crate) fn match_to_targets(
    endpoints: &[Complex64],
    targets: &[Complex64],
    radius: f64,
) -> crate::Result<Vec<usize>> {
    let mut assignment = Vec::with_capacity(endpoints.len());
    let mut used = vec![false; targets.len()];
    for &z in endpoints {
        let mut best = (usize::MAX, f64::INFINITY);
        for (j, &t) in targets.iter().enumerate() {
            let d = (z - t).norm();
            if d < best.1 {
                best = (j, d);
            }
        }
        if best.1 > radius || used[best.0] {
            return Err(crate::Error::EndpointMatchAmbiguous {
                distance: best.1,
                radius,
            });
        }
        used[best.0] = true;
        assignment.push(best.0);
    }
    Ok(assignment)
}

pub(crate) fn min_pairwise_distance(points: &[Complex64]) -> f64 {
    let mut min = f64::INFINITY;
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            min = min.min((points[i] - points[j]).norm());
        }
    }
    min
}
