//! Level set tracing: continue the `d` solutions of `p(z) = r·e^{iθ}` over a
//! full turn, read off the endpoint permutation, and assemble the closed
//! component curves with their winding table.

use num_complex::Complex64;

use super::kernel::{continue_path_until, StepPolicy};
use super::path::RangePath;
use super::winding::winding_number;
use super::{match_to_targets, min_pairwise_distance, TracedStrand};
use crate::annulus::{radius_for_height, AnnulusComplex};
use crate::poly::{PolyContext, Polynomial};
use crate::{exec, roots, Error, Result};

/// One connected component of a level set: a cycle of strands forming a
/// closed curve, with the winding number around every root.
#[derive(Debug, Clone)]
pub struct LevelComponent {
    /// Strand indices in traversal order; the cycle length is the covering
    /// degree of the component over the latitude circle.
    pub strand_cycle: Vec<usize>,
    /// Concatenated samples of the cycle, a closed curve.
    pub curve: Vec<Complex64>,
    /// Winding number of the curve around each root.
    pub windings: Vec<i64>,
    /// Roots with winding one, i.e. enclosed by this component.
    pub enclosed_roots: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct LevelTrace {
    pub radius: f64,
    pub height: f64,
    /// Trace of each fibre point over θ from 0 to 2π, indexed like `starts`.
    pub strands: Vec<TracedStrand>,
    /// Fibre points over θ = 0 in canonical (re, im) order.
    pub starts: Vec<Complex64>,
    /// `permutation[i] = j` iff the strand starting at `starts[i]` ends at
    /// `starts[j]`.
    pub permutation: Vec<usize>,
    pub components: Vec<LevelComponent>,
}

impl LevelTrace {
    /// Cycle lengths, i.e. the covering degrees `k_1, …, k_m`.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.components
            .iter()
            .map(|c| c.strand_cycle.len())
            .collect()
    }
}

/// The `d` solutions of `p(z) = w`, sorted lexicographically by (re, im).
pub fn solve_fiber(p: &Polynomial, w: Complex64) -> Result<Vec<Complex64>> {
    let mut coeffs = p.coefficients().to_vec();
    coeffs[0] -= w;
    roots::find_all_roots(&coeffs)
}

/// Trace the level set at the regular height `t_height`.
pub fn trace_level_set(
    ctx: &PolyContext,
    cells: &AnnulusComplex,
    t_height: f64,
    policy: &StepPolicy,
    parallel: bool,
) -> Result<LevelTrace> {
    // Regular heights must keep a quarter of the smallest height gap from
    // every critical latitude; midpoints always do.
    let t_margin = 0.25 * cells.min_height_gap();
    for &tc in &cells.critical_heights {
        if (t_height - tc).abs() < t_margin * (1.0 - 1e-9) {
            let value = Complex64::from_polar(radius_for_height(tc), 0.0);
            return Err(Error::PathTooCloseToCriticalValue {
                value,
                distance: (t_height - tc).abs(),
                margin: t_margin,
            });
        }
    }
    let radius = radius_for_height(t_height);
    trace_level_circle(ctx, radius, t_height, policy, parallel)
}

/// Trace the circle `|w| = radius`; used directly for render support curves
/// and the near-infinity monodromy oracle.
pub(crate) fn trace_level_circle(
    ctx: &PolyContext,
    radius: f64,
    height: f64,
    policy: &StepPolicy,
    parallel: bool,
) -> Result<LevelTrace> {
    let starts = solve_fiber(&ctx.poly, Complex64::new(radius, 0.0))?;
    let separation = min_pairwise_distance(&starts);
    let path = RangePath::circle(radius);

    let strands = exec::try_map(parallel, starts.clone(), |z0| {
        continue_path_until(&ctx.poly, &path, z0, policy, None)
    })?;

    let endpoints: Vec<Complex64> = strands.iter().map(|s| s.end()).collect();
    let permutation = match_to_targets(&endpoints, &starts, 0.45 * separation)?;

    let components = assemble_components(ctx, &strands, &permutation)?;

    Ok(LevelTrace {
        radius,
        height,
        strands,
        starts,
        permutation,
        components,
    })
}

fn assemble_components(
    ctx: &PolyContext,
    strands: &[TracedStrand],
    permutation: &[usize],
) -> Result<Vec<LevelComponent>> {
    let d = strands.len();
    let mut seen = vec![false; d];
    let mut components = Vec::new();
    for start in 0..d {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = start;
        loop {
            seen[i] = true;
            cycle.push(i);
            i = permutation[i];
            if i == start {
                break;
            }
        }
        let mut curve = Vec::new();
        for &s in &cycle {
            curve.extend(strands[s].points());
        }
        let mut windings = Vec::with_capacity(ctx.roots.len());
        for &root in &ctx.roots {
            windings.push(winding_number(&curve, root)?);
        }
        let enclosed_roots: Vec<usize> = windings
            .iter()
            .enumerate()
            .filter(|(_, &w)| w == 1)
            .map(|(i, _)| i)
            .collect();
        components.push(LevelComponent {
            strand_cycle: cycle,
            curve,
            windings,
            enclosed_roots,
        });
    }
    Ok(components)
}
