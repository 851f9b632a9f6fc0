//! Monodromy of the polynomial as a branched cover: one permutation of the
//! roots per critical value, obtained by lifting a radial-circle-radial loop
//! around the value from all `d` sheets over a basepoint on its ray.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::lifting::{
    continue_path_until, match_to_targets, min_pairwise_distance, RangePath, StepPolicy,
};
use crate::perm::Perm;
use crate::poly::PolyContext;
use crate::{arg_tau, circular_distance, exec, Error, Result};

/// The monodromy representation: a generator per critical value entry, the
/// argument-then-modulus order on the generators, and the cycle type of
/// their ordered product.
#[derive(Debug, Clone)]
pub struct MonodromyRep {
    /// `generators[i]` belongs to critical value entry `i`.
    pub generators: Vec<Perm>,
    /// Critical value entry indices sorted by argument, then modulus.
    pub generator_order: Vec<usize>,
    /// Cycle type of the product over `generator_order` (first-encountered
    /// generator applied first).
    pub product_cycle_type: Vec<usize>,
}

/// Distance from critical value entry `k` to the nearest other critical
/// value or to the origin.
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

fn basepoint_modulus(ctx: &PolyContext) -> f64 {
    0.5 * ctx
        .crit
        .critical_values
        .entries
        .iter()
        .map(|e| e.value.norm())
        .fold(f64::INFINITY, f64::min)
}

/// The loop in the range plane around critical value entry `cv_index`:
/// radially out from the basepoint along the value's ray, once
/// counterclockwise around the value at a quarter of its isolation distance,
/// and radially back. Radial legs bend around any other critical value
/// sitting on the ray at lower modulus.
pub fn loop_for_critical_value(ctx: &PolyContext, cv_index: usize) -> Result<RangePath> {
    let c = ctx.crit.critical_values.entries[cv_index].value;
    let arg_c = arg_tau(c);
    let rho = 0.25 * isolation(ctx, cv_index);
    let r0 = basepoint_modulus(ctx);
    let target = c.norm() - rho;
    if target <= r0 {
        return Err(Error::UnroutablePath { value: c });
    }

    // Obstructions: other critical values whose clearance disk the radial
    // segment enters. Each is orbited counterclockwise at its own clearance
    // radius, which keeps the full safety margin along the detour.
    let dir = Complex64::from_polar(1.0, arg_c);
    struct Obstruction {
        value: Complex64,
        bend: f64,
        s_enter: f64,
        s_exit: f64,
    }
    let mut obstructions: Vec<Obstruction> = Vec::new();
    for (k, e) in ctx.crit.critical_values.entries.iter().enumerate() {
        if k == cv_index {
            continue;
        }
        let v = e.value;
        let angle_gap = circular_distance(arg_tau(v), arg_c);
        if angle_gap > std::f64::consts::FRAC_PI_2 {
            continue;
        }
        let projection = v.norm() * angle_gap.cos();
        let ray_distance = v.norm() * angle_gap.sin().abs();
        let bend = 0.25 * isolation(ctx, k);
        if ray_distance >= bend {
            continue;
        }
        let half_chord = (bend * bend - ray_distance * ray_distance).sqrt();
        let (s_enter, s_exit) = (projection - half_chord, projection + half_chord);
        if s_exit <= r0 || s_enter >= target {
            continue;
        }
        if s_enter <= r0 || s_exit >= target {
            return Err(Error::UnroutablePath { value: c });
        }
        obstructions.push(Obstruction {
            value: v,
            bend,
            s_enter,
            s_exit,
        });
    }
    obstructions.sort_by(|a, b| a.s_enter.partial_cmp(&b.s_enter).expect("finite moduli"));
    for pair in obstructions.windows(2) {
        if pair[1].s_enter <= pair[0].s_exit {
            return Err(Error::UnroutablePath { value: c });
        }
    }

    let mut outward: Vec<(RangePath, f64)> = Vec::new();
    let mut s = r0;
    for o in &obstructions {
        outward.push((
            RangePath::Segment {
                from: dir * s,
                to: dir * o.s_enter,
            },
            o.s_enter - s,
        ));
        let theta_in = (dir * o.s_enter - o.value).arg();
        let theta_out = (dir * o.s_exit - o.value).arg();
        let sweep = (theta_out - theta_in).rem_euclid(TAU);
        outward.push((
            RangePath::Arc {
                center: o.value,
                radius: o.bend,
                start_angle: theta_in,
                sweep,
            },
            o.bend * sweep,
        ));
        s = o.s_exit;
    }
    outward.push((
        RangePath::Segment {
            from: dir * s,
            to: dir * target,
        },
        target - s,
    ));

    let inward: Vec<(RangePath, f64)> = outward
        .iter()
        .rev()
        .map(|(p, w)| (reverse_path(p), *w))
        .collect();

    let mut parts = outward;
    parts.push((
        RangePath::Arc {
            center: c,
            radius: rho,
            start_angle: arg_c + std::f64::consts::PI,
            sweep: TAU,
        },
        TAU * rho,
    ));
    parts.extend(inward);
    Ok(RangePath::Piecewise(parts))
}

fn reverse_path(p: &RangePath) -> RangePath {
    match p {
        RangePath::Segment { from, to } => RangePath::Segment {
            from: *to,
            to: *from,
        },
        RangePath::Arc {
            center,
            radius,
            start_angle,
            sweep,
        } => RangePath::Arc {
            center: *center,
            radius: *radius,
            start_angle: start_angle + sweep,
            sweep: -sweep,
        },
        RangePath::RadialGeometric {
            argument,
            s_from,
            s_to,
        } => RangePath::RadialGeometric {
            argument: *argument,
            s_from: *s_to,
            s_to: *s_from,
        },
        RangePath::Piecewise(parts) => RangePath::Piecewise(
            parts
                .iter()
                .rev()
                .map(|(p, w)| (reverse_path(p), *w))
                .collect(),
        ),
    }
}

/// The `d` sheet points over the basepoint `r0 e^{i·argument}`, indexed by
/// root id: each is reached by continuing `p(z) = s e^{i·argument}` from just
/// above its root.
fn sheet_points(
    ctx: &PolyContext,
    argument: f64,
    r0: f64,
    policy: &StepPolicy,
    parallel: bool,
) -> Result<Vec<Complex64>> {
    let dir = Complex64::from_polar(1.0, argument);
    let indexed: Vec<(usize, Complex64)> = ctx.roots.iter().copied().enumerate().collect();
    let points = exec::try_map(parallel, indexed, |(_, root)| {
        let z0 = root + dir * ctx.s_min / ctx.derivative.eval(root);
        let path = RangePath::RadialGeometric {
            argument,
            s_from: ctx.s_min,
            s_to: r0,
        };
        Ok(continue_path_until(&ctx.poly, &path, z0, policy, None)?.end())
    })?;
    Ok(points)
}

/// The monodromy permutation of the roots for the loop around critical value
/// entry `cv_index`: `perm(j) = j'` when the lift starting on root `j`'s
/// sheet ends on root `j'`'s sheet.
pub fn monodromy_generator(
    ctx: &PolyContext,
    cv_index: usize,
    policy: &StepPolicy,
    parallel: bool,
) -> Result<Perm> {
    let c = ctx.crit.critical_values.entries[cv_index].value;
    let arg_c = arg_tau(c);
    let r0 = basepoint_modulus(ctx);
    let sheets = sheet_points(ctx, arg_c, r0, policy, parallel)?;
    let loop_path = loop_for_critical_value(ctx, cv_index)?;

    let endpoints = exec::try_map(parallel, sheets.clone(), |z0| {
        Ok(continue_path_until(&ctx.poly, &loop_path, z0, policy, None)?.end())
    })?;
    let separation = min_pairwise_distance(&sheets);
    let images = match_to_targets(&endpoints, &sheets, 0.45 * separation)?;
    Perm::new(images)
}

/// Assemble the full representation and verify its invariants: per-generator
/// cycle structure `{m(b)+1 : b ∈ cpt_c}`, transitivity, and the cycle type
/// of the ordered product.
pub fn monodromy_representation(
    ctx: &PolyContext,
    policy: &StepPolicy,
    parallel: bool,
) -> Result<MonodromyRep> {
    let n = ctx.crit.critical_values.entries.len();
    let generators = exec::try_map(parallel, (0..n).collect(), |cv| {
        monodromy_generator(ctx, cv, policy, parallel)
    })?;

    for (cv, generator) in generators.iter().enumerate() {
        let mut expected: Vec<usize> = ctx
            .crit
            .points_of_value(cv)
            .iter()
            .map(|&cp| ctx.crit.critical_points.entries[cp].multiplicity + 1)
            .collect();
        expected.sort_unstable_by(|a, b| b.cmp(a));
        let mut actual: Vec<usize> = generator
            .cycles()
            .iter()
            .map(|c| c.len())
            .filter(|&l| l > 1)
            .collect();
        actual.sort_unstable_by(|a, b| b.cmp(a));
        if actual != expected {
            return Err(Error::MonodromyCycleType {
                value: ctx.crit.critical_values.entries[cv].value,
            });
        }
    }

    let mut generator_order: Vec<usize> = (0..n).collect();
    generator_order.sort_by(|&a, &b| {
        let va = ctx.crit.critical_values.entries[a].value;
        let vb = ctx.crit.critical_values.entries[b].value;
        (arg_tau(va), va.norm())
            .partial_cmp(&(arg_tau(vb), vb.norm()))
            .expect("finite values")
    });

    // Product with the first-encountered generator applied first.
    let d = ctx.degree();
    let mut product = Perm::identity(d);
    for &cv in &generator_order {
        product = generators[cv].compose(&product);
    }

    // Transitivity of the generated group on the roots.
    let mut ds = crate::combinatorics::DisjointSets::new(d);
    for g in &generators {
        for i in 0..d {
            ds.union(i, g.apply(i));
        }
    }
    if !ds.partition().is_trivial() {
        return Err(Error::TransitivityFailure);
    }

    Ok(MonodromyRep {
        generators,
        generator_order,
        product_cycle_type: product.cycle_type(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Tolerances;
    use crate::testutil::{
        c, difference_of_squares, one_critical_value_poly, oracle_fiber_permutation,
        running_example,
    };

    fn prepare(p: crate::poly::Polynomial) -> PolyContext {
        PolyContext::prepare(p, &Tolerances::default()).unwrap()
    }

    fn cv_index_near(ctx: &PolyContext, v: Complex64) -> usize {
        ctx.crit
            .critical_values
            .entries
            .iter()
            .position(|e| (e.value - v).norm() < 1e-6)
            .unwrap()
    }

    #[test]
    fn running_example_loop_along_positive_axis() {
        let ctx = prepare(running_example());
        let cv = cv_index_near(&ctx, c(0.46, 0.0));
        let path = loop_for_critical_value(&ctx, cv).unwrap();
        // No detours: radial out, full circle, radial back.
        match &path {
            RangePath::Piecewise(parts) => assert_eq!(parts.len(), 3),
            _ => panic!("expected piecewise loop"),
        }
        // Entirely within a thin wedge around the positive real axis.
        for w in path.sample(256) {
            assert!(w.re > 0.0);
            assert!(circular_distance(arg_tau(w), 0.0) < 0.5);
        }
    }

    #[test]
    fn running_example_negative_axis_loop_needs_no_detour() {
        let ctx = prepare(running_example());
        // No other critical value has argument within tolerance of π.
        for e in &ctx.crit.critical_values.entries {
            if (e.value - c(-1.62, 0.0)).norm() > 1e-6 {
                assert!(circular_distance(arg_tau(e.value), std::f64::consts::PI) > 1.0);
            }
        }
        let cv = cv_index_near(&ctx, c(-1.62, 0.0));
        let path = loop_for_critical_value(&ctx, cv).unwrap();
        match &path {
            RangePath::Piecewise(parts) => assert_eq!(parts.len(), 3),
            _ => panic!("expected piecewise loop"),
        }
    }

    #[test]
    fn quadratic_generator_is_the_transposition() {
        let ctx = prepare(difference_of_squares());
        let path = loop_for_critical_value(&ctx, 0).unwrap();
        // Loop along arg π around c = -1.
        for w in path.sample(64) {
            assert!(w.re < 0.0);
        }
        let g = monodromy_generator(&ctx, 0, &StepPolicy::default(), false).unwrap();
        assert_eq!(g, Perm::transposition(2, 0, 1));
        // Independent oracle: dense global re-solving along the same loop.
        let oracle = oracle_fiber_permutation(&ctx.poly, |t| path.value(t), 4096);
        assert_eq!(oracle, vec![1, 0]);
    }

    #[test]
    fn running_example_generator_at_046_swaps_a1_a2() {
        let ctx = prepare(running_example());
        let cv = cv_index_near(&ctx, c(0.46, 0.0));
        let g = monodromy_generator(&ctx, cv, &StepPolicy::default(), false).unwrap();
        // a1 and a2 have canonical ids 2 and 3.
        assert_eq!(g, Perm::transposition(5, 2, 3));
    }

    #[test]
    fn one_critical_value_generator_is_a_d_cycle() {
        for d in [3usize, 5, 7] {
            let p = one_critical_value_poly(c(0.9, 0.1), c(-0.2, 0.4), c(0.7, -0.5), d);
            let ctx = prepare(p);
            let g = monodromy_generator(&ctx, 0, &StepPolicy::default(), false).unwrap();
            assert_eq!(g.cycle_type(), vec![d]);
            // Oracle: dense global re-solving along the same loop.
            let path = loop_for_critical_value(&ctx, 0).unwrap();
            let oracle = oracle_fiber_permutation(&ctx.poly, |t| path.value(t), 8192);
            let oracle_perm = Perm::new(oracle).unwrap();
            assert_eq!(oracle_perm.cycle_type(), vec![d]);
        }
    }

    #[test]
    fn running_example_representation() {
        let ctx = prepare(running_example());
        let rep = monodromy_representation(&ctx, &StepPolicy::default(), false).unwrap();
        assert_eq!(rep.generators.len(), 4);
        // Every critical point is simple, so every generator is a
        // transposition.
        for g in &rep.generators {
            assert_eq!(g.cycle_type(), vec![2, 1, 1, 1]);
        }
        // Product over the argument order is a single 5-cycle.
        assert_eq!(rep.product_cycle_type, vec![5]);
    }

    #[test]
    fn big_circle_lift_is_a_d_cycle() {
        // A circle above every critical value lifts to a single curve that
        // wraps d times; the dense re-solve oracle confirms the cycle type.
        let ctx = prepare(running_example());
        let radius = 2.0
            * ctx
                .crit
                .critical_values
                .entries
                .iter()
                .map(|e| e.value.norm())
                .fold(0.0, f64::max);
        let oracle =
            oracle_fiber_permutation(&ctx.poly, |t| Complex64::from_polar(radius, TAU * t), 8192);
        assert_eq!(Perm::new(oracle).unwrap().cycle_type(), vec![5]);
    }

    #[test]
    fn one_critical_value_representation_transitive() {
        let p = one_critical_value_poly(c(1.0, -0.3), c(0.3, 0.2), c(-0.6, 0.4), 6);
        let ctx = prepare(p);
        let rep = monodromy_representation(&ctx, &StepPolicy::default(), false).unwrap();
        assert_eq!(rep.generators.len(), 1);
        assert_eq!(rep.generators[0].cycle_type(), vec![6]);
        assert_eq!(rep.product_cycle_type, vec![6]);
    }
}
