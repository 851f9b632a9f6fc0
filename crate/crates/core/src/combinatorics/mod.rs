//! Extraction of the combinatorial invariants from traces: the partition
//! chain, per-sector cyclic orders, the noncrossing machinery, sector
//! permutations and the d-cycle factorization, the real noncrossing
//! partition, and cactus/banyan structures.

mod chain;
mod orders;
mod partition;
mod structures;

pub use chain::{merge_chain_oracle, partition_chain, partition_from_level, PartitionChain};
pub use orders::{
    cyclic_order_from_direction, factorization, real_noncrossing_partition, sector_permutation,
    CyclicOrder, Factorization, RealNoncrossingPartition, RncpEntry, SectorStep,
};
pub use partition::{DisjointSets, Partition};
pub use structures::{
    banyan_structure, cactus_structure, BanyanComponent, BanyanStructure, BanyanVertex,
    CactusBranchVertex, CactusComponent, CactusCycle, CactusStructure,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annulus::build_cell_structure;
    use crate::lifting::{
        descend_from_critical_point, trace_direction_set, trace_level_set, StepPolicy,
    };
    use crate::perm::Perm;
    use crate::poly::{PolyContext, Tolerances};
    use crate::testutil::{c, difference_of_squares, one_critical_value_poly, running_example};
    use crate::Complex64;

    struct Setup {
        ctx: PolyContext,
        cells: crate::annulus::AnnulusComplex,
        direction_traces: Vec<crate::lifting::DirectionTrace>,
    }

    fn setup(p: crate::poly::Polynomial) -> Setup {
        let ctx = PolyContext::prepare(p, &Tolerances::default()).unwrap();
        let cells = build_cell_structure(&ctx.crit.critical_values).unwrap();
        let direction_traces = cells
            .regular_arguments
            .iter()
            .map(|&u| trace_direction_set(&ctx, &cells, u, &StepPolicy::default(), false).unwrap())
            .collect();
        Setup {
            ctx,
            cells,
            direction_traces,
        }
    }

    /// Letter map of the worked example: a..e name the roots a1..a5, whose
    /// canonical ids are 2, 3, 4, 1, 0.
    const A: usize = 2;
    const B: usize = 3;
    const C: usize = 4;
    const D: usize = 1;
    const E: usize = 0;

    #[test]
    fn running_example_cyclic_orders_match_known_values() {
        let s = setup(running_example());
        let orders: Vec<CyclicOrder> = s
            .direction_traces
            .iter()
            .enumerate()
            .map(|(j, t)| cyclic_order_from_direction(t, j))
            .collect();
        let expected = [
            vec![C, A, D, E, B],
            vec![C, D, A, E, B],
            vec![B, D, A, E, C],
            vec![B, D, E, A, C],
        ];
        for (j, exp) in expected.iter().enumerate() {
            let canonical = CyclicOrder::canonical(j, exp.clone());
            assert_eq!(orders[j], canonical, "sector {j}");
        }
    }

    #[test]
    fn same_sector_arguments_give_identical_cyclic_order() {
        let s = setup(running_example());
        // Two sample arguments inside sector 0, away from its midpoint.
        let u0 = s.cells.critical_arguments[0] + 0.3 * s.cells.min_argument_gap();
        let u1 = s.cells.critical_arguments[0] + 0.6 * s.cells.min_argument_gap();
        let t0 = trace_direction_set(&s.ctx, &s.cells, u0, &StepPolicy::default(), false).unwrap();
        let t1 = trace_direction_set(&s.ctx, &s.cells, u1, &StepPolicy::default(), false).unwrap();
        assert_eq!(
            cyclic_order_from_direction(&t0, 0),
            cyclic_order_from_direction(&t1, 0)
        );
    }

    #[test]
    fn one_critical_value_cyclic_order_matches_angle_sort() {
        // Oracle: by the exact local model the cyclic order is the
        // counterclockwise geometric order of the roots around b.
        let b = c(0.3, -0.2);
        let p = one_critical_value_poly(c(1.0, 0.5), b, c(-0.7, 0.6), 6);
        let s = setup(p);
        let trace = &s.direction_traces[0];
        let order = cyclic_order_from_direction(trace, 0);
        let mut by_angle: Vec<usize> = (0..6).collect();
        by_angle.sort_by(|&i, &j| {
            let ai = (s.ctx.roots[i] - b).arg();
            let aj = (s.ctx.roots[j] - b).arg();
            ai.partial_cmp(&aj).unwrap()
        });
        let expected = CyclicOrder::canonical(0, by_angle);
        assert_eq!(order, expected);
    }

    #[test]
    fn sector_permutation_matches_worked_example() {
        // [c,a,d,e,b] -> [c,d,a,e,b] is (2,3) in 1-based positions.
        let prev = vec![C, A, D, E, B];
        let next = vec![C, D, A, E, B];
        assert_eq!(
            sector_permutation(&prev, &next).unwrap(),
            Perm::transposition(5, 1, 2)
        );
        // [c,d,a,e,b] -> [b,d,a,e,c] is (1,5).
        let prev = vec![C, D, A, E, B];
        let next = vec![B, D, A, E, C];
        assert_eq!(
            sector_permutation(&prev, &next).unwrap(),
            Perm::transposition(5, 0, 4)
        );
        // Identical orders give the identity.
        assert!(sector_permutation(&prev, &prev).unwrap().is_identity());
        // Mismatched label sets are rejected.
        assert!(sector_permutation(&[0, 1], &[0, 2]).is_err());
    }

    #[test]
    fn running_example_factorization_matches_known_values() {
        let s = setup(running_example());
        let f = factorization(&s.direction_traces, &s.cells).unwrap();
        assert_eq!(f.base_sector, 0);
        let expected = [
            Perm::transposition(5, 1, 2), // (2,3)
            Perm::transposition(5, 0, 4), // (1,5)
            Perm::transposition(5, 2, 3), // (3,4)
            Perm::transposition(5, 0, 3), // (1,4)
        ];
        assert_eq!(f.sector_permutations(), expected);
        assert_eq!(f.product, Perm::ascending_cycle(5));
    }

    #[test]
    fn factorization_covariant_under_range_rotation() {
        // Multiplying p by a unit rotates every critical value; when the
        // smallest critical argument wraps past 2π the sector list rotates
        // and the infinity labels (anchored to arg c_d in [0, 2π)) rotate by
        // a fixed offset. The sector permutations, read from the same
        // geometric base sector, change by conjugation with that label
        // rotation and by nothing else.
        let base = setup(running_example());
        let f_base = factorization(&base.direction_traces, &base.cells).unwrap();
        let rot = Complex64::from_polar(1.0, -0.05);
        let coeffs: Vec<Complex64> = running_example()
            .coefficients()
            .iter()
            .map(|&x| x * rot)
            .collect();
        let rotated = setup(crate::poly::Polynomial::from_coefficients(coeffs).unwrap());
        let f_rot = factorization(&rotated.direction_traces, &rotated.cells).unwrap();
        assert_eq!(f_rot.product, Perm::ascending_cycle(5));
        // The rotated cell structure really is the wrapped configuration.
        assert!(rotated.cells.critical_arguments[0] > 1.0);
        let base_perms = f_base.sector_permutations();
        let rot_perms = f_rot.sector_permutations();
        let matches_offset = (0..5).any(|o| {
            let rho = Perm::new((0..5).map(|i| (i + o) % 5).collect()).unwrap();
            let rho_inv = rho.inverse();
            base_perms
                .iter()
                .zip(&rot_perms)
                .all(|(b, r)| *r == rho_inv.compose(b).compose(&rho))
        });
        assert!(
            matches_offset,
            "no label rotation aligns the factorizations"
        );
    }

    #[test]
    fn quadratic_factorization_is_the_transposition() {
        let s = setup(difference_of_squares());
        let f = factorization(&s.direction_traces, &s.cells).unwrap();
        assert_eq!(f.steps.len(), 1);
        assert_eq!(f.steps[0].permutation, Perm::transposition(2, 0, 1));
    }

    #[test]
    fn one_critical_value_factorization_is_ascending_cycle() {
        for d in 2..=7usize {
            let p = one_critical_value_poly(c(0.8, -0.1), c(0.2, 0.4), c(0.6, 0.7), d);
            let s = setup(p);
            let f = factorization(&s.direction_traces, &s.cells).unwrap();
            assert_eq!(f.steps.len(), 1);
            assert_eq!(f.steps[0].permutation, Perm::ascending_cycle(d));
        }
    }

    #[test]
    fn running_example_rncp_entries() {
        let s = setup(running_example());
        let f = factorization(&s.direction_traces, &s.cells).unwrap();
        let rncp = real_noncrossing_partition(&f, &s.cells, 5).unwrap();
        assert_eq!(rncp.entries.len(), 4);
        // At the critical argument of 0.3 + 0.56i (index 1): one block of
        // size two, the rest singletons.
        let entry = rncp.entry_at(1).unwrap();
        let sizes: Vec<usize> = entry.partition.blocks().iter().map(|b| b.len()).collect();
        let mut sorted = sizes.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![1, 1, 1, 2]);
        // Every entry has exactly one nontrivial block here (one critical
        // point per argument).
        for e in &rncp.entries {
            assert_eq!(e.partition.nontrivial_blocks().count(), 1);
        }
    }

    #[test]
    fn one_critical_value_rncp_is_full_block() {
        let p = one_critical_value_poly(c(1.0, 0.2), c(-0.3, 0.1), c(0.4, -0.9), 5);
        let s = setup(p);
        let f = factorization(&s.direction_traces, &s.cells).unwrap();
        let rncp = real_noncrossing_partition(&f, &s.cells, 5).unwrap();
        assert_eq!(rncp.entries.len(), 1);
        assert!(rncp.entries[0].partition.is_trivial());
    }

    fn full_descents(ctx: &PolyContext) -> Vec<Vec<usize>> {
        (0..ctx.crit.critical_points.entries.len())
            .map(|cp| {
                descend_from_critical_point(ctx, cp, &StepPolicy::default())
                    .unwrap()
                    .0
            })
            .collect()
    }

    #[test]
    fn running_example_cactus_at_middle_height() {
        // Oracle: partitions at the adjacent regular heights plus the descent
        // root pairs. At the conjugate-pair modulus, three cycles join at two
        // valence-4 vertices and the a3 cycle stays alone.
        let s = setup(running_example());
        let descents = full_descents(&s.ctx);
        let below = trace_level_set(
            &s.ctx,
            &s.cells,
            s.cells.regular_heights[1],
            &StepPolicy::default(),
            false,
        )
        .unwrap();
        let cactus = cactus_structure(&s.ctx, &s.cells, 1, &below, &descents).unwrap();
        let mut sizes: Vec<(usize, usize)> = cactus
            .components
            .iter()
            .map(|comp| (comp.cycles.len(), comp.branch_vertices.len()))
            .collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![(1, 0), (3, 2)]);
        let big = cactus
            .components
            .iter()
            .find(|comp| comp.cycles.len() == 3)
            .unwrap();
        for v in &big.branch_vertices {
            assert_eq!(v.valence, 4);
            assert_eq!(v.cycles.len(), 2);
        }
        let singleton = cactus
            .components
            .iter()
            .find(|comp| comp.cycles.len() == 1)
            .unwrap();
        assert_eq!(singleton.cycles[0].roots, vec![C]);
    }

    #[test]
    fn running_example_cactus_at_lowest_height() {
        // At modulus 0.46 the cycles around a1 and a2 join at b = 1.
        let s = setup(running_example());
        let descents = full_descents(&s.ctx);
        let below = trace_level_set(
            &s.ctx,
            &s.cells,
            s.cells.regular_heights[0],
            &StepPolicy::default(),
            false,
        )
        .unwrap();
        let cactus = cactus_structure(&s.ctx, &s.cells, 0, &below, &descents).unwrap();
        let joined = cactus
            .components
            .iter()
            .find(|comp| comp.cycles.len() == 2)
            .expect("a component with two cycles");
        let mut roots: Vec<usize> = joined
            .cycles
            .iter()
            .flat_map(|cy| cy.roots.iter().copied())
            .collect();
        roots.sort_unstable();
        assert_eq!(roots, vec![A, B]);
        assert_eq!(joined.branch_vertices.len(), 1);
        assert_eq!(cactus.components.len(), 4);
    }

    #[test]
    fn one_critical_value_cactus_is_wedge_of_d_cycles() {
        let d = 5;
        let p = one_critical_value_poly(c(0.7, 0.1), c(0.1, 0.2), c(-0.4, 0.5), d);
        let s = setup(p);
        let descents = full_descents(&s.ctx);
        let below = trace_level_set(
            &s.ctx,
            &s.cells,
            s.cells.regular_heights[0],
            &StepPolicy::default(),
            false,
        )
        .unwrap();
        let cactus = cactus_structure(&s.ctx, &s.cells, 0, &below, &descents).unwrap();
        assert_eq!(cactus.components.len(), 1);
        let comp = &cactus.components[0];
        assert_eq!(comp.cycles.len(), d);
        assert_eq!(comp.branch_vertices.len(), 1);
        assert_eq!(comp.branch_vertices[0].valence, 2 * d);
    }

    #[test]
    fn running_example_banyan_at_conjugate_argument() {
        let s = setup(running_example());
        let descents = full_descents(&s.ctx);
        let f = factorization(&s.direction_traces, &s.cells).unwrap();
        let rncp = real_noncrossing_partition(&f, &s.cells, 5).unwrap();
        let step = f.steps.iter().find(|st| st.argument_index == 1).unwrap();
        let banyan = banyan_structure(&s.ctx, &s.cells, step, &rncp, Some(&descents)).unwrap();
        assert_eq!(banyan.components.len(), 4);
        let nontrivial = banyan
            .components
            .iter()
            .find(|comp| comp.roots.len() > 1)
            .unwrap();
        // b = i connects the roots a1 and a4 to two infinity labels, the
        // component responsible for the (2,3) sector swap.
        assert_eq!(nontrivial.roots, vec![D, A]);
        assert_eq!(nontrivial.infinity_labels.len(), 2);
        assert_eq!(nontrivial.interior_vertices.len(), 1);
        assert_eq!(nontrivial.interior_vertices[0].valence, 4);
    }

    #[test]
    fn one_critical_value_banyan_has_2d_leaves() {
        let d = 4;
        let p = one_critical_value_poly(c(1.1, 0.0), c(0.0, 0.3), c(0.5, 0.6), d);
        let s = setup(p);
        let descents = full_descents(&s.ctx);
        let f = factorization(&s.direction_traces, &s.cells).unwrap();
        let rncp = real_noncrossing_partition(&f, &s.cells, d).unwrap();
        let banyan =
            banyan_structure(&s.ctx, &s.cells, &f.steps[0], &rncp, Some(&descents)).unwrap();
        assert_eq!(banyan.components.len(), 1);
        let comp = &banyan.components[0];
        assert_eq!(comp.roots.len() + comp.infinity_labels.len(), 2 * d);
        assert_eq!(comp.interior_vertices.len(), 1);
        assert_eq!(comp.interior_vertices[0].valence, 2 * d);
    }

    #[test]
    fn chain_partitions_noncrossing_against_every_sector_order() {
        let s = setup(running_example());
        let level_traces: Vec<_> = s
            .cells
            .regular_heights
            .iter()
            .map(|&t| trace_level_set(&s.ctx, &s.cells, t, &StepPolicy::default(), false).unwrap())
            .collect();
        let chain = partition_chain(&level_traces, 5).unwrap();
        for trace in &s.direction_traces {
            let order = trace.roots_by_infinity_index();
            for part in &chain.partitions {
                assert!(part.is_noncrossing(&order).unwrap());
            }
        }
    }

    #[test]
    fn euler_count_identity_running_example() {
        // V_B - E_B + F_B = 1 - d with V_B = d·k(ℓ+2) - Σ m(b).
        let s = setup(running_example());
        let d = s.ctx.degree();
        let (k, ell) = (s.cells.k(), s.cells.ell());
        let mult_sum: usize = s
            .ctx
            .crit
            .critical_points
            .entries
            .iter()
            .map(|e| e.multiplicity)
            .sum();
        let v = d * k * (ell + 2) - mult_sum;
        let e = d * k * (2 * ell + 3);
        let f = d * k * (ell + 1);
        assert_eq!(v as i64 - e as i64 + f as i64, 1 - d as i64);
    }

    #[allow(dead_code)]
    fn unused(_: Complex64) {}
}
