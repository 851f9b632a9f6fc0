//! End-to-end pipeline: prepare the polynomial, build the cell structure,
//! trace everything, extract the combinatorial invariants, and run the
//! cross-check suite.

use std::fmt::Write as _;

use crate::annulus::{build_cell_structure, AnnulusComplex};
use crate::combinatorics::{
    banyan_structure, cactus_structure, cyclic_order_from_direction, factorization,
    merge_chain_oracle, partition_chain, real_noncrossing_partition, BanyanStructure,
    CactusStructure, CyclicOrder, Factorization, PartitionChain, RealNoncrossingPartition,
};
use crate::lifting::{
    descend_from_critical_point, trace_direction_set, trace_level_set, DirectionTrace, LevelTrace,
    StepPolicy,
};
use crate::monodromy::{monodromy_representation, MonodromyRep};
use crate::poly::{PolyContext, Polynomial, Tolerances};
use crate::{exec, Error, Result};

#[derive(Debug, Clone, Copy, Default)]
pub struct AnalysisConfig {
    pub tolerances: Tolerances,
    pub policy: StepPolicy,
    /// Fan out independent traces over the rayon pool (no effect without the
    /// `parallel` feature).
    pub parallel: bool,
}

impl AnalysisConfig {
    pub fn sequential() -> Self {
        AnalysisConfig {
            parallel: false,
            ..AnalysisConfig::default()
        }
    }

    pub fn parallel() -> Self {
        AnalysisConfig {
            parallel: true,
            ..AnalysisConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    fn pass(name: &'static str, detail: String) -> Self {
        Check {
            name,
            status: CheckStatus::Pass,
            detail,
        }
    }

    fn fail(name: &'static str, detail: String) -> Self {
        Check {
            name,
            status: CheckStatus::Fail,
            detail,
        }
    }

    fn skipped(name: &'static str, detail: String) -> Self {
        Check {
            name,
            status: CheckStatus::Skipped,
            detail,
        }
    }

    fn verdict(name: &'static str, ok: bool, detail: String) -> Self {
        if ok {
            Check::pass(name, detail)
        } else {
            Check::fail(name, detail)
        }
    }
}

/// Everything the pipeline computes for one polynomial.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub ctx: PolyContext,
    pub cells: AnnulusComplex,
    pub level_traces: Vec<LevelTrace>,
    pub direction_traces: Vec<DirectionTrace>,
    pub chain: PartitionChain,
    /// Descent roots per critical point entry; `None` when a descent stalled
    /// and the union-find route is unavailable.
    pub descents: Option<Vec<Vec<usize>>>,
    pub merge_chain: Option<PartitionChain>,
    pub cyclic_orders: Vec<CyclicOrder>,
    pub factorization: Factorization,
    pub rncp: RealNoncrossingPartition,
    pub cacti: Option<Vec<CactusStructure>>,
    pub banyans: Vec<BanyanStructure>,
    pub monodromy: MonodromyRep,
    pub checks: Vec<Check>,
}

impl Analysis {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    /// Deterministic digest of every combinatorial output; used by the
    /// step-halving regression, which must reproduce it bit for bit.
    pub fn combinatorial_fingerprint(&self) -> String {
        let mut s = String::new();
        for t in &self.level_traces {
            let _ = write!(s, "L{:?};", t.permutation);
        }
        for t in &self.direction_traces {
            let _ = write!(s, "D{:?};", t.infinity_index_of);
        }
        for p in &self.chain.partitions {
            let _ = write!(s, "C{:?};", p.blocks());
        }
        if let Some(merge) = &self.merge_chain {
            for p in &merge.partitions {
                let _ = write!(s, "M{:?};", p.blocks());
            }
        }
        for o in &self.cyclic_orders {
            let _ = write!(s, "O{:?};", o.sequence);
        }
        for step in &self.factorization.steps {
            let _ = write!(
                s,
                "F{}:{:?}:{};",
                step.argument_index,
                step.permutation.images(),
                step.label_shift
            );
        }
        for e in &self.rncp.entries {
            let _ = write!(s, "R{}:{:?};", e.argument_index, e.partition.blocks());
        }
        for g in &self.monodromy.generators {
            let _ = write!(s, "G{:?};", g.images());
        }
        let _ = write!(
            s,
            "P{:?}:{:?};",
            self.monodromy.generator_order, self.monodromy.product_cycle_type
        );
        s
    }
}

/// Run the full pipeline on `poly`.
pub fn analyze(poly: Polynomial, cfg: &AnalysisConfig) -> Result<Analysis> {
    let ctx = PolyContext::prepare(poly, &cfg.tolerances)?;
    let cells = build_cell_structure(&ctx.crit.critical_values)?;
    let d = ctx.degree();

    let level_traces = exec::try_map(cfg.parallel, cells.regular_heights.clone(), |t| {
        trace_level_set(&ctx, &cells, t, &cfg.policy, false)
    })?;
    let chain = partition_chain(&level_traces, d)?;

    let direction_traces = exec::try_map(cfg.parallel, cells.regular_arguments.clone(), |u| {
        trace_direction_set(&ctx, &cells, u, &cfg.policy, false)
    })?;
    let cyclic_orders: Vec<CyclicOrder> = direction_traces
        .iter()
        .enumerate()
        .map(|(j, t)| cyclic_order_from_direction(t, j))
        .collect();

    let factorization = factorization(&direction_traces, &cells)?;
    let rncp = real_noncrossing_partition(&factorization, &cells, d)?;

    // Descents; a stalled configuration switches off the union-find route and
    // the structures that need it, but does not abort the analysis.
    let n_cp = ctx.crit.critical_points.entries.len();
    let mut descents: Option<Vec<Vec<usize>>> = Some(Vec::with_capacity(n_cp));
    let mut stall_detail = String::new();
    for cp in 0..n_cp {
        match descend_from_critical_point(&ctx, cp, &cfg.policy) {
            Ok((roots, _)) => {
                if let Some(list) = descents.as_mut() {
                    list.push(roots);
                }
            }
            Err(Error::DescentStalled { index }) => {
                let _ = write!(stall_detail, "descent stalled at critical point {index}; ");
                descents = None;
                break;
            }
            Err(other) => return Err(other),
        }
    }

    let merge_chain = match &descents {
        Some(list) => Some(merge_chain_oracle(&ctx, &cells, list)?),
        None => None,
    };

    let cacti = match &descents {
        Some(list) => {
            let mut out = Vec::with_capacity(cells.ell());
            for (h, below) in level_traces.iter().take(cells.ell()).enumerate() {
                out.push(cactus_structure(&ctx, &cells, h, below, list)?);
            }
            Some(out)
        }
        None => None,
    };

    let banyans: Vec<BanyanStructure> = factorization
        .steps
        .iter()
        .map(|step| banyan_structure(&ctx, &cells, step, &rncp, descents.as_deref()))
        .collect::<Result<_>>()?;

    let monodromy = monodromy_representation(&ctx, &cfg.policy, cfg.parallel)?;

    let mut analysis = Analysis {
        ctx,
        cells,
        level_traces,
        direction_traces,
        chain,
        descents,
        merge_chain,
        cyclic_orders,
        factorization,
        rncp,
        cacti,
        banyans,
        monodromy,
        checks: Vec::new(),
    };
    analysis.checks = run_checks(&analysis, &stall_detail);
    Ok(analysis)
}

fn run_checks(a: &Analysis, stall_detail: &str) -> Vec<Check> {
    let mut checks = Vec::new();
    let d = a.ctx.degree();

    checks.push(Check::pass(
        "distinct_roots",
        format!(
            "min root separation {:.3e}, min critical value modulus {:.3e}",
            a.ctx.report.min_root_separation, a.ctx.report.min_critical_value_modulus
        ),
    ));

    let mult_sum: usize = a
        .ctx
        .crit
        .critical_points
        .entries
        .iter()
        .map(|e| e.multiplicity)
        .sum();
    checks.push(Check::verdict(
        "critical_multiplicity_sum",
        mult_sum == d - 1,
        format!("sum {} vs degree-1 {}", mult_sum, d - 1),
    ));

    let (k, ell) = (a.cells.k(), a.cells.ell());
    let counts = a.cells.counts;
    let counts_ok = counts.vertices == k * (ell + 2)
        && counts.edges == k * (2 * ell + 3)
        && counts.faces == k * (ell + 1)
        && counts.vertices + counts.faces == counts.edges;
    checks.push(Check::verdict(
        "cell_counts",
        counts_ok,
        format!(
            "k = {k}, ell = {ell}, (V, E, F) = ({}, {}, {})",
            counts.vertices, counts.edges, counts.faces
        ),
    ));

    let mut covering_ok = true;
    for trace in &a.level_traces {
        for comp in &trace.components {
            if comp.strand_cycle.len() != comp.enclosed_roots.len() {
                covering_ok = false;
            }
        }
        if trace.cycle_lengths().iter().sum::<usize>() != d {
            covering_ok = false;
        }
    }
    checks.push(Check::verdict(
        "covering_degree_identity",
        covering_ok,
        format!("{} regular level traces", a.level_traces.len()),
    ));

    checks.push(Check::pass(
        "chain_monotone",
        format!(
            "{} partitions, discrete to trivial",
            a.chain.partitions.len()
        ),
    ));

    match &a.merge_chain {
        Some(merge) => checks.push(Check::verdict(
            "merge_oracle_agrees",
            merge == &a.chain,
            "union-find chain vs winding chain".into(),
        )),
        None => checks.push(Check::skipped(
            "merge_oracle_agrees",
            format!("{stall_detail}level-trace chain still verified"),
        )),
    }

    let mut noncrossing_ok = true;
    for trace in &a.direction_traces {
        let order = trace.roots_by_infinity_index();
        for part in &a.chain.partitions {
            if !part.is_noncrossing(&order).unwrap_or(false) {
                noncrossing_ok = false;
            }
        }
    }
    checks.push(Check::verdict(
        "chain_noncrossing_in_every_sector",
        noncrossing_ok,
        format!(
            "{} partitions x {} sectors",
            a.chain.partitions.len(),
            a.direction_traces.len()
        ),
    ));

    checks.push(Check::verdict(
        "factorization_product_is_d_cycle",
        a.factorization.product == crate::perm::Perm::ascending_cycle(d),
        format!("product {}", a.factorization.product),
    ));

    let mut orbit_ok = true;
    for step in &a.factorization.steps {
        let orbit_weight: usize = step
            .permutation
            .nontrivial_orbits()
            .iter()
            .map(|o| o.len() - 1)
            .sum();
        let mult_at: usize = a
            .ctx
            .crit
            .critical_points
            .entries
            .iter()
            .enumerate()
            .filter(|(cp, _)| {
                a.cells.value_argument_index[a.ctx.crit.value_of[*cp]] == step.argument_index
            })
            .map(|(_, e)| e.multiplicity)
            .sum();
        if orbit_weight != mult_at {
            orbit_ok = false;
        }
    }
    checks.push(Check::verdict(
        "sector_orbits_match_multiplicities",
        orbit_ok,
        format!("{} sector permutations", a.factorization.steps.len()),
    ));

    let mut rncp_ok = a.rncp.entries.len() == k;
    for entry in &a.rncp.entries {
        let nontrivial = entry.partition.nontrivial_blocks().count();
        let points_at: usize = (0..a.ctx.crit.critical_points.entries.len())
            .filter(|&cp| {
                a.cells.value_argument_index[a.ctx.crit.value_of[cp]] == entry.argument_index
            })
            .count();
        if nontrivial != points_at {
            rncp_ok = false;
        }
    }
    checks.push(Check::verdict(
        "rncp_blocks_match_critical_points",
        rncp_ok,
        format!("{} entries", a.rncp.entries.len()),
    ));

    let v_b = (d * k * (ell + 2)) as i64 - mult_sum as i64;
    let e_b = (d * k * (2 * ell + 3)) as i64;
    let f_b = (d * k * (ell + 1)) as i64;
    checks.push(Check::verdict(
        "euler_branched_annulus",
        v_b - e_b + f_b == 1 - d as i64,
        format!(
            "V - E + F = {} vs 1 - d = {}",
            v_b - e_b + f_b,
            1 - d as i64
        ),
    ));

    match &a.cacti {
        Some(cacti) => {
            let mut ok = true;
            for cactus in cacti {
                let total: usize = cactus
                    .components
                    .iter()
                    .flat_map(|c| c.cycles.iter())
                    .map(|cy| cy.covering_degree)
                    .sum();
                if total != d {
                    ok = false;
                }
                for comp in &cactus.components {
                    for v in &comp.branch_vertices {
                        if v.valence != 2 * (v.multiplicity + 1)
                            || v.cycles.len() != v.multiplicity + 1
                        {
                            ok = false;
                        }
                    }
                }
            }
            checks.push(Check::verdict(
                "cactus_structure",
                ok,
                format!("{} critical heights", cacti.len()),
            ));
        }
        None => checks.push(Check::skipped(
            "cactus_structure",
            "descent data unavailable".into(),
        )),
    }

    let mut banyan_ok = true;
    for banyan in &a.banyans {
        let mut labels: Vec<usize> = banyan
            .components
            .iter()
            .flat_map(|c| c.infinity_labels.iter().copied())
            .collect();
        labels.sort_unstable();
        if labels != (0..d).collect::<Vec<_>>() {
            banyan_ok = false;
        }
        for comp in &banyan.components {
            for v in &comp.interior_vertices {
                if v.valence != 2 * (v.multiplicity + 1) {
                    banyan_ok = false;
                }
            }
        }
    }
    checks.push(Check::verdict(
        "banyan_structure",
        banyan_ok,
        format!("{} critical arguments", a.banyans.len()),
    ));

    let mut generator_ok = true;
    for (cv, g) in a.monodromy.generators.iter().enumerate() {
        let moved: usize = g.cycles().iter().map(|c| c.len()).filter(|&l| l > 1).sum();
        let expected: usize = a
            .ctx
            .crit
            .points_of_value(cv)
            .iter()
            .map(|&cp| a.ctx.crit.critical_points.entries[cp].multiplicity + 1)
            .sum();
        if moved != expected {
            generator_ok = false;
        }
    }
    checks.push(Check::verdict(
        "monodromy_generator_cycle_types",
        generator_ok,
        format!("{} generators", a.monodromy.generators.len()),
    ));

    checks.push(Check::pass(
        "monodromy_transitive",
        "generated group acts transitively".into(),
    ));

    checks.push(Check::verdict(
        "monodromy_product_cycle_type",
        a.monodromy.product_cycle_type == vec![d],
        format!("{:?}", a.monodromy.product_cycle_type),
    ));

    let top_is_big_cycle = a
        .level_traces
        .last()
        .map(|t| t.cycle_lengths() == vec![d])
        .unwrap_or(false);
    checks.push(Check::verdict(
        "near_infinity_wraps_d_times",
        top_is_big_cycle,
        "top regular level trace is a single d-cycle".into(),
    ));

    checks
}

/// Re-run the pipeline with every continuation step halved and compare the
/// combinatorial fingerprints.
pub fn step_halving_regression(poly: &Polynomial, cfg: &AnalysisConfig) -> Result<Check> {
    let base = analyze(poly.clone(), cfg)?;
    let halved_cfg = AnalysisConfig {
        policy: cfg.policy.halved(),
        ..*cfg
    };
    let halved = analyze(poly.clone(), &halved_cfg)?;
    Ok(Check::verdict(
        "step_halving_regression",
        base.combinatorial_fingerprint() == halved.combinatorial_fingerprint(),
        "all combinatorial outputs reproduced at halved steps".into(),
    ))
}
