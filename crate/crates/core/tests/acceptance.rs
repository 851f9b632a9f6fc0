//! Acceptance suite: one test per criterion, each printing a pass line with
//! its runtime. Run with `cargo test --test acceptance -- --nocapture`.

mod common;

use std::time::Instant;

use common::{
    c, one_critical_value_poly, random_separated_polynomial, running_example, seeded_rng, A, B, C,
    D, E,
};
use polyannulus::analysis::{analyze, AnalysisConfig, CheckStatus};
use polyannulus::combinatorics::{CyclicOrder, Partition};
use polyannulus::perm::Perm;
use polyannulus::poly::{critical_data, find_roots, PolyContext, Tolerances};
use polyannulus::{exec, Complex64};
use rand::Rng;

fn report(criterion: &str, start: Instant, limit_s: f64, detail: &str) {
    let elapsed = start.elapsed().as_secs_f64();
    println!("acceptance {criterion}: PASS in {elapsed:.2} s ({detail})");
    assert!(
        elapsed < limit_s,
        "{criterion} exceeded its runtime budget: {elapsed:.2} s >= {limit_s} s"
    );
}

#[test]
fn criterion_1_running_example_end_to_end() {
    let start = Instant::now();
    let analysis = analyze(running_example(), &AnalysisConfig::parallel()).unwrap();

    let known_roots = [
        c(0.0, 0.0),
        c(1.7944, 0.0),
        c(3.5972, 0.0),
        c(-0.1958, 1.5117),
        c(-0.1958, -1.5117),
    ];
    for q in known_roots {
        assert!(
            analysis.ctx.roots.iter().any(|r| (r - q).norm() < 1e-3),
            "no root within 1e-3 of {q}"
        );
    }
    let exact_points = [c(1.0, 0.0), c(3.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)];
    for q in exact_points {
        assert!(
            analysis
                .ctx
                .crit
                .critical_points
                .values()
                .iter()
                .any(|b| (b - q).norm() < 1e-8),
            "no critical point within 1e-8 of {q}"
        );
    }
    let exact_values = [c(0.46, 0.0), c(-1.62, 0.0), c(0.3, 0.56), c(0.3, -0.56)];
    for q in exact_values {
        assert!(
            analysis
                .ctx
                .crit
                .critical_values
                .values()
                .iter()
                .any(|v| (v - q).norm() < 1e-8),
            "no critical value within 1e-8 of {q}"
        );
    }
    assert!(analysis.all_checks_pass());
    report(
        "criterion 1 (running example roots/cpt/cvl)",
        start,
        5.0,
        "roots to 1e-3, critical data to 1e-8",
    );
}

#[test]
fn criterion_2_cell_structure() {
    let start = Instant::now();
    let ctx = PolyContext::prepare(running_example(), &Tolerances::default()).unwrap();
    let cells = polyannulus::annulus::build_cell_structure(&ctx.crit.critical_values).unwrap();
    assert_eq!(cells.k(), 4);
    assert_eq!(cells.ell(), 3);
    assert_eq!(cells.counts.vertices, 20);
    assert_eq!(cells.counts.edges, 36);
    assert_eq!(cells.counts.faces, 16);
    report(
        "criterion 2 (cell structure)",
        start,
        5.0,
        "k = 4, ell = 3, counts (20, 36, 16)",
    );
}

#[test]
fn criterion_3_partition_chain_both_algorithms() {
    let start = Instant::now();
    let analysis = analyze(running_example(), &AnalysisConfig::parallel()).unwrap();
    let expected = vec![
        Partition::discrete(5),
        Partition::new(vec![vec![A, B], vec![C], vec![D], vec![E]], 5).unwrap(),
        Partition::new(vec![vec![A, B, D, E], vec![C]], 5).unwrap(),
        Partition::trivial(5),
    ];
    assert_eq!(analysis.chain.partitions, expected);
    let merge = analysis.merge_chain.as_ref().expect("merge oracle ran");
    assert_eq!(merge, &analysis.chain);
    report(
        "criterion 3 (partition chain, winding and merge agree)",
        start,
        30.0,
        "Discrete < {a1 a2} < {a1 a2 a4 a5}{a3} < Trivial",
    );
}

#[test]
fn criterion_4_cyclic_orders() {
    let start = Instant::now();
    let analysis = analyze(running_example(), &AnalysisConfig::parallel()).unwrap();
    let expected = [
        vec![C, A, D, E, B],
        vec![C, D, A, E, B],
        vec![B, D, A, E, C],
        vec![B, D, E, A, C],
    ];
    assert_eq!(analysis.cyclic_orders.len(), 4);
    for (j, exp) in expected.iter().enumerate() {
        assert_eq!(
            analysis.cyclic_orders[j],
            CyclicOrder::canonical(j, exp.clone()),
            "sector {j}"
        );
    }
    report(
        "criterion 4 (sector cyclic orders)",
        start,
        30.0,
        "(c a d e b), (c d a e b), (b d a e c), (b d e a c)",
    );
}

#[test]
fn criterion_5_factorization() {
    let start = Instant::now();
    let analysis = analyze(running_example(), &AnalysisConfig::parallel()).unwrap();
    let expected = vec![
        Perm::transposition(5, 1, 2), // (2,3)
        Perm::transposition(5, 0, 4), // (1,5)
        Perm::transposition(5, 2, 3), // (3,4)
        Perm::transposition(5, 0, 3), // (1,4)
    ];
    assert_eq!(analysis.factorization.sector_permutations(), expected);
    assert_eq!(analysis.factorization.product, Perm::ascending_cycle(5));
    report(
        "criterion 5 (factorization)",
        start,
        30.0,
        "(2,3)(1,5)(3,4)(1,4) with product (1 2 3 4 5)",
    );
}

#[test]
fn criterion_6_monodromy() {
    let start = Instant::now();
    let analysis = analyze(running_example(), &AnalysisConfig::parallel()).unwrap();
    let cv_046 = analysis
        .ctx
        .crit
        .critical_values
        .entries
        .iter()
        .position(|e| (e.value - c(0.46, 0.0)).norm() < 1e-8)
        .unwrap();
    assert_eq!(
        analysis.monodromy.generators[cv_046],
        Perm::transposition(5, A, B),
        "generator for 0.46 must swap exactly a1 and a2"
    );
    assert_eq!(analysis.monodromy.product_cycle_type, vec![5]);
    // Transitivity is enforced inside monodromy_representation; reaching this
    // point means it held.
    report(
        "criterion 6 (monodromy)",
        start,
        30.0,
        "generator (a1, a2); product of the four generators is a 5-cycle; transitive",
    );
}

#[test]
fn criterion_7_one_critical_value_family() {
    let start = Instant::now();
    let mut rng = seeded_rng(0x0C7A_11E5);
    let mut cases = Vec::new();
    for d in 2..=7usize {
        for _ in 0..20 {
            let a = Complex64::from_polar(
                rng.gen_range(0.5..2.0),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let b = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let cc = Complex64::from_polar(
                rng.gen_range(0.3..2.0),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            cases.push((d, a, b, cc));
        }
    }
    let results = exec::map(true, cases, |(d, a, b, cc)| {
        let analysis = analyze(
            one_critical_value_poly(a, b, cc, d),
            &AnalysisConfig::sequential(),
        )
        .unwrap_or_else(|e| panic!("d = {d}, a = {a}, b = {b}, c = {cc}: {e}"));
        assert_eq!(analysis.chain.partitions.len(), 2, "Discrete < Trivial");
        assert!(analysis.chain.partitions[0].is_discrete());
        assert!(analysis.chain.partitions[1].is_trivial());
        assert_eq!(analysis.factorization.steps.len(), 1);
        assert_eq!(
            analysis.factorization.steps[0].permutation,
            Perm::ascending_cycle(d),
            "single factorization permutation is the d-cycle"
        );
        assert_eq!(analysis.monodromy.generators.len(), 1);
        assert_eq!(analysis.monodromy.generators[0].cycle_type(), vec![d]);
        // Below the critical height: d singleton cycles; above: one d-cycle.
        assert_eq!(
            analysis.level_traces[0].cycle_lengths(),
            vec![1; d],
            "below-critical level trace"
        );
        assert_eq!(
            analysis.level_traces[1].cycle_lengths(),
            vec![d],
            "above-critical level trace"
        );
        d
    });
    assert_eq!(results.len(), 120);
    report(
        "criterion 7 (one-critical-value family)",
        start,
        30.0,
        "d in 2..=7, 20 randomized trials each",
    );
}

#[test]
fn criterion_8_property_suite_on_random_corpus() {
    let start = Instant::now();
    let mut rng = seeded_rng(0x5EED_CAFE);
    let mut corpus = Vec::new();
    while corpus.len() < 50 {
        let degree = rng.gen_range(4..=8usize);
        let poly = random_separated_polynomial(&mut rng, degree);
        // Distinctness is by construction (separation 0.4); anything the
        // validator rejects is resampled, everything else must pass.
        if polyannulus::poly::validate_distinct_roots(&poly, &Tolerances::default())
            .map(|r| r.ok)
            .unwrap_or(false)
        {
            corpus.push(poly);
        }
    }

    let cfg = AnalysisConfig::sequential();
    let halved = AnalysisConfig {
        policy: cfg.policy.halved(),
        ..cfg
    };
    exec::map(true, corpus, |poly| {
        let analysis = analyze(poly.clone(), &cfg)
            .unwrap_or_else(|e| panic!("analysis failed on corpus polynomial: {e}"));
        let d = analysis.ctx.degree();

        // Covering-degree identity, exactly.
        for trace in &analysis.level_traces {
            for comp in &trace.components {
                assert_eq!(comp.strand_cycle.len(), comp.enclosed_roots.len());
            }
            assert_eq!(trace.cycle_lengths().iter().sum::<usize>(), d);
        }
        // Chain strictly monotone from discrete to trivial (enforced by
        // construction; assert the endpoints again).
        assert!(analysis.chain.partitions.first().unwrap().is_discrete());
        assert!(analysis.chain.partitions.last().unwrap().is_trivial());
        for pair in analysis.chain.partitions.windows(2) {
            assert!(pair[0].strictly_refines(&pair[1]));
        }
        // Every chain partition noncrossing against every sector order.
        for trace in &analysis.direction_traces {
            let order = trace.roots_by_infinity_index();
            for part in &analysis.chain.partitions {
                assert!(part.is_noncrossing(&order).unwrap());
            }
        }
        // Multiplicity sum.
        let mult: usize = analysis
            .ctx
            .crit
            .critical_points
            .entries
            .iter()
            .map(|e| e.multiplicity)
            .sum();
        assert_eq!(mult, d - 1);
        // Euler count for the branched annulus.
        let (k, ell) = (analysis.cells.k(), analysis.cells.ell());
        let v = (d * k * (ell + 2)) as i64 - mult as i64;
        let e = (d * k * (2 * ell + 3)) as i64;
        let f = (d * k * (ell + 1)) as i64;
        assert_eq!(v - e + f, 1 - d as i64);
        // No check may fail (skipped merge checks are allowed).
        for check in &analysis.checks {
            assert_ne!(
                check.status,
                CheckStatus::Fail,
                "{}: {}",
                check.name,
                check.detail
            );
        }
        // Step halving reproduces all combinatorial outputs bit for bit.
        let rerun = analyze(poly, &halved).unwrap();
        assert_eq!(
            analysis.combinatorial_fingerprint(),
            rerun.combinatorial_fingerprint()
        );
    });
    report(
        "criterion 8 (property suite, 50 random degree-4..8 polynomials)",
        start,
        300.0,
        "covering identity, chain, noncrossing, Euler, step halving",
    );
}

// Criterion 9 (byte-identical analyze reports) exercises the CLI binary and
// lives in the polyannulus-cli acceptance suite.

#[test]
fn oracle_roots_and_critical_data_used_by_criteria() {
    // the 1e-8 targets of criterion 1 presuppose that p' factors as
    // .3(z-1)(z-3)(z^2+1) and that p evaluates exactly at those points; check
    // the factorization numerically so the criterion rests on verified data.
    let p = running_example();
    let ms = find_roots(&p).unwrap();
    assert_eq!(ms.size(), 5);
    let crit = critical_data(&p).unwrap();
    for (b, expected) in [
        (c(1.0, 0.0), c(0.46, 0.0)),
        (c(3.0, 0.0), c(-1.62, 0.0)),
        (c(0.0, 1.0), c(0.3, 0.56)),
        (c(0.0, -1.0), c(0.3, -0.56)),
    ] {
        assert!(p.derivative().eval(b).norm() < 1e-14);
        assert!((p.eval(b) - expected).norm() < 1e-14);
    }
    assert_eq!(crit.critical_points.size(), 4);
}
