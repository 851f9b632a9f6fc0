//! JSON report schema and the deterministic serializer.
//!
//! Floats are emitted with 17 significant digits so byte-identical inputs
//! always produce byte-identical reports.

use std::io;

use polyannulus::analysis::{Analysis, Check, CheckStatus};
use polyannulus::Complex64;
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

#[derive(Serialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub coefficients: Vec<[f64; 2]>,
    pub degree: usize,
    pub leading_coefficient: [f64; 2],
    pub roots: Vec<[f64; 2]>,
    pub critical_points: Vec<CriticalPointReport>,
    pub critical_values: Vec<CriticalValueReport>,
    pub cell_structure: CellStructureReport,
    pub partition_chain: Vec<Vec<Vec<usize>>>,
    pub merge_chain: Option<Vec<Vec<Vec<usize>>>>,
    pub cyclic_orders: Vec<CyclicOrderReport>,
    pub factorization: FactorizationReport,
    pub real_noncrossing_partition: Vec<RncpEntryReport>,
    pub monodromy: MonodromyReport,
    pub checks: Vec<CheckReport>,
}

#[derive(Serialize)]
pub struct CriticalPointReport {
    pub point: [f64; 2],
    pub multiplicity: usize,
    pub value_index: usize,
}

#[derive(Serialize)]
pub struct CriticalValueReport {
    pub value: [f64; 2],
    pub multiplicity: usize,
    pub argument_index: usize,
    pub height_index: usize,
}

#[derive(Serialize)]
pub struct CellStructureReport {
    pub k: usize,
    pub ell: usize,
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub critical_arguments: Vec<f64>,
    pub critical_heights: Vec<f64>,
    pub regular_arguments: Vec<f64>,
    pub regular_heights: Vec<f64>,
}

#[derive(Serialize)]
pub struct CyclicOrderReport {
    pub sector: usize,
    pub order: Vec<usize>,
}

#[derive(Serialize)]
pub struct SectorPermutationReport {
    pub argument_index: usize,
    pub images: Vec<usize>,
    pub cycles: String,
}

#[derive(Serialize)]
pub struct FactorizationReport {
    pub base_sector: usize,
    pub sector_permutations: Vec<SectorPermutationReport>,
    pub product: Vec<usize>,
}

#[derive(Serialize)]
pub struct RncpEntryReport {
    pub argument_index: usize,
    pub argument: f64,
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Serialize)]
pub struct GeneratorReport {
    pub critical_value: [f64; 2],
    pub permutation: Vec<usize>,
    pub cycles: String,
}

#[derive(Serialize)]
pub struct MonodromyReport {
    pub generators: Vec<GeneratorReport>,
    pub generator_order: Vec<usize>,
    pub product_cycle_type: Vec<usize>,
}

#[derive(Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: String,
    pub detail: String,
}

pub fn status_str(status: CheckStatus) -> &'static str {
    match status {
        CheckStatus::Pass => "pass",
        CheckStatus::Fail => "fail",
        CheckStatus::Skipped => "skipped",
    }
}

pub fn check_report(check: &Check) -> CheckReport {
    CheckReport {
        name: check.name.to_string(),
        status: status_str(check.status).to_string(),
        detail: check.detail.clone(),
    }
}

pub fn build_report(analysis: &Analysis) -> AnalysisReport {
    let ctx = &analysis.ctx;
    let cells = &analysis.cells;
    AnalysisReport {
        schema_version: SCHEMA_VERSION,
        coefficients: ctx.poly.coefficients().iter().copied().map(pair).collect(),
        degree: ctx.degree(),
        leading_coefficient: pair(ctx.poly.leading_coefficient()),
        roots: ctx.roots.iter().copied().map(pair).collect(),
        critical_points: ctx
            .crit
            .critical_points
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| CriticalPointReport {
                point: pair(e.value),
                multiplicity: e.multiplicity,
                value_index: ctx.crit.value_of[i],
            })
            .collect(),
        critical_values: ctx
            .crit
            .critical_values
            .entries
            .iter()
            .enumerate()
            .map(|(i, e)| CriticalValueReport {
                value: pair(e.value),
                multiplicity: e.multiplicity,
                argument_index: cells.value_argument_index[i],
                height_index: cells.value_height_index[i],
            })
            .collect(),
        cell_structure: CellStructureReport {
            k: cells.k(),
            ell: cells.ell(),
            vertices: cells.counts.vertices,
            edges: cells.counts.edges,
            faces: cells.counts.faces,
            critical_arguments: cells.critical_arguments.clone(),
            critical_heights: cells.critical_heights.clone(),
            regular_arguments: cells.regular_arguments.clone(),
            regular_heights: cells.regular_heights.clone(),
        },
        partition_chain: analysis
            .chain
            .partitions
            .iter()
            .map(|p| p.blocks().to_vec())
            .collect(),
        merge_chain: analysis.merge_chain.as_ref().map(|chain| {
            chain
                .partitions
                .iter()
                .map(|p| p.blocks().to_vec())
                .collect()
        }),
        cyclic_orders: analysis
            .cyclic_orders
            .iter()
            .map(|o| CyclicOrderReport {
                sector: o.sector,
                order: o.sequence.clone(),
            })
            .collect(),
        factorization: FactorizationReport {
            base_sector: analysis.factorization.base_sector,
            sector_permutations: analysis
                .factorization
                .steps
                .iter()
                .map(|s| SectorPermutationReport {
                    argument_index: s.argument_index,
                    images: s.permutation.images().to_vec(),
                    cycles: s.permutation.to_string(),
                })
                .collect(),
            product: analysis.factorization.product.images().to_vec(),
        },
        real_noncrossing_partition: analysis
            .rncp
            .entries
            .iter()
            .map(|e| RncpEntryReport {
                argument_index: e.argument_index,
                argument: e.argument,
                blocks: e.partition.blocks().to_vec(),
            })
            .collect(),
        monodromy: MonodromyReport {
            generators: analysis
                .monodromy
                .generators
                .iter()
                .enumerate()
                .map(|(cv, g)| GeneratorReport {
                    critical_value: pair(ctx.crit.critical_values.entries[cv].value),
                    permutation: g.images().to_vec(),
                    cycles: g.to_string(),
                })
                .collect(),
            generator_order: analysis.monodromy.generator_order.clone(),
            product_cycle_type: analysis.monodromy.product_cycle_type.clone(),
        },
        checks: analysis.checks.iter().map(check_report).collect(),
    }
}

/// Compact JSON with every f64 rendered at 17 significant digits.
#[derive(Clone, Copy, Default)]
pub struct SigFigFormatter;

impl serde_json::ser::Formatter for SigFigFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

pub fn to_json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut out = Vec::new();
    let mut serializer = serde_json::Serializer::with_formatter(&mut out, SigFigFormatter);
    value
        .serialize(&mut serializer)
        .expect("report serialization cannot fail");
    out.push(b'\n');
    out
}
