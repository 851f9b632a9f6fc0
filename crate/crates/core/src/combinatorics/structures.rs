//! Cactus structures of critical level sets and banyan structures of
//! critical direction sets, assembled from the level traces on either side
//! and the descent data of the critical points involved.

use super::orders::{RealNoncrossingPartition, SectorStep};
use super::partition::DisjointSets;
use crate::annulus::AnnulusComplex;
use crate::lifting::LevelTrace;
use crate::poly::PolyContext;
use crate::{Error, Result};

/// A cycle of a critical-level cactus: the closed curve a component of the
/// level just below grows into. Its covering degree equals the number of
/// roots it encloses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CactusCycle {
    pub covering_degree: usize,
    pub roots: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CactusBranchVertex {
    pub critical_point: usize,
    pub multiplicity: usize,
    /// `2 (multiplicity + 1)`.
    pub valence: usize,
    /// Indices (within the component) of the cycles glued at this vertex;
    /// always `multiplicity + 1` distinct cycles.
    pub cycles: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CactusComponent {
    pub cycles: Vec<CactusCycle>,
    pub branch_vertices: Vec<CactusBranchVertex>,
}

/// The cactus structure of the critical level set at one critical height.
#[derive(Debug, Clone, PartialEq)]
pub struct CactusStructure {
    pub height_index: usize,
    pub height: f64,
    pub components: Vec<CactusComponent>,
}

/// Assemble the cactus at critical height `height_index` from the level
/// trace just below it and the descent data of the critical points there.
pub fn cactus_structure(
    ctx: &PolyContext,
    cells: &AnnulusComplex,
    height_index: usize,
    below: &LevelTrace,
    descent_roots: &[Vec<usize>],
) -> Result<CactusStructure> {
    let d = ctx.degree();
    let mut cycle_of_root = vec![usize::MAX; d];
    for (ci, comp) in below.components.iter().enumerate() {
        for &r in &comp.enclosed_roots {
            cycle_of_root[r] = ci;
        }
    }
    let n_cycles = below.components.len();

    // Which critical points sit at this height, and which cycles they glue.
    let mut vertices: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (cp, entry) in ctx.crit.critical_points.entries.iter().enumerate() {
        let value_index = ctx.crit.value_of[cp];
        if cells.value_height_index[value_index] != height_index {
            continue;
        }
        let mut cycles: Vec<usize> = descent_roots[cp]
            .iter()
            .map(|&r| cycle_of_root[r])
            .collect();
        cycles.sort_unstable();
        let before = cycles.len();
        cycles.dedup();
        if cycles.len() != before || cycles.len() != entry.multiplicity + 1 {
            return Err(Error::CactusInconsistent {
                detail: format!(
                    "critical point {cp} glues {} cycles, expected {}",
                    cycles.len(),
                    entry.multiplicity + 1
                ),
            });
        }
        vertices.push((cp, entry.multiplicity, cycles));
    }

    // Components of the cactus = cycles connected through shared vertices.
    let mut ds = DisjointSets::new(n_cycles);
    for (_, _, cycles) in &vertices {
        for pair in cycles.windows(2) {
            ds.union(pair[0], pair[1]);
        }
    }
    let mut component_of = vec![0usize; n_cycles];
    let mut component_ids: Vec<usize> = Vec::new();
    for (ci, slot) in component_of.iter_mut().enumerate() {
        let root = ds.find(ci);
        let idx = match component_ids.iter().position(|&r| r == root) {
            Some(i) => i,
            None => {
                component_ids.push(root);
                component_ids.len() - 1
            }
        };
        *slot = idx;
    }

    let mut components = vec![
        CactusComponent {
            cycles: Vec::new(),
            branch_vertices: Vec::new(),
        };
        component_ids.len()
    ];
    // Local index of each global cycle within its component.
    let mut local_index = vec![usize::MAX; n_cycles];
    for (ci, comp) in below.components.iter().enumerate() {
        let target = &mut components[component_of[ci]];
        local_index[ci] = target.cycles.len();
        target.cycles.push(CactusCycle {
            covering_degree: comp.strand_cycle.len(),
            roots: comp.enclosed_roots.clone(),
        });
    }
    for (cp, multiplicity, cycles) in vertices {
        let comp_idx = component_of[cycles[0]];
        components[comp_idx]
            .branch_vertices
            .push(CactusBranchVertex {
                critical_point: cp,
                multiplicity,
                valence: 2 * (multiplicity + 1),
                cycles: cycles.iter().map(|&ci| local_index[ci]).collect(),
            });
    }

    let total: usize = components
        .iter()
        .flat_map(|c| c.cycles.iter())
        .map(|cy| cy.covering_degree)
        .sum();
    if total != d {
        return Err(Error::CactusInconsistent {
            detail: format!("cycle degrees sum to {total}, expected {d}"),
        });
    }

    Ok(CactusStructure {
        height_index,
        height: cells.critical_heights[height_index],
        components,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BanyanVertex {
    pub critical_point: usize,
    pub multiplicity: usize,
    /// `2 (multiplicity + 1)`.
    pub valence: usize,
}

/// A component of a critical direction set: a tree connecting some roots at
/// the bottom to some infinity labels at the top.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BanyanComponent {
    pub infinity_labels: Vec<usize>,
    pub roots: Vec<usize>,
    pub interior_vertices: Vec<BanyanVertex>,
}

/// The banyan structure of the critical direction set at one critical
/// argument.
#[derive(Debug, Clone, PartialEq)]
pub struct BanyanStructure {
    pub argument_index: usize,
    pub argument: f64,
    pub components: Vec<BanyanComponent>,
}

/// Assemble the banyan at the critical argument crossed by `step`, checking
/// the component structure against the real noncrossing partition entry and
/// (when available) the descent data.
pub fn banyan_structure(
    ctx: &PolyContext,
    cells: &AnnulusComplex,
    step: &SectorStep,
    rncp: &RealNoncrossingPartition,
    descent_roots: Option<&[Vec<usize>]>,
) -> Result<BanyanStructure> {
    let d = ctx.degree();
    let entry = rncp
        .entry_at(step.argument_index)
        .ok_or_else(|| Error::BanyanInconsistent {
            detail: format!("no rncp entry for argument index {}", step.argument_index),
        })?;

    let mut components = Vec::new();
    for block in entry.partition.blocks() {
        // Labels back to positions, positions to roots via the clockwise-side
        // linear order.
        let mut roots: Vec<usize> = block
            .iter()
            .map(|&label| step.prev_order[(label + d - step.label_shift) % d])
            .collect();
        roots.sort_unstable();
        let ccw_side: Vec<usize> = {
            let mut r: Vec<usize> = block
                .iter()
                .map(|&label| step.next_order[(label + d - step.label_shift) % d])
                .collect();
            r.sort_unstable();
            r
        };
        if roots != ccw_side {
            return Err(Error::BanyanInconsistent {
                detail: format!(
                    "block {:?} connects different root sets on the two sides",
                    block
                ),
            });
        }
        components.push(BanyanComponent {
            infinity_labels: block.clone(),
            roots,
            interior_vertices: Vec::new(),
        });
    }

    // Attach the critical points at this argument to the components whose
    // roots contain their descent roots.
    let mut expected_vertices = 0usize;
    for (cp, entry_cp) in ctx.crit.critical_points.entries.iter().enumerate() {
        let value_index = ctx.crit.value_of[cp];
        if cells.value_argument_index[value_index] != step.argument_index {
            continue;
        }
        expected_vertices += 1;
        if let Some(descents) = descent_roots {
            let mine = &descents[cp];
            let host = components
                .iter_mut()
                .find(|comp| comp.roots.len() > 1 && mine.iter().all(|r| comp.roots.contains(r)));
            match host {
                Some(comp) => comp.interior_vertices.push(BanyanVertex {
                    critical_point: cp,
                    multiplicity: entry_cp.multiplicity,
                    valence: 2 * (entry_cp.multiplicity + 1),
                }),
                None => {
                    return Err(Error::BanyanInconsistent {
                        detail: format!(
                            "descent roots {:?} of critical point {cp} fit no component",
                            mine
                        ),
                    })
                }
            }
        }
    }

    if let Some(_descents) = descent_roots {
        // Every nontrivial component needs at least one interior vertex, and
        // its root set must be exactly the union of their descent roots.
        for comp in &components {
            if comp.roots.len() > 1 {
                let mut union: Vec<usize> = comp
                    .interior_vertices
                    .iter()
                    .flat_map(|v| _descents[v.critical_point].iter().copied())
                    .collect();
                union.sort_unstable();
                union.dedup();
                if union != comp.roots {
                    return Err(Error::BanyanInconsistent {
                        detail: format!(
                            "component roots {:?} differ from descent union {:?}",
                            comp.roots, union
                        ),
                    });
                }
            }
        }
        let placed: usize = components.iter().map(|c| c.interior_vertices.len()).sum();
        if placed != expected_vertices {
            return Err(Error::BanyanInconsistent {
                detail: format!("{placed} interior vertices placed, expected {expected_vertices}"),
            });
        }
    }

    Ok(BanyanStructure {
        argument_index: step.argument_index,
        argument: cells.critical_arguments[step.argument_index],
        components,
    })
}
