//! The chain of root partitions read off the regular level sets, and the
//! independent union-find oracle built from descent data.

use super::partition::{DisjointSets, Partition};
use crate::annulus::AnnulusComplex;
use crate::lifting::LevelTrace;
use crate::poly::PolyContext;
use crate::{Error, Result};

/// Strictly increasing chain from the discrete to the trivial partition, one
/// entry per regular height (bottom to top).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionChain {
    pub partitions: Vec<Partition>,
}

/// The partition of the roots by level-set component: a block per component,
/// holding the roots that component encloses.
pub fn partition_from_level(trace: &LevelTrace, root_count: usize) -> Result<Partition> {
    let mut enclosed_by = vec![0usize; root_count];
    for comp in &trace.components {
        for &root in &comp.enclosed_roots {
            enclosed_by[root] += 1;
        }
    }
    for (root, &count) in enclosed_by.iter().enumerate() {
        if count != 1 {
            return Err(Error::WindingInconsistent { root, count });
        }
    }
    let blocks: Vec<Vec<usize>> = trace
        .components
        .iter()
        .map(|c| c.enclosed_roots.clone())
        .collect();
    Partition::new(blocks, root_count)
}

/// Assemble the chain from the traces at the regular heights, bottom to top,
/// and enforce the chain axioms. Monotonicity failures abort rather than
/// self-repair.
pub fn partition_chain(traces: &[LevelTrace], root_count: usize) -> Result<PartitionChain> {
    let partitions: Vec<Partition> = traces
        .iter()
        .map(|t| partition_from_level(t, root_count))
        .collect::<Result<_>>()?;
    for i in 1..partitions.len() {
        if !partitions[i - 1].strictly_refines(&partitions[i]) {
            return Err(Error::ChainNotMonotone {
                lower: i - 1,
                upper: i,
            });
        }
    }
    match (partitions.first(), partitions.last()) {
        (Some(first), Some(last)) if first.is_discrete() && last.is_trivial() => {}
        _ => {
            return Err(Error::ChainNotMonotone {
                lower: 0,
                upper: partitions.len().saturating_sub(1),
            })
        }
    }
    Ok(PartitionChain { partitions })
}

/// Union-find oracle for the chain: walk the critical heights bottom to top,
/// union the descent roots of every critical point at that height, and
/// snapshot after each height. Must reproduce [`partition_chain`] exactly.
pub fn merge_chain_oracle(
    ctx: &PolyContext,
    cells: &AnnulusComplex,
    descent_roots: &[Vec<usize>],
) -> Result<PartitionChain> {
    let d = ctx.degree();
    let mut ds = DisjointSets::new(d);
    let mut partitions = vec![ds.partition()];
    for height in 0..cells.ell() {
        for (cp, roots) in descent_roots.iter().enumerate() {
            let value_index = ctx.crit.value_of[cp];
            if cells.value_height_index[value_index] == height {
                for pair in roots.windows(2) {
                    ds.union(pair[0], pair[1]);
                }
            }
        }
        partitions.push(ds.partition());
    }
    Ok(PartitionChain { partitions })
}
