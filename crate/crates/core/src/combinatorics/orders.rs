//! Cyclic orders from direction sets, linear orders on the circle at
//! infinity, sector permutations, the factorization of the ascending d-cycle,
//! and the real noncrossing partition.

use std::f64::consts::TAU;

use super::partition::{angular_blocks_interleave, Partition};
use crate::annulus::AnnulusComplex;
use crate::lifting::DirectionTrace;
use crate::perm::Perm;
use crate::{Error, Result};

/// Cyclic order of the roots read counterclockwise around the circle at
/// infinity, stored in canonical rotation (smallest root id first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicOrder {
    pub sector: usize,
    pub sequence: Vec<usize>,
}

impl CyclicOrder {
    /// Rotate so the smallest id leads; cyclic equality becomes `==`.
    pub fn canonical(sector: usize, sequence: Vec<usize>) -> Self {
        let min_pos = sequence
            .iter()
            .enumerate()
            .min_by_key(|(_, &id)| id)
            .map(|(i, _)| i)
            .unwrap_or(0);
        let mut rotated = Vec::with_capacity(sequence.len());
        for i in 0..sequence.len() {
            rotated.push(sequence[(min_pos + i) % sequence.len()]);
        }
        CyclicOrder {
            sector,
            sequence: rotated,
        }
    }
}

/// The cyclic order determined by a regular direction set: roots sorted by
/// ascending infinity index.
pub fn cyclic_order_from_direction(trace: &DirectionTrace, sector: usize) -> CyclicOrder {
    CyclicOrder::canonical(sector, trace.roots_by_infinity_index())
}

/// Position permutation between consecutive linear orders: `σ(i)` is the
/// position in `prev` of the root occupying position `i` in `next`, so that
/// `prev[σ(i)] = next[i]`. Composing these relations over all sectors
/// telescopes to the ascending d-cycle.
pub fn sector_permutation(prev: &[usize], next: &[usize]) -> Result<Perm> {
    if prev.len() != next.len() {
        return Err(Error::LabelMismatch);
    }
    let d = prev.len();
    let mut pos_in_prev = vec![usize::MAX; d];
    for (i, &root) in prev.iter().enumerate() {
        if root >= d || pos_in_prev[root] != usize::MAX {
            return Err(Error::LabelMismatch);
        }
        pos_in_prev[root] = i;
    }
    let mut images = Vec::with_capacity(d);
    for &root in next {
        if root >= d || pos_in_prev[root] == usize::MAX {
            return Err(Error::LabelMismatch);
        }
        images.push(pos_in_prev[root]);
    }
    Perm::new(images)
}

/// One counterclockwise step along the circle at infinity: the crossing of a
/// critical longitude, with the linear orders on both sides.
#[derive(Debug, Clone)]
pub struct SectorStep {
    /// Sector on the clockwise side of the crossing.
    pub sector: usize,
    /// Index into `critical_arguments` of the crossed longitude.
    pub argument_index: usize,
    /// Linear order before the crossing (root ids by position).
    pub prev_order: Vec<usize>,
    /// Linear order after the crossing.
    pub next_order: Vec<usize>,
    /// Position `i` corresponds to the infinity point labeled
    /// `(i + label_shift) mod d` on the crossed critical direction set.
    pub label_shift: usize,
    pub permutation: Perm,
}

/// Factorization of the ascending d-cycle into sector permutations, read
/// counterclockwise from the base sector.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub base_sector: usize,
    pub steps: Vec<SectorStep>,
    pub product: Perm,
}

impl Factorization {
    pub fn sector_permutations(&self) -> Vec<Perm> {
        self.steps.iter().map(|s| s.permutation.clone()).collect()
    }
}

/// Linear order of a sector's roots starting at infinity-edge `shift`:
/// position `i` holds the root whose strand lands on infinity edge
/// `(i + shift) mod d`.
fn linear_order(trace: &DirectionTrace, shift: usize) -> Vec<usize> {
    let by_index = trace.roots_by_infinity_index();
    let d = by_index.len();
    (0..d).map(|i| by_index[(i + shift) % d]).collect()
}

/// Build the factorization from the direction traces of all `k` sectors
/// (`traces[j]` is the trace at the regular argument of sector `j`).
///
/// The base infinity edge is edge 0 of the sector with the smallest midpoint
/// argument. Walking counterclockwise, consecutive edges cycle through the
/// sectors, and the sheet index increments each time the walk wraps past the
/// smallest critical argument.
pub fn factorization(traces: &[DirectionTrace], cells: &AnnulusComplex) -> Result<Factorization> {
    let k = cells.k();
    debug_assert_eq!(traces.len(), k);
    let d = traces[0].strands.len();

    let base_sector = cells
        .regular_arguments
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(b.1).expect("finite arguments"))
        .map(|(j, _)| j)
        .unwrap_or(0);

    let mut steps = Vec::with_capacity(k);
    let mut shift = 0usize;
    let mut sector = base_sector;
    let mut prev_order = linear_order(&traces[sector], shift);
    for _ in 0..k {
        let next_sector = (sector + 1) % k;
        // Infinity indices are anchored to stored representatives in
        // [0, 2π), so walking counterclockwise the index of a physical slot
        // advances by one exactly where the branch cut is crossed. The
        // crossed critical argument and the next midpoint each sit on their
        // own side of the cut, hence two separate wrap tests: one for the
        // label of the critical direction's infinity points, one for the
        // slot alignment of the next sector's linear order.
        let crossed_argument = cells.critical_arguments[next_sector];
        let label_shift =
            (shift + usize::from(crossed_argument < cells.regular_arguments[sector])) % d;
        if k == 1 || cells.regular_arguments[next_sector] < cells.regular_arguments[sector] {
            shift += 1;
        }
        let next_order = linear_order(&traces[next_sector], shift % d);
        let permutation = sector_permutation(&prev_order, &next_order)?;
        steps.push(SectorStep {
            sector,
            argument_index: next_sector,
            prev_order: prev_order.clone(),
            next_order: next_order.clone(),
            label_shift,
            permutation,
        });
        sector = next_sector;
        prev_order = next_order;
    }

    // Apply the permutations in counterclockwise order (the first-encountered
    // factor first); the composite must be the ascending d-cycle.
    let mut product = Perm::identity(d);
    for step in &steps {
        product = product.compose(&step.permutation);
    }
    if product != Perm::ascending_cycle(d) {
        return Err(Error::ProductNotDCycle);
    }

    Ok(Factorization {
        base_sector,
        steps,
        product,
    })
}

/// Noncrossing partition of the `d` infinity-point labels at one critical
/// argument.
#[derive(Debug, Clone, PartialEq)]
pub struct RncpEntry {
    pub argument_index: usize,
    pub argument: f64,
    pub partition: Partition,
}

/// The real noncrossing partition: one entry per critical argument, discrete
/// everywhere else (implicitly).
#[derive(Debug, Clone, PartialEq)]
pub struct RealNoncrossingPartition {
    pub degree: usize,
    pub entries: Vec<RncpEntry>,
}

impl RealNoncrossingPartition {
    pub fn entry_at(&self, argument_index: usize) -> Option<&RncpEntry> {
        self.entries
            .iter()
            .find(|e| e.argument_index == argument_index)
    }

    /// Entry whose critical argument is circularly nearest to `argument`.
    pub fn entry_near(&self, argument: f64) -> Option<&RncpEntry> {
        self.entries.iter().min_by(|a, b| {
            crate::circular_distance(a.argument, argument)
                .partial_cmp(&crate::circular_distance(b.argument, argument))
                .expect("finite arguments")
        })
    }
}

/// Entries are the orbit partitions of the sector permutations translated to
/// infinity-point labels. Every entry must be noncrossing on its own d-gon
/// and the nontrivial blocks of all entries, placed at their true angular
/// positions `(u + 2πm)/d`, must be pairwise non-interleaving.
pub fn real_noncrossing_partition(
    factorization: &Factorization,
    cells: &AnnulusComplex,
    degree: usize,
) -> Result<RealNoncrossingPartition> {
    let mut entries: Vec<RncpEntry> = factorization
        .steps
        .iter()
        .map(|step| {
            let mut assignment: Vec<usize> = (0..degree).collect();
            for orbit in step.permutation.nontrivial_orbits() {
                let lead = (orbit[0] + step.label_shift) % degree;
                for &pos in &orbit {
                    assignment[(pos + step.label_shift) % degree] = lead;
                }
            }
            RncpEntry {
                argument_index: step.argument_index,
                argument: cells.critical_arguments[step.argument_index],
                partition: Partition::from_assignment(&assignment),
            }
        })
        .collect();
    entries.sort_by_key(|e| e.argument_index);

    let natural: Vec<usize> = (0..degree).collect();
    for entry in &entries {
        if entry.permutation_is_trivial() {
            return Err(Error::CompatibilityViolation {
                detail: format!(
                    "critical argument {} carries no nontrivial block",
                    entry.argument
                ),
            });
        }
        if !entry.partition.is_noncrossing(&natural)? {
            return Err(Error::CompatibilityViolation {
                detail: format!("entry at argument {} crosses itself", entry.argument),
            });
        }
    }

    // Global compatibility across entries.
    let positions = |entry: &RncpEntry, block: &[usize]| -> Vec<f64> {
        block
            .iter()
            .map(|&m| ((entry.argument + TAU * m as f64) / degree as f64).rem_euclid(TAU))
            .collect()
    };
    for i in 0..entries.len() {
        for j in (i + 1)..entries.len() {
            for ba in entries[i].partition.nontrivial_blocks() {
                for bb in entries[j].partition.nontrivial_blocks() {
                    let pa = positions(&entries[i], ba);
                    let pb = positions(&entries[j], bb);
                    if angular_blocks_interleave(&pa, &pb) {
                        return Err(Error::CompatibilityViolation {
                            detail: format!(
                                "blocks at arguments {} and {} interleave",
                                entries[i].argument, entries[j].argument
                            ),
                        });
                    }
                }
            }
        }
    }

    Ok(RealNoncrossingPartition { degree, entries })
}

impl RncpEntry {
    fn permutation_is_trivial(&self) -> bool {
        self.partition.is_discrete()
    }
}
