//! Partitions of `{0, …, n-1}` in canonical form, refinement order, and the
//! noncrossing test against a cyclic order.

use crate::{Error, Result};

/// Partition with canonical block order: each block sorted ascending, blocks
/// sorted by their smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
    size: usize,
}

impl Partition {
    pub fn new(blocks: Vec<Vec<usize>>, size: usize) -> Result<Self> {
        let mut seen = vec![false; size];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::LabelMismatch);
            }
            for &x in block {
                if x >= size || seen[x] {
                    return Err(Error::LabelMismatch);
                }
                seen[x] = true;
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::LabelMismatch);
        }
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort_by_key(|b| b[0]);
        Ok(Partition { blocks, size })
    }

    pub fn discrete(size: usize) -> Self {
        Partition {
            blocks: (0..size).map(|i| vec![i]).collect(),
            size,
        }
    }

    pub fn trivial(size: usize) -> Self {
        Partition {
            blocks: vec![(0..size).collect()],
            size,
        }
    }

    /// Partition induced by a block-id assignment per label.
    pub fn from_assignment(assignment: &[usize]) -> Self {
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for (label, &g) in assignment.iter().enumerate() {
            groups.entry(g).or_default().push(label);
        }
        Partition::new(groups.into_values().collect(), assignment.len())
            .expect("assignment covers all labels")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn nontrivial_blocks(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.blocks.iter().filter(|b| b.len() > 1)
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.size
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.len() == 1
    }

    fn block_index_of(&self) -> Vec<usize> {
        let mut idx = vec![0usize; self.size];
        for (b, block) in self.blocks.iter().enumerate() {
            for &x in block {
                idx[x] = b;
            }
        }
        idx
    }

    /// True iff every block of `self` is contained in a block of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        if self.size != other.size {
            return false;
        }
        let other_idx = other.block_index_of();
        self.blocks
            .iter()
            .all(|block| block.iter().all(|&x| other_idx[x] == other_idx[block[0]]))
    }

    /// Strict refinement.
    pub fn strictly_refines(&self, other: &Partition) -> bool {
        self.refines(other) && self != other
    }

    /// Noncrossing test against the cyclic order given by `order` (a
    /// sequence of all labels read counterclockwise): no two blocks may
    /// interleave around the circle.
    pub fn is_noncrossing(&self, order: &[usize]) -> Result<bool> {
        if order.len() != self.size {
            return Err(Error::LabelMismatch);
        }
        let mut position = vec![usize::MAX; self.size];
        for (pos, &label) in order.iter().enumerate() {
            if label >= self.size || position[label] != usize::MAX {
                return Err(Error::LabelMismatch);
            }
            position[label] = pos;
        }
        let block_positions: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut ps: Vec<usize> = b.iter().map(|&x| position[x]).collect();
                ps.sort_unstable();
                ps
            })
            .collect();
        for i in 0..block_positions.len() {
            for j in (i + 1)..block_positions.len() {
                if blocks_interleave(&block_positions[i], &block_positions[j]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Two disjoint sorted position sets interleave iff, walking the circle once,
/// membership alternates more than twice.
pub(crate) fn blocks_interleave(a: &[usize], b: &[usize]) -> bool {
    if a.len() < 2 || b.len() < 2 {
        return false;
    }
    let mut merged: Vec<(usize, bool)> = a
        .iter()
        .map(|&p| (p, true))
        .chain(b.iter().map(|&p| (p, false)))
        .collect();
    merged.sort_unstable();
    let n = merged.len();
    let mut switches = 0;
    for i in 0..n {
        if merged[i].1 != merged[(i + 1) % n].1 {
            switches += 1;
        }
    }
    switches > 2
}

/// Interleaving test for block point sets at real angular positions.
pub(crate) fn angular_blocks_interleave(a: &[f64], b: &[f64]) -> bool {
    if a.len() < 2 || b.len() < 2 {
        return false;
    }
    let mut merged: Vec<(f64, bool)> = a
        .iter()
        .map(|&p| (p, true))
        .chain(b.iter().map(|&p| (p, false)))
        .collect();
    merged.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite angles"));
    let n = merged.len();
    let mut switches = 0;
    for i in 0..n {
        if merged[i].1 != merged[(i + 1) % n].1 {
            switches += 1;
        }
    }
    switches > 2
}

/// Union-find over `{0, …, n-1}` with path halving.
#[derive(Debug, Clone)]
pub struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Snapshot of the current partition.
    pub fn partition(&mut self) -> Partition {
        let roots: Vec<usize> = (0..self.parent.len()).map(|i| self.find(i)).collect();
        Partition::from_assignment(&roots)
    }
}
