//! Coordinate maps between the punctured plane, the vertical annulus
//! `S^1 x [-1, 1]` and the unit disk, plus the rectangular cell structure the
//! critical values induce on the annulus.

use num_complex::Complex64;
use std::f64::consts::TAU;

use crate::poly::ComplexMultiset;
use crate::{arg_tau, circular_distance, Error, Result};

/// Dedup tolerance for critical arguments (radians) and heights.
pub const DEDUP_TOL: f64 = 1e-9;

/// Point on the vertical annulus: argument in `[0, 2π)`, height in `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusPoint {
    pub argument: f64,
    pub height: f64,
}

/// `i_A`: send nonzero `z = r·u` to argument `u`, height `t = (r²-1)/(r²+1)`.
pub fn to_annulus(z: Complex64) -> Result<AnnulusPoint> {
    if z.norm() == 0.0 {
        return Err(Error::ZeroInput);
    }
    Ok(AnnulusPoint {
        argument: arg_tau(z),
        height: height_for_radius(z.norm()),
    })
}

/// Height of the latitude through radius `r`, written to stay finite for
/// arbitrarily large `r`.
pub fn height_for_radius(r: f64) -> f64 {
    1.0 - 2.0 / (r * r + 1.0)
}

/// Radius of the latitude circle at interior height `t`.
pub fn radius_for_height(t: f64) -> f64 {
    ((1.0 + t) / (1.0 - t)).sqrt()
}

/// `i_D`: send `z = r·u` to `s·u` with `s = r / sqrt(r² + 1) < 1`.
pub fn to_disk(z: Complex64) -> Complex64 {
    let r = z.norm();
    if r == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    z / r * (1.0 / (1.0 + 1.0 / (r * r)).sqrt())
}

/// Disk radius of the image of the latitude circle at height `t`.
pub fn disk_radius_for_height(t: f64) -> f64 {
    ((1.0 + t) / 2.0).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CellCounts {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
}

/// The rectangular cell structure `A_p` on the annulus: `k` critical
/// arguments, `ℓ` critical heights, and the regular sample points between
/// them.
#[derive(Debug, Clone)]
pub struct AnnulusComplex {
    /// Sorted ascending in `[0, 2π)`; length `k`.
    pub critical_arguments: Vec<f64>,
    /// Sorted ascending in `(-1, 1)`; length `ℓ`.
    pub critical_heights: Vec<f64>,
    /// Circular midpoint of sector `j = (ca[j], ca[j+1 mod k])`; length `k`.
    pub regular_arguments: Vec<f64>,
    /// Midpoints of consecutive entries of `{-1} ∪ heights ∪ {1}`; length `ℓ+1`.
    pub regular_heights: Vec<f64>,
    /// Per critical-value entry: index into `critical_arguments`.
    pub value_argument_index: Vec<usize>,
    /// Per critical-value entry: index into `critical_heights`.
    pub value_height_index: Vec<usize>,
    pub counts: CellCounts,
}

impl AnnulusComplex {
    pub fn k(&self) -> usize {
        self.critical_arguments.len()
    }

    pub fn ell(&self) -> usize {
        self.critical_heights.len()
    }

    /// Minimal circular gap between consecutive critical arguments.
    pub fn min_argument_gap(&self) -> f64 {
        let k = self.k();
        if k == 1 {
            return TAU;
        }
        (0..k)
            .map(|j| {
                let a = self.critical_arguments[j];
                let b = self.critical_arguments[(j + 1) % k];
                (b - a).rem_euclid(TAU)
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Minimal gap between consecutive entries of `{-1} ∪ heights ∪ {1}`.
    pub fn min_height_gap(&self) -> f64 {
        let mut prev = -1.0_f64;
        let mut min = f64::INFINITY;
        for &t in &self.critical_heights {
            min = min.min(t - prev);
            prev = t;
        }
        min.min(1.0 - prev)
    }
}

/// Build `A_p` from the critical values. Arguments and heights are
/// deduplicated within [`DEDUP_TOL`] and sorted; regular samples are
/// midpoints; the cell counts follow `(k(ℓ+2), k(2ℓ+3), k(ℓ+1))`.
pub fn build_cell_structure(cvl: &ComplexMultiset) -> Result<AnnulusComplex> {
    if cvl.entries.is_empty() {
        return Err(Error::EmptyCriticalValues);
    }
    for e in &cvl.entries {
        if e.value.norm() == 0.0 {
            return Err(Error::ZeroCriticalValue);
        }
    }

    let points: Vec<AnnulusPoint> = cvl
        .entries
        .iter()
        .map(|e| to_annulus(e.value))
        .collect::<Result<_>>()?;

    // Deduplicate arguments with circular distance.
    let mut args: Vec<f64> = Vec::new();
    let mut value_argument_index = vec![usize::MAX; points.len()];
    for (i, p) in points.iter().enumerate() {
        if let Some(j) = args
            .iter()
            .position(|&a| circular_distance(a, p.argument) <= DEDUP_TOL)
        {
            value_argument_index[i] = j;
        } else {
            value_argument_index[i] = args.len();
            args.push(p.argument);
        }
    }
    let mut arg_order: Vec<usize> = (0..args.len()).collect();
    arg_order.sort_by(|&a, &b| args[a].partial_cmp(&args[b]).unwrap());
    let mut arg_rank = vec![0usize; args.len()];
    for (new, &old) in arg_order.iter().enumerate() {
        arg_rank[old] = new;
    }
    let critical_arguments: Vec<f64> = arg_order.iter().map(|&i| args[i]).collect();
    for v in value_argument_index.iter_mut() {
        *v = arg_rank[*v];
    }

    // Deduplicate heights with absolute distance.
    let mut heights: Vec<f64> = Vec::new();
    let mut value_height_index = vec![usize::MAX; points.len()];
    for (i, p) in points.iter().enumerate() {
        if let Some(j) = heights
            .iter()
            .position(|&t| (t - p.height).abs() <= DEDUP_TOL)
        {
            value_height_index[i] = j;
        } else {
            value_height_index[i] = heights.len();
            heights.push(p.height);
        }
    }
    let mut height_order: Vec<usize> = (0..heights.len()).collect();
    height_order.sort_by(|&a, &b| heights[a].partial_cmp(&heights[b]).unwrap());
    let mut height_rank = vec![0usize; heights.len()];
    for (new, &old) in height_order.iter().enumerate() {
        height_rank[old] = new;
    }
    let critical_heights: Vec<f64> = height_order.iter().map(|&i| heights[i]).collect();
    for v in value_height_index.iter_mut() {
        *v = height_rank[*v];
    }

    let k = critical_arguments.len();
    let ell = critical_heights.len();

    let regular_arguments: Vec<f64> = (0..k)
        .map(|j| {
            if k == 1 {
                // Antipode of the single critical longitude.
                (critical_arguments[0] + TAU / 2.0).rem_euclid(TAU)
            } else {
                let a = critical_arguments[j];
                let gap = (critical_arguments[(j + 1) % k] - a).rem_euclid(TAU);
                (a + gap / 2.0).rem_euclid(TAU)
            }
        })
        .collect();

    let mut rail = Vec::with_capacity(ell + 2);
    rail.push(-1.0);
    rail.extend_from_slice(&critical_heights);
    rail.push(1.0);
    let regular_heights: Vec<f64> = rail.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect();

    let counts = CellCounts {
        vertices: k * (ell + 2),
        edges: k * (2 * ell + 3),
        faces: k * (ell + 1),
    };

    Ok(AnnulusComplex {
        critical_arguments,
        critical_heights,
        regular_arguments,
        regular_heights,
        value_argument_index,
        value_height_index,
        counts,
    })
}
