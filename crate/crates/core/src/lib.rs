//! Geometric-combinatorial invariants of complex polynomials with distinct roots.
//!
//! For a degree-`d` polynomial whose roots are pairwise distinct, the nonzero
//! critical values induce a rectangular cell structure on a vertical annulus.
//! Pulling that structure back through the polynomial yields a branched cover
//! whose level sets (lemniscates) and direction sets carry a surprising amount
//! of combinatorics: a chain in the partition lattice of the roots, one cyclic
//! order of the roots per sector, a factorization of the ascending `d`-cycle
//! into sector permutations, a real noncrossing partition of the longitude
//! preimages, and the monodromy representation.
//!
//! The crate computes all of the above numerically (simultaneous root finding
//! plus predictor-corrector path continuation), cross-checks the results with
//! independent oracles, and can emit SVG drawings of the annulus and of the
//! branched annulus embedded in the unit disk.
//!
//! Strand tracing, height/argument sweeps and monodromy generators are
//! data-parallel; the `parallel` feature (on by default) backs them with
//! rayon, and disabling it falls back to sequential loops with identical
//! results.

pub mod analysis;
pub mod annulus;
pub mod combinatorics;
pub mod error;
pub mod exec;
pub mod lifting;
pub mod monodromy;
pub mod perm;
pub mod poly;
pub mod render;
mod roots;
#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use num_complex::Complex64;

use std::f64::consts::TAU;

/// Argument of `z` normalized to `[0, 2π)`. Arguments within one ulp below
/// the branch cut land on `0`, never on `2π`.
pub fn arg_tau(z: Complex64) -> f64 {
    let a = z.arg();
    if a >= 0.0 {
        return a;
    }
    let shifted = a + TAU;
    if shifted >= TAU {
        0.0
    } else {
        shifted
    }
}

/// Circular distance between two angles, in `[0, π]`.
pub fn circular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}
