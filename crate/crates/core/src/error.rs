use num_complex::Complex64;
use thiserror::Error;

use crate::poly::DistinctnessReport;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes of the pipeline.
///
/// Construction errors (`ZeroLeadingCoefficient`, `DegreeTooSmall`) reject bad
/// input; `DistinctRootsRequired` rejects polynomials outside the distinct-root
/// hypothesis; everything else signals a numerical failure that the pipeline
/// refuses to repair silently.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("leading coefficient must be nonzero")]
    ZeroLeadingCoefficient,
    #[error("degree {degree} too small: need degree >= 2")]
    DegreeTooSmall { degree: usize },
    #[error("root finding did not converge within {iterations} iterations")]
    NoConvergence { iterations: u32 },
    #[error("cannot map zero to the annulus")]
    ZeroInput,
    #[error("critical value set is empty")]
    EmptyCriticalValues,
    #[error("critical value at the origin; distinct-roots hypothesis violated upstream")]
    ZeroCriticalValue,
    #[error("distinct roots required (min root separation {}, min critical value modulus {})",
        report.min_root_separation, report.min_critical_value_modulus)]
    DistinctRootsRequired { report: DistinctnessReport },
    #[error("path passes within {distance:.3e} of critical value {value} (margin {margin:.3e})")]
    PathTooCloseToCriticalValue {
        value: Complex64,
        distance: f64,
        margin: f64,
    },
    #[error("continuation step underflow at parameter {t:.6}")]
    StepUnderflow { t: f64 },
    #[error("endpoint match ambiguous: nearest anchor at distance {distance:.3e}, acceptance radius {radius:.3e}")]
    EndpointMatchAmbiguous { distance: f64, radius: f64 },
    #[error("infinity index unstable between the last two samples ({previous} vs {last})")]
    InfinityIndexUnstable { previous: usize, last: usize },
    #[error("two strands claim infinity index {index}")]
    InfinityIndexCollision { index: usize },
    #[error("descent from critical point {index} stalled (nested critical value on the same ray)")]
    DescentStalled { index: usize },
    #[error("winding inconsistent: root {root} enclosed by {count} level components")]
    WindingInconsistent { root: usize, count: usize },
    #[error("partition chain not monotone between regular heights {lower} and {upper}")]
    ChainNotMonotone { lower: usize, upper: usize },
    #[error("label sets disagree")]
    LabelMismatch,
    #[error("sector permutation product is not the ascending d-cycle")]
    ProductNotDCycle,
    #[error("real noncrossing partition violates compatibility: {detail}")]
    CompatibilityViolation { detail: String },
    #[error("query point is within sampling resolution of the curve")]
    PointTooCloseToCurve,
    #[error("cannot route a loop around critical value {value}")]
    UnroutablePath { value: Complex64 },
    #[error("monodromy generators do not act transitively on the roots")]
    TransitivityFailure,
    #[error("monodromy generator for critical value {value} has the wrong cycle type")]
    MonodromyCycleType { value: Complex64 },
    #[error("missing traces for rendering: {detail}")]
    MissingTraces { detail: String },
    #[error("invalid render configuration: {detail}")]
    InvalidRenderConfig { detail: String },
    #[error("cactus assembly failed: {detail}")]
    CactusInconsistent { detail: String },
    #[error("banyan assembly failed: {detail}")]
    BanyanInconsistent { detail: String },
}

impl Error {
    /// True for errors that indicate a violated distinct-roots hypothesis
    /// rather than a numerical failure.
    pub fn is_distinctness(&self) -> bool {
        matches!(
            self,
            Error::DistinctRootsRequired { .. } | Error::ZeroCriticalValue
        )
    }

    /// True for errors caused by malformed input rather than computation.
    pub fn is_input(&self) -> bool {
        matches!(
            self,
            Error::ZeroLeadingCoefficient | Error::DegreeTooSmall { .. }
        )
    }
}
