//! Parametrized paths in the range plane, on `t ∈ [0, 1]`.

use num_complex::Complex64;

/// A range-plane path with a value and a (one-sided) derivative everywhere.
#[derive(Debug, Clone)]
pub enum RangePath {
    /// Straight segment from `from` to `to`.
    Segment { from: Complex64, to: Complex64 },
    /// Circular arc `center + radius·e^{i(start_angle + sweep·t)}`; positive
    /// sweep is counterclockwise.
    Arc {
        center: Complex64,
        radius: f64,
        start_angle: f64,
        sweep: f64,
    },
    /// Geometric radial sweep `s_from·(s_to/s_from)^t · e^{i·argument}`,
    /// which keeps relative step sizes uniform across orders of magnitude.
    RadialGeometric {
        argument: f64,
        s_from: f64,
        s_to: f64,
    },
    /// Concatenation with weights proportional to parameter share.
    Piecewise(Vec<(RangePath, f64)>),
}

impl RangePath {
    pub fn circle(radius: f64) -> Self {
        RangePath::Arc {
            center: Complex64::new(0.0, 0.0),
            radius,
            start_angle: 0.0,
            sweep: std::f64::consts::TAU,
        }
    }

    pub fn value(&self, t: f64) -> Complex64 {
        match self {
            RangePath::Segment { from, to } => from + (to - from) * t,
            RangePath::Arc {
                center,
                radius,
                start_angle,
                sweep,
            } => center + Complex64::from_polar(*radius, start_angle + sweep * t),
            RangePath::RadialGeometric {
                argument,
                s_from,
                s_to,
            } => Complex64::from_polar(s_from * (s_to / s_from).powf(t), *argument),
            RangePath::Piecewise(parts) => {
                let (i, local) = locate(parts, t);
                parts[i].0.value(local)
            }
        }
    }

    pub fn derivative(&self, t: f64) -> Complex64 {
        match self {
            RangePath::Segment { from, to } => to - from,
            RangePath::Arc {
                center: _,
                radius,
                start_angle,
                sweep,
            } => {
                Complex64::from_polar(*radius, start_angle + sweep * t)
                    * Complex64::new(0.0, *sweep)
            }
            RangePath::RadialGeometric {
                argument,
                s_from,
                s_to,
            } => {
                let ratio = s_to / s_from;
                Complex64::from_polar(s_from * ratio.powf(t) * ratio.ln(), *argument)
            }
            RangePath::Piecewise(parts) => {
                let total: f64 = parts.iter().map(|(_, w)| w).sum();
                let (i, local) = locate(parts, t);
                parts[i].0.derivative(local) * (total / parts[i].1)
            }
        }
    }

    /// Evenly spaced values, handy for a-priori clearance checks.
    pub fn sample(&self, n: usize) -> Vec<Complex64> {
        (0..=n).map(|k| self.value(k as f64 / n as f64)).collect()
    }
}

fn locate(parts: &[(RangePath, f64)], t: f64) -> (usize, f64) {
    let total: f64 = parts.iter().map(|(_, w)| w).sum();
    let mut offset = t.clamp(0.0, 1.0) * total;
    for (i, (_, w)) in parts.iter().enumerate() {
        if offset <= *w || i == parts.len() - 1 {
            return (i, (offset / w).clamp(0.0, 1.0));
        }
        offset -= w;
    }
    unreachable!("piecewise path with no parts")
}
