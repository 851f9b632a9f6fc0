//! Shared fixtures and independent oracles for unit tests.

use num_complex::Complex64;

use crate::poly::Polynomial;
use crate::roots;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The running example .02(3z^5 - 15z^4 + 20z^3 - 30z^2 + 45z), ascending
/// coefficients [0, 0.9, -0.6, 0.4, -0.3, 0.06].
pub fn running_example() -> Polynomial {
    Polynomial::from_coefficients(vec![
        c(0.0, 0.0),
        c(0.9, 0.0),
        c(-0.6, 0.0),
        c(0.4, 0.0),
        c(-0.3, 0.0),
        c(0.06, 0.0),
    ])
    .unwrap()
}

/// Expanded form of `a (z - b)^d + cc`.
pub fn one_critical_value_poly(a: Complex64, b: Complex64, cc: Complex64, d: usize) -> Polynomial {
    let mut coeffs = vec![c(1.0, 0.0)];
    for _ in 0..d {
        coeffs.push(c(0.0, 0.0));
        for i in (1..coeffs.len()).rev() {
            coeffs[i] = coeffs[i - 1];
        }
        coeffs[0] = c(0.0, 0.0);
        let snapshot = coeffs.clone();
        for i in 0..coeffs.len() - 1 {
            coeffs[i] -= b * snapshot[i + 1];
        }
    }
    for coeff in coeffs.iter_mut() {
        *coeff *= a;
    }
    coeffs[0] += cc;
    Polynomial::from_coefficients(coeffs).unwrap()
}

/// z^2 - 1.
pub fn difference_of_squares() -> Polynomial {
    Polynomial::from_coefficients(vec![c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]).unwrap()
}

/// Independent continuation oracle: track all `d` fibre points of `p` along a
/// densely sampled range path by re-solving `p(z) = w` globally at every
/// sample and matching nearest neighbours. Returns the permutation sending
/// each start index to the index of the start point nearest its endpoint.
///
/// This bypasses the predictor-corrector kernel entirely.
pub fn oracle_fiber_permutation(
    p: &Polynomial,
    path: impl Fn(f64) -> Complex64,
    steps: usize,
) -> Vec<usize> {
    let solve = |w: Complex64| -> Vec<Complex64> {
        let mut coeffs = p.coefficients().to_vec();
        coeffs[0] -= w;
        roots::find_all_roots(&coeffs).unwrap()
    };
    let starts = solve(path(0.0));
    let mut current = starts.clone();
    for k in 1..=steps {
        let t = k as f64 / steps as f64;
        let fiber = solve(path(t));
        current = current
            .iter()
            .map(|&z| {
                *fiber
                    .iter()
                    .min_by(|a, b| (*a - z).norm().partial_cmp(&(*b - z).norm()).unwrap())
                    .unwrap()
            })
            .collect();
    }
    current
        .iter()
        .map(|&z| {
            let mut best = (0usize, f64::INFINITY);
            for (j, &s) in starts.iter().enumerate() {
                let d = (z - s).norm();
                if d < best.1 {
                    best = (j, d);
                }
            }
            best.0
        })
        .collect()
}

/// Continuous-Newton descent oracle: from `seed`, follow z' = -p(z)/p'(z)
/// with small damped steps. The flow keeps arg p constant and decreases |p|,
/// so it converges to the root at the bottom of the constant-argument ray
/// through the seed.
pub fn oracle_newton_flow_root(
    p: &Polynomial,
    seed: Complex64,
    eta: f64,
    steps: usize,
) -> Complex64 {
    let mut z = seed;
    for _ in 0..steps {
        let (pv, dp) = p.eval_with_derivative(z);
        if pv.norm() < 1e-13 || dp.norm() < 1e-300 {
            break;
        }
        z -= pv / dp * eta;
    }
    z
}
