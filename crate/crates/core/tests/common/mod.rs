//! Shared fixtures for the integration suites.

use polyannulus::poly::{ComplexMultiset, Polynomial};
use polyannulus::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The worked example .02(3z^5 - 15z^4 + 20z^3 - 30z^2 + 45z).
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

/// Letter map for the worked example: the roots named a..e correspond to the
/// canonical ids 2, 3, 4, 1, 0 (roots sorted lexicographically by (re, im)).
pub const A: usize = 2;
pub const B: usize = 3;
pub const C: usize = 4;
pub const D: usize = 1;
pub const E: usize = 0;

/// Expanded `a (z - b)^d + cc`.
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

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Deterministic random polynomial with `degree` well-separated roots.
pub fn random_separated_polynomial(rng: &mut ChaCha8Rng, degree: usize) -> Polynomial {
    let mut roots: Vec<Complex64> = Vec::with_capacity(degree);
    while roots.len() < degree {
        let z = c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
        if roots.iter().all(|r| (r - z).norm() > 0.4) {
            roots.push(z);
        }
    }
    let leading = Complex64::from_polar(
        rng.gen_range(0.5..1.5),
        rng.gen_range(0.0..std::f64::consts::TAU),
    );
    Polynomial::from_roots(leading, &ComplexMultiset::from_values(&roots)).unwrap()
}
