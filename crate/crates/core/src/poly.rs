//! Polynomial representation, evaluation, root finding, critical data and the
//! distinct-roots gate.
//!
//! Coefficients are stored in ascending powers everywhere. Roots, critical
//! points and critical values are multisets; the critical-point clustering is
//! multiplicity-aware because finite precision scatters a multiplicity-`m`
//! root of the derivative over a cluster of diameter roughly `eps^(1/m)`.

use num_complex::Complex64;

use crate::roots;
use crate::{Error, Result};

/// Absolute clustering tolerance scale for root multisets (scaled by `1 + |z|`).
pub const CLUSTER_TOL: f64 = 1e-7;

/// Default distinctness tolerances.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub tol_sep: f64,
    pub tol_cv: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            tol_sep: 1e-9,
            tol_cv: 1e-9,
        }
    }
}

/// Degree-d complex polynomial, coefficients in ascending powers, `c_d != 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Build from ascending coefficients. Trailing zeros are rejected rather
    /// than trimmed, and the degree must be at least 2.
    pub fn from_coefficients(coeffs: Vec<Complex64>) -> Result<Self> {
        match coeffs.last() {
            None => return Err(Error::ZeroLeadingCoefficient),
            Some(c) if c.norm() == 0.0 => return Err(Error::ZeroLeadingCoefficient),
            _ => {}
        }
        if coeffs.len() < 3 {
            return Err(Error::DegreeTooSmall {
                degree: coeffs.len() - 1,
            });
        }
        Ok(Polynomial { coeffs })
    }

    /// Expand `leading * prod (z - a_i)` over the multiset of roots.
    pub fn from_roots(leading: Complex64, roots: &ComplexMultiset) -> Result<Self> {
        if leading.norm() == 0.0 {
            return Err(Error::ZeroLeadingCoefficient);
        }
        if roots.size() < 2 {
            return Err(Error::DegreeTooSmall {
                degree: roots.size(),
            });
        }
        let mut coeffs = vec![leading];
        for entry in &roots.entries {
            for _ in 0..entry.multiplicity {
                // Multiply by (z - a): shift up and subtract a * previous.
                coeffs.push(Complex64::new(0.0, 0.0));
                for i in (1..coeffs.len()).rev() {
                    coeffs[i] = coeffs[i - 1];
                }
                coeffs[0] = Complex64::new(0.0, 0.0);
                let snapshot = coeffs.clone();
                for i in 0..coeffs.len() - 1 {
                    coeffs[i] -= entry.value * snapshot[i + 1];
                }
            }
        }
        Ok(Polynomial { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading_coefficient(&self) -> Complex64 {
        *self.coeffs.last().unwrap()
    }

    pub fn coefficients(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut p = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            p = p * z + c;
        }
        p
    }

    /// Simultaneous evaluation of `p` and `p'`.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    pub fn derivative(&self) -> Polynomial {
        let coeffs: Vec<Complex64> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * (i as f64))
            .collect();
        Polynomial { coeffs }
    }

    pub fn nth_derivative(&self, n: usize) -> Polynomial {
        let mut p = self.clone();
        for _ in 0..n {
            if p.coeffs.len() <= 1 {
                return Polynomial {
                    coeffs: vec![Complex64::new(0.0, 0.0)],
                };
            }
            p = p.derivative();
        }
        p
    }

    /// Raw root approximations of this polynomial, without clustering.
    pub(crate) fn raw_roots(&self) -> Result<Vec<Complex64>> {
        roots::find_all_roots(&self.coeffs)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultisetEntry {
    pub value: Complex64,
    pub multiplicity: usize,
}

/// Multiset of complex numbers: distinct values with positive multiplicities.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ComplexMultiset {
    pub entries: Vec<MultisetEntry>,
}

impl ComplexMultiset {
    pub fn from_values(values: &[Complex64]) -> Self {
        ComplexMultiset {
            entries: values
                .iter()
                .map(|&value| MultisetEntry {
                    value,
                    multiplicity: 1,
                })
                .collect(),
        }
    }

    pub fn from_entries(entries: Vec<(Complex64, usize)>) -> Self {
        ComplexMultiset {
            entries: entries
                .into_iter()
                .map(|(value, multiplicity)| MultisetEntry {
                    value,
                    multiplicity,
                })
                .collect(),
        }
    }

    /// Sum of multiplicities.
    pub fn size(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.entries.iter().map(|e| e.value).collect()
    }

    /// Values repeated by multiplicity.
    pub fn expanded(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.size());
        for e in &self.entries {
            for _ in 0..e.multiplicity {
                out.push(e.value);
            }
        }
        out
    }

    fn sort(&mut self) {
        self.entries.sort_by(|a, b| {
            (a.value.re, a.value.im)
                .partial_cmp(&(b.value.re, b.value.im))
                .expect("finite values")
        });
    }
}

/// Single-linkage clustering of raw points under `link`, one multiset entry
/// per connected component. Clusters of multiplicity `m >= 2` are polished by
/// Newton on the (m-1)-th derivative of `base`, where the cluster center is a
/// simple root.
fn cluster_points<F>(points: &[Complex64], base: &Polynomial, link: F) -> ComplexMultiset
where
    F: Fn(Complex64, Complex64) -> bool,
{
    let n = points.len();
    let mut component: Vec<usize> = (0..n).collect();
    fn find(component: &mut [usize], mut i: usize) -> usize {
        while component[i] != i {
            component[i] = component[component[i]];
            i = component[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if link(points[i], points[j]) {
                let (a, b) = (find(&mut component, i), find(&mut component, j));
                if a != b {
                    component[a] = b;
                }
            }
        }
    }
    let mut groups: Vec<Vec<Complex64>> = vec![Vec::new(); n];
    for (i, &point) in points.iter().enumerate() {
        let root = find(&mut component, i);
        groups[root].push(point);
    }
    let mut entries = Vec::new();
    for group in groups.into_iter().filter(|g| !g.is_empty()) {
        let m = group.len();
        let mut center = group.iter().sum::<Complex64>() / (m as f64);
        if m >= 2 {
            // The center is a simple root of base^(m-1); a few Newton steps
            // recover it to full precision even though the raw cluster is
            // only eps^(1/m) tight.
            let poly = base.nth_derivative(m - 1);
            for _ in 0..8 {
                let (p, dp) = poly.eval_with_derivative(center);
                if dp.norm() < 1e-300 {
                    break;
                }
                let step = p / dp;
                if !step.is_finite() || step.norm() > 0.5 * (1.0 + center.norm()) {
                    break;
                }
                center -= step;
            }
        }
        entries.push(MultisetEntry {
            value: center,
            multiplicity: m,
        });
    }
    let mut ms = ComplexMultiset { entries };
    ms.sort();
    ms
}

/// Roots of `p` as a multiset, clustered at `1e-7 * (1 + |z|)`.
pub fn find_roots(p: &Polynomial) -> Result<ComplexMultiset> {
    let raw = p.raw_roots()?;
    Ok(cluster_points(&raw, p, |a, b| {
        (a - b).norm() <= CLUSTER_TOL * (1.0 + 0.5 * (a.norm() + b.norm()))
    }))
}

/// Critical points, critical values, and the map between them.
#[derive(Debug, Clone)]
pub struct CriticalData {
    pub critical_points: ComplexMultiset,
    pub critical_values: ComplexMultiset,
    /// Index into `critical_values.entries` for each critical point entry.
    pub value_of: Vec<usize>,
}

impl CriticalData {
    /// Critical point entry indices mapping to the given value entry.
    pub fn points_of_value(&self, value_index: usize) -> Vec<usize> {
        self.value_of
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == value_index)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Critical points of `p` (roots of `p'` with multiplicities) and their values.
///
/// Clustering the roots of `p'` uses a multiplicity-aware link radius of
/// `(1e-13)^(1/deg p')` — wide enough to absorb the finite-precision scatter
/// of a maximal-multiplicity cluster — guarded by agreement of the values
/// under `p`, which keeps genuinely distinct critical points with distinct
/// values apart at any distance.
pub fn critical_data(p: &Polynomial) -> Result<CriticalData> {
    let dp = p.derivative();
    let raw = dp.raw_roots()?;
    let n = raw.len().max(1);
    let link_scale = CLUSTER_TOL.max(1e-13_f64.powf(1.0 / (n as f64)));
    let points = cluster_points(&raw, &dp, |a, b| {
        let scale = 1.0 + 0.5 * (a.norm() + b.norm());
        if (a - b).norm() > link_scale * scale {
            return false;
        }
        let (va, vb) = (p.eval(a), p.eval(b));
        (va - vb).norm() <= CLUSTER_TOL * (1.0 + 0.5 * (va.norm() + vb.norm()))
    });

    // Group critical values within the dedup tolerance.
    let values: Vec<Complex64> = points.entries.iter().map(|e| p.eval(e.value)).collect();
    let mut value_entries: Vec<MultisetEntry> = Vec::new();
    let mut value_of = vec![usize::MAX; points.entries.len()];
    for (i, &v) in values.iter().enumerate() {
        let mult = points.entries[i].multiplicity;
        let mut assigned = false;
        for (k, entry) in value_entries.iter_mut().enumerate() {
            if (entry.value - v).norm()
                <= CLUSTER_TOL * (1.0 + 0.5 * (entry.value.norm() + v.norm()))
            {
                entry.multiplicity += mult;
                value_of[i] = k;
                assigned = true;
                break;
            }
        }
        if !assigned {
            value_of[i] = value_entries.len();
            value_entries.push(MultisetEntry {
                value: v,
                multiplicity: mult,
            });
        }
    }

    // Canonical order for the value entries, remapping the point -> value map.
    let mut order: Vec<usize> = (0..value_entries.len()).collect();
    order.sort_by(|&a, &b| {
        let (va, vb) = (value_entries[a].value, value_entries[b].value);
        (va.re, va.im).partial_cmp(&(vb.re, vb.im)).unwrap()
    });
    let mut rank = vec![0usize; order.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let critical_values = ComplexMultiset {
        entries: order.iter().map(|&i| value_entries[i].clone()).collect(),
    };
    for v in value_of.iter_mut() {
        *v = rank[*v];
    }

    Ok(CriticalData {
        critical_points: points,
        critical_values,
        value_of,
    })
}

/// Verdict of the distinct-roots test, with the two separations it is based on.
#[derive(Debug, Clone)]
pub struct DistinctnessReport {
    pub ok: bool,
    pub min_root_separation: f64,
    pub min_critical_value_modulus: f64,
}

/// Distinct roots hold iff all pairwise root distances exceed `tol_sep` and no
/// critical value is within `tol_cv` of the origin.
pub fn validate_distinct_roots(p: &Polynomial, tol: &Tolerances) -> Result<DistinctnessReport> {
    let raw = p.raw_roots()?;
    let mut min_sep = f64::INFINITY;
    for i in 0..raw.len() {
        for j in (i + 1)..raw.len() {
            min_sep = min_sep.min((raw[i] - raw[j]).norm());
        }
    }
    let crit = critical_data(p)?;
    let min_cv = crit
        .critical_values
        .entries
        .iter()
        .map(|e| e.value.norm())
        .fold(f64::INFINITY, f64::min);
    Ok(DistinctnessReport {
        ok: min_sep > tol.tol_sep && min_cv > tol.tol_cv,
        min_root_separation: min_sep,
        min_critical_value_modulus: min_cv,
    })
}

/// A polynomial together with everything the tracing layers need: canonical
/// root labels, critical data, separations and safety margins.
#[derive(Debug, Clone)]
pub struct PolyContext {
    pub poly: Polynomial,
    pub derivative: Polynomial,
    /// Roots in canonical order: lexicographic by (re, im).
    pub roots: Vec<Complex64>,
    pub crit: CriticalData,
    pub report: DistinctnessReport,
    pub min_root_separation: f64,
    /// Range-plane safety margin: 0.25 x min(pairwise critical value
    /// distance, critical value modulus).
    pub safety_margin: f64,
    /// Start modulus for direction strands.
    pub s_min: f64,
    pub max_root_norm: f64,
}

impl PolyContext {
    pub fn prepare(poly: Polynomial, tol: &Tolerances) -> Result<Self> {
        let report = validate_distinct_roots(&poly, tol)?;
        if !report.ok {
            return Err(Error::DistinctRootsRequired { report });
        }
        let roots = poly.raw_roots()?;
        let derivative = poly.derivative();
        let crit = critical_data(&poly)?;

        let mut min_sep = f64::INFINITY;
        for i in 0..roots.len() {
            for j in (i + 1)..roots.len() {
                min_sep = min_sep.min((roots[i] - roots[j]).norm());
            }
        }
        let cvs: Vec<Complex64> = crit.critical_values.values();
        let mut min_gap = f64::INFINITY;
        for (i, &a) in cvs.iter().enumerate() {
            min_gap = min_gap.min(a.norm());
            for &b in cvs.iter().skip(i + 1) {
                min_gap = min_gap.min((a - b).norm());
            }
        }
        let min_dp = roots
            .iter()
            .map(|&a| derivative.eval(a).norm())
            .fold(f64::INFINITY, f64::min);
        let max_root_norm = roots.iter().map(|a| a.norm()).fold(0.0, f64::max);

        Ok(PolyContext {
            s_min: 1e-3 * min_dp * min_sep,
            safety_margin: 0.25 * min_gap,
            max_root_norm,
            min_root_separation: min_sep,
            report,
            crit,
            roots,
            derivative,
            poly,
        })
    }

    pub fn degree(&self) -> usize {
        self.poly.degree()
    }

    /// Index of the root nearest to `z`, with its distance.
    pub fn nearest_root(&self, z: Complex64) -> (usize, f64) {
        let mut best = (0usize, f64::INFINITY);
        for (i, &a) in self.roots.iter().enumerate() {
            let d = (z - a).norm();
            if d < best.1 {
                best = (i, d);
            }
        }
        best
    }

    /// Distance from `b` to the nearest other critical point or root.
    pub fn local_scale_at_critical_point(&self, cp_index: usize) -> f64 {
        let b = self.crit.critical_points.entries[cp_index].value;
        let mut scale = f64::INFINITY;
        for (j, e) in self.crit.critical_points.entries.iter().enumerate() {
            if j != cp_index {
                scale = scale.min((b - e.value).norm());
            }
        }
        for &a in &self.roots {
            scale = scale.min((b - a).norm());
        }
        scale
    }
}
