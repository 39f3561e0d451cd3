use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::continuation::continue_along_ray;
use super::gamma::gamma_ratio;
use crate::complex::{
    as_nonpositive_integer, distance_to_integer, finite, principal_pow, real, ComplexValue,
};
use crate::error::{Error, Result};

/// Stopping rule for hypergeometric partial sums.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesPolicy {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesPolicy {
    fn default() -> Self {
        SeriesPolicy {
            rel_tol: 1e-14,
            abs_tol: 1e-300,
            max_terms: 10_000,
        }
    }
}

impl SeriesPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || self.max_terms < 1 {
            return Err(Error::parameter("series policy needs rel_tol > 0 and max_terms ≥ 1"));
        }
        Ok(())
    }
}

/// Radius inside which `₂F₁` is summed directly.
pub(crate) const DIRECT_RADIUS: f64 = 0.8;
/// Parameter combinations closer than this to an integer make the
/// two-term connection formulas cancel catastrophically.
const DEGENERATE_GAP: f64 = 1e-3;
/// Largest cancellation factor accepted from a two-term connection formula.
const MAX_CANCELLATION: f64 = 16.0;

/// How a `₂F₁` value was obtained. Exposed for diagnostics and tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EvaluationPath {
    Unit,
    Polynomial,
    EulerPolynomial,
    Series,
    Pfaff,
    Inversion,
    Reflection,
    InverseReflection,
    ReflectedInversion,
    OdeContinuation,
}

/// Partial sums of `ₚF_q(upper; lower; z)` under `policy`.
pub(crate) fn pfq_series(
    upper: &[ComplexValue],
    lower: &[ComplexValue],
    z: ComplexValue,
    policy: &SeriesPolicy,
) -> Result<ComplexValue> {
    let mut term = real(1.0);
    let mut sum = real(1.0);
    let mut quiet = 0;
    for n in 0..policy.max_terms {
        let nf = n as f64;
        let mut ratio = z / (nf + 1.0);
        for &a in upper {
            ratio *= a + nf;
        }
        for &b in lower {
            ratio /= b + nf;
        }
        term *= ratio;
        if term == Complex64::new(0.0, 0.0) {
            return finite(sum, "hypergeometric series");
        }
        sum += term;
        if term.norm() <= policy.rel_tol * sum.norm() || term.norm() <= policy.abs_tol {
            quiet += 1;
            if quiet >= 3 {
                return finite(sum, "hypergeometric series");
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::Convergence {
        terms: policy.max_terms,
        context: format!("pFq series at z = {z}"),
    })
}

/// Exact sum of a series that terminates after `degree` terms.
fn terminating_sum(
    upper: &[ComplexValue],
    lower: &[ComplexValue],
    z: ComplexValue,
    degree: u64,
) -> Result<ComplexValue> {
    let mut term = real(1.0);
    let mut sum = real(1.0);
    for n in 0..degree {
        let nf = n as f64;
        let mut ratio = z / (nf + 1.0);
        for &a in upper {
            ratio *= a + nf;
        }
        for &b in lower {
            ratio /= b + nf;
        }
        term *= ratio;
        sum += term;
    }
    finite(sum, "terminating hypergeometric sum")
}

fn check_lower(lower: &[ComplexValue], degree: Option<u64>) -> Result<()> {
    for &b in lower {
        if let Some(m) = as_nonpositive_integer(b) {
            // A lower parameter −m is harmless only if the series stops first.
            if degree.is_none_or(|n| n > m) {
                return Err(Error::parameter(format!(
                    "lower parameter {} is a nonpositive integer",
                    b.re
                )));
            }
        }
    }
    Ok(())
}

fn terminating_degree(upper: &[ComplexValue]) -> Option<u64> {
    upper.iter().filter_map(|&a| as_nonpositive_integer(a)).min()
}

/// Generalized hypergeometric series `ₚF_q(upper; lower; z)`.
///
/// Non-terminating series with `p = q + 1` are restricted to `|z| < 1`;
/// `p > q + 1` is accepted only when the series terminates.
pub fn hyper_pfq(
    upper: &[ComplexValue],
    lower: &[ComplexValue],
    z: ComplexValue,
    policy: &SeriesPolicy,
) -> Result<ComplexValue> {
    policy.validate()?;
    let degree = terminating_degree(upper);
    check_lower(lower, degree)?;
    if let Some(n) = degree {
        return terminating_sum(upper, lower, z, n);
    }
    let (p, q) = (upper.len(), lower.len());
    if p > q + 1 {
        return Err(Error::parameter(format!(
            "{p}F{q} diverges for every z ≠ 0 unless it terminates"
        )));
    }
    if p == q + 1 && z.norm() >= 1.0 {
        return Err(Error::parameter(format!(
            "{p}F{q} series requires |z| < 1, got |z| = {}",
            z.norm()
        )));
    }
    if z == Complex64::new(0.0, 0.0) {
        return Ok(real(1.0));
    }
    pfq_series(upper, lower, z, policy)
}

/// Real-parameter convenience wrapper around [`hyper_pfq`].
pub fn hyper_pfq_real(upper: &[f64], lower: &[f64], z: ComplexValue) -> Result<ComplexValue> {
    let up: Vec<_> = upper.iter().map(|&a| real(a)).collect();
    let lo: Vec<_> = lower.iter().map(|&b| real(b)).collect();
    hyper_pfq(&up, &lo, z, &SeriesPolicy::default())
}

fn on_cut(z: ComplexValue) -> bool {
    z.im == 0.0 && z.re >= 1.0
}

fn near_integer(x: ComplexValue) -> bool {
    distance_to_integer(x) < DEGENERATE_GAP
}

/// Gauss hypergeometric function `₂F₁(a, b; c; z)` on `ℂ \ [1, ∞)`.
///
/// Inside `|z| ≤ 0.8` the series is summed directly. Outside, the argument is
/// mapped by whichever of `z/(z−1)`, `1/z`, `1−z`, `1/(1−z)`, `1−1/z` lands
/// closest to the origin, skipping maps whose connection coefficients are
/// singular (integer `c−a−b` or `a−b`). When no admissible map reaches the
/// direct radius, the hypergeometric ODE is integrated by Taylor steps along
/// the ray from the origin.
pub fn gauss_2f1(
    a: ComplexValue,
    b: ComplexValue,
    c: ComplexValue,
    z: ComplexValue,
    policy: &SeriesPolicy,
) -> Result<ComplexValue> {
    gauss_2f1_traced(a, b, c, z, policy).map(|(v, _)| v)
}

/// As [`gauss_2f1`], also reporting which evaluation path was taken.
pub fn gauss_2f1_traced(
    a: ComplexValue,
    b: ComplexValue,
    c: ComplexValue,
    z: ComplexValue,
    policy: &SeriesPolicy,
) -> Result<(ComplexValue, EvaluationPath)> {
    policy.validate()?;
    for (name, v) in [("a", a), ("b", b), ("c", c), ("z", z)] {
        finite(v, name)?;
    }
    let degree = terminating_degree(&[a, b]);
    check_lower(&[c], degree)?;
    if z == Complex64::new(0.0, 0.0) {
        return Ok((real(1.0), EvaluationPath::Unit));
    }
    if let Some(n) = degree {
        return Ok((terminating_sum(&[a, b], &[c], z, n)?, EvaluationPath::Polynomial));
    }
    if on_cut(z) {
        return Err(Error::cut(z, "2F1 is cut along [1, ∞)"));
    }
    // Euler's transformation turns these into polynomials.
    if let Some(n) = terminating_degree(&[c - a, c - b]) {
        let poly = terminating_sum(&[c - a, c - b], &[c], z, n)?;
        let v = principal_pow(1.0 - z, c - a - b) * poly;
        return Ok((finite(v, "2F1")?, EvaluationPath::EulerPolynomial));
    }
    if z.norm() <= DIRECT_RADIUS {
        return Ok((pfq_series(&[a, b], &[c], z, policy)?, EvaluationPath::Series));
    }

    let one = real(1.0);
    let mut candidates = vec![(EvaluationPath::Pfaff, (z / (z - one)).norm())];
    if !near_integer(a - b) {
        candidates.push((EvaluationPath::Inversion, (one / z).norm()));
        candidates.push((EvaluationPath::InverseReflection, (one / (one - z)).norm()));
    }
    if !near_integer(c - a - b) {
        candidates.push((EvaluationPath::Reflection, (one - z).norm()));
        candidates.push((EvaluationPath::ReflectedInversion, (one - one / z).norm()));
    }
    candidates.sort_by(|x, y| x.1.total_cmp(&y.1));
    for (path, modulus) in candidates {
        if modulus > DIRECT_RADIUS {
            break;
        }
        let (v, cancellation) = apply_map(path, a, b, c, z, policy)?;
        if cancellation <= MAX_CANCELLATION {
            return Ok((finite(v, "2F1")?, path));
        }
    }
    let v = continue_along_ray(a, b, c, z, policy)?;
    Ok((finite(v, "2F1 continuation")?, EvaluationPath::OdeContinuation))
}

/// Sum of two connection terms with its cancellation factor `(|t₁|+|t₂|)/|t₁+t₂|`.
fn connect(t1: ComplexValue, t2: ComplexValue) -> (ComplexValue, f64) {
    let v = t1 + t2;
    (v, (t1.norm() + t2.norm()) / v.norm())
}

fn apply_map(
    path: EvaluationPath,
    a: ComplexValue,
    b: ComplexValue,
    c: ComplexValue,
    z: ComplexValue,
    policy: &SeriesPolicy,
) -> Result<(ComplexValue, f64)> {
    let one = real(1.0);
    let f = |p: ComplexValue, q: ComplexValue, r: ComplexValue, w: ComplexValue| {
        pfq_series(&[p, q], &[r], w, policy)
    };
    match path {
        EvaluationPath::Pfaff => {
            Ok((principal_pow(one - z, -a) * f(a, c - b, c, z / (z - one))?, 1.0))
        }
        EvaluationPath::Inversion => {
            // valid for |arg(−z)| < π
            let w = one / z;
            let t1 = gamma_ratio(&[c, b - a], &[b, c - a])?
                * principal_pow(-z, -a)
                * f(a, a - c + one, a - b + one, w)?;
            let t2 = gamma_ratio(&[c, a - b], &[a, c - b])?
                * principal_pow(-z, -b)
                * f(b, b - c + one, b - a + one, w)?;
            Ok(connect(t1, t2))
        }
        EvaluationPath::InverseReflection => {
            let w = one / (one - z);
            let t1 = gamma_ratio(&[c, b - a], &[b, c - a])?
                * principal_pow(one - z, -a)
                * f(a, c - b, a - b + one, w)?;
            let t2 = gamma_ratio(&[c, a - b], &[a, c - b])?
                * principal_pow(one - z, -b)
                * f(b, c - a, b - a + one, w)?;
            Ok(connect(t1, t2))
        }
        EvaluationPath::Reflection => {
            let w = one - z;
            let t1 = gamma_ratio(&[c, c - a - b], &[c - a, c - b])? * f(a, b, a + b - c + one, w)?;
            let t2 = gamma_ratio(&[c, a + b - c], &[a, b])?
                * principal_pow(w, c - a - b)
                * f(c - a, c - b, c - a - b + one, w)?;
            Ok(connect(t1, t2))
        }
        EvaluationPath::ReflectedInversion => {
            let w = one - one / z;
            let t1 = gamma_ratio(&[c, c - a - b], &[c - a, c - b])?
                * principal_pow(z, -a)
                * f(a, a - c + one, a + b - c + one, w)?;
            let t2 = gamma_ratio(&[c, a + b - c], &[a, b])?
                * principal_pow(one - z, c - a - b)
                * principal_pow(z, a - c)
                * f(c - a, one - a, c - a - b + one, w)?;
            Ok(connect(t1, t2))
        }
        _ => unreachable!("not a transformation path"),
    }
}
