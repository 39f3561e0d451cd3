//! Double-exponential (tanh-sinh) quadrature on a finite interval.
//!
//! The substitution `x = tanh(π/2·sinh t)` makes algebraic endpoint
//! singularities `(x−lo)^e`, `e > −1`, decay double exponentially in `t`.
//! Integrands receive the node together with its distances to both
//! endpoints, computed without cancellation, so that densities like
//! `(1−x)^γ` stay accurate within a few ulps of the endpoints.

use serde::{Deserialize, Serialize};

use crate::complex::ComplexValue;
use crate::error::{Error, Result};

/// Half-width of the truncated `t` range. At `t = 6` the endpoint distance is
/// about `e^{-634}`, still a normal double.
const T_MAX: f64 = 6.0;
/// Step of the coarsest level.
const H0: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraturePolicy {
    pub abscissae_budget: usize,
    pub levels: usize,
    pub rel_tol: f64,
}

impl Default for QuadraturePolicy {
    fn default() -> Self {
        QuadraturePolicy {
            abscissae_budget: 2000,
            levels: 12,
            rel_tol: 1e-11,
        }
    }
}

impl QuadraturePolicy {
    pub fn new(abscissae_budget: usize, levels: usize, rel_tol: f64) -> Result<Self> {
        let p = QuadraturePolicy {
            abscissae_budget,
            levels,
            rel_tol,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.abscissae_budget < 16 {
            return Err(Error::parameter("quadrature budget must be at least 16"));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::parameter("quadrature rel_tol must be positive"));
        }
        Ok(())
    }

    /// Finest level whose full node set fits in the abscissae budget.
    pub fn max_level(&self) -> usize {
        let mut level = 0;
        while level < self.levels && nodes_through_level(level + 1) <= self.abscissae_budget {
            level += 1;
        }
        level
    }
}

/// Number of nodes used by all levels `0..=level` together.
pub fn nodes_through_level(level: usize) -> usize {
    let base = (T_MAX / H0).floor() as usize;
    2 * base * (1 << level) + 1
}

/// A quadrature node mapped onto `[lo, hi]`.
#[derive(Debug, Clone, Copy)]
pub struct Node {
    pub x: f64,
    /// `x − lo`, accurate near `lo`.
    pub d_lo: f64,
    /// `hi − x`, accurate near `hi`.
    pub d_hi: f64,
    /// Full weight including the step and the interval scaling.
    pub weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: ComplexValue,
    pub error: f64,
    pub nodes: usize,
}

fn raw_node(t: f64, lo: f64, hi: f64) -> Option<(f64, f64, f64, f64)> {
    let half = 0.5 * (hi - lo);
    let s = std::f64::consts::FRAC_PI_2 * t.sinh();
    let e = (-2.0 * s.abs()).exp();
    // 1 − tanh|s| = 2e/(1+e)
    let near = half * 2.0 * e / (1.0 + e);
    let far = 2.0 * half - near;
    let (d_lo, d_hi) = if s >= 0.0 { (far, near) } else { (near, far) };
    if d_lo <= 0.0 || d_hi <= 0.0 {
        return None;
    }
    let x = if d_lo < d_hi { lo + d_lo } else { hi - d_hi };
    // dx/dt = half · (π/2) cosh t · sech² s, sech² s = 4e/(1+e)²
    let w = half * std::f64::consts::FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
    Some((x, d_lo, d_hi, w))
}

/// All nodes of the trapezoidal rule with step `H0 / 2^level`.
pub fn fixed_rule(lo: f64, hi: f64, level: usize) -> Vec<Node> {
    let h = H0 / (1u64 << level) as f64;
    let n = (T_MAX / h).floor() as i64;
    (-n..=n)
        .filter_map(|k| raw_node(k as f64 * h, lo, hi))
        .map(|(x, d_lo, d_hi, w)| Node {
            x,
            d_lo,
            d_hi,
            weight: w * h,
        })
        .collect()
}

/// Integrates `f(x, x−lo, hi−x)` over `[lo, hi]`, refining by halving the
/// step until successive levels agree to `rel_tol` relative to `∫|f|`.
pub fn tanh_sinh<F>(lo: f64, hi: f64, mut f: F, policy: &QuadraturePolicy) -> Result<QuadEstimate>
where
    F: FnMut(f64, f64, f64) -> ComplexValue,
{
    policy.validate()?;
    if !(hi > lo) {
        return Err(Error::parameter(format!("empty interval [{lo}, {hi}]")));
    }
    let max_level = policy.max_level();
    let mut raw = ComplexValue::new(0.0, 0.0);
    let mut raw_abs = 0.0;
    let mut nodes = 0usize;
    let mut previous: Option<ComplexValue> = None;
    let mut last_error = f64::INFINITY;

    for level in 0..=max_level {
        let h = H0 / (1u64 << level) as f64;
        let n = (T_MAX / h).floor() as i64;
        let (start, stride) = if level == 0 { (-n, 1) } else { (-n + ((n + 1) % 2), 2) };
        let mut k = start;
        while k <= n {
            if level == 0 || k % 2 != 0 {
                if let Some((x, d_lo, d_hi, w)) = raw_node(k as f64 * h, lo, hi) {
                    let v = f(x, d_lo, d_hi);
                    if !(v.re.is_finite() && v.im.is_finite()) {
                        return Err(Error::NonFinite(format!("integrand at x = {x}")));
                    }
                    raw += v * w;
                    raw_abs += v.norm() * w;
                    nodes += 1;
                }
            }
            k += stride;
        }
        let estimate = raw * h;
        let scale = raw_abs * h;
        if let Some(prev) = previous {
            last_error = (estimate - prev).norm();
            if level >= 2 && last_error <= policy.rel_tol * scale.max(f64::MIN_POSITIVE) {
                return Ok(QuadEstimate {
                    value: estimate,
                    error: last_error,
                    nodes,
                });
            }
            if scale == 0.0 && level >= 2 {
                return Ok(QuadEstimate {
                    value: estimate,
                    error: 0.0,
                    nodes,
                });
            }
        }
        previous = Some(estimate);
    }
    Err(Error::Quadrature {
        estimate: last_error,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::real;

    #[test]
    fn polynomial_and_singular_endpoints() {
        let p = QuadraturePolicy::default();
        let r = tanh_sinh(-1.0, 1.0, |x, _, _| real(x * x), &p).unwrap();
        assert!((r.value.re - 2.0 / 3.0).abs() < 1e-13);
        // ∫_0^1 x^{-1/2} = 2
        let r = tanh_sinh(0.0, 1.0, |_, d, _| real(d.powf(-0.5)), &p).unwrap();
        assert!((r.value.re - 2.0).abs() < 1e-12, "{r:?}");
        // ∫_{-1}^{1} (1−x²)^{-1/2} = π
        let r = tanh_sinh(-1.0, 1.0, |_, a, b| real((a * b).powf(-0.5)), &p).unwrap();
        assert!((r.value.re - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn endpoint_distances_are_consistent() {
        for node in fixed_rule(-1.0, 3.0, 3) {
            assert!((node.d_lo + node.d_hi - 4.0).abs() < 1e-14);
            assert!(node.d_lo > 0.0 && node.d_hi > 0.0);
        }
        assert_eq!(fixed_rule(0.0, 1.0, 4).len(), nodes_through_level(4));
    }

    #[test]
    fn budget_limits_levels() {
        let p = QuadraturePolicy::default();
        assert!(nodes_through_level(p.max_level()) <= 2000);
        assert!(QuadraturePolicy::new(8, 12, 1e-11).is_err());
    }

    #[test]
    fn tiny_budget_reports_non_convergence() {
        let p = QuadraturePolicy::new(16, 12, 1e-15).unwrap();
        let r = tanh_sinh(0.0, 1.0, |x, _, _| real((30.0 * x).sin()), &p);
        assert!(matches!(r, Err(Error::Quadrature { .. })));
    }
}
