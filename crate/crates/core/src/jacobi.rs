//! Jacobi and ultraspherical polynomials and the Jacobi-series expansion of
//! the kernel `(z−x)^{−λ}`.

use serde::{Deserialize, Serialize};

use crate::complex::{principal_powf, real, ComplexValue};
use crate::error::{Error, Result};
use crate::measures::BetaParams;
use crate::quadrature::{tanh_sinh, QuadraturePolicy};
use crate::special::{gauss_2f1, ln_gamma, SeriesPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JacobiParams {
    pub gamma: f64,
    pub beta: f64,
    pub n: u32,
}

impl JacobiParams {
    pub fn new(gamma: f64, beta: f64, n: u32) -> Result<Self> {
        BetaParams::new(gamma, beta)?;
        Ok(JacobiParams { gamma, beta, n })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionTruncation {
    pub n_max: u32,
}

impl Default for ExpansionTruncation {
    fn default() -> Self {
        ExpansionTruncation { n_max: 40 }
    }
}

/// `P_n^{(γ,β)}(x)` by the three-term recurrence in `n`.
pub fn jacobi_poly(p: JacobiParams, x: f64) -> Result<f64> {
    BetaParams::new(p.gamma, p.beta)?;
    Ok(jacobi_values(p.gamma, p.beta, p.n, x).pop().expect("n+1 values"))
}

/// `P_0 … P_n` at `x`.
pub fn jacobi_values(a: f64, b: f64, n: u32, x: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(1.0);
    if n == 0 {
        return out;
    }
    out.push((a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0);
    for k in 2..=n as usize {
        let k_f = k as f64;
        let s = 2.0 * k_f + a + b;
        let lead = 2.0 * k_f * (k_f + a + b) * (s - 2.0);
        let c1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c2 = 2.0 * (k_f + a - 1.0) * (k_f + b - 1.0) * s;
        let next = (c1 * out[k - 1] - c2 * out[k - 2]) / lead;
        out.push(next);
    }
    out
}

/// `P_n^{(γ,β)}(x) = ((γ+1)_n/n!) ₂F₁(−n, n+γ+β+1; γ+1; (1−x)/2)`, summed
/// term by term. Cancellation makes this unreliable beyond `n ≈ 15`;
/// [`jacobi_poly`] is the stable evaluator.
pub fn jacobi_poly_series(p: JacobiParams, x: f64) -> Result<f64> {
    BetaParams::new(p.gamma, p.beta)?;
    let (a, b, n) = (p.gamma, p.beta, p.n as f64);
    let w = (1.0 - x) / 2.0;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..p.n {
        let k = k as f64;
        term *= (k - n) * (k + n + a + b + 1.0) / ((k + a + 1.0) * (k + 1.0)) * w;
        sum += term;
    }
    let mut lead = 1.0;
    for k in 0..p.n {
        lead *= (a + 1.0 + k as f64) / (k as f64 + 1.0);
    }
    Ok(lead * sum)
}

/// `C_n^{(α)}(x) = ((2α)_n/(α+1/2)_n) P_n^{(α−1/2,α−1/2)}(x)`.
pub fn ultraspherical_poly(alpha: f64, n: u32, x: f64) -> Result<f64> {
    if !(alpha > -0.5) || alpha == 0.0 {
        return Err(Error::parameter(format!(
            "ultraspherical index must satisfy α > −1/2, α ≠ 0; got {alpha}"
        )));
    }
    let mut scale = 1.0;
    for k in 0..n {
        scale *= (2.0 * alpha + k as f64) / (alpha + 0.5 + k as f64);
    }
    Ok(scale * jacobi_poly(JacobiParams::new(alpha - 0.5, alpha - 0.5, n)?, x)?)
}

/// `ln[(λ)_n 2^n / (n+γ+β+1)_n]`, i.e. the log of
/// `Γ(γ+β+n+1)(λ)_n 2^n / Γ(2n+γ+β+1)`.
fn ln_coeff_prefactor(lambda: f64, s: f64, n: u32) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    let n_f = n as f64;
    Ok(ln_gamma(real(lambda + n_f))?.re - ln_gamma(real(lambda))?.re + n_f * std::f64::consts::LN_2
        - ln_gamma(real(2.0 * n_f + s))?.re
        + ln_gamma(real(n_f + s))?.re)
}

fn check_coeff_args(lambda: f64, p: BetaParams, z: ComplexValue) -> Result<()> {
    p.validate()?;
    if !(lambda > 0.0) {
        return Err(Error::parameter(format!("λ must be positive, got {lambda}")));
    }
    if z.im == 0.0 && z.re <= 1.0 {
        return Err(Error::cut(z, "kernel expansion needs z off (−∞, 1]"));
    }
    Ok(())
}

/// Coefficient of `P_n^{(γ,β)}(x)` in the expansion of `(z−x)^{−λ}`:
/// `Γ(γ+β+n+1)(λ)_n/Γ(2n+γ+β+1) · 2^n/(z−1)^{n+λ} · ₂F₁(n+λ, n+γ+1; 2n+γ+β+2; 2/(1−z))`.
///
/// The ₂F₁ is taken through its Euler integral, which after `u = (1−x)/2`
/// reads `∫₋₁¹ (1−x)^{n+γ}(1+x)^{n+β}(z−x)^{−n−λ} dx` up to gamma factors.
pub fn kernel_expansion_coeff(lambda: f64, p: BetaParams, n: u32, z: ComplexValue) -> Result<ComplexValue> {
    check_coeff_args(lambda, p, z)?;
    let n_f = n as f64;
    let s = p.gamma + p.beta + 1.0;
    let (e_hi, e_lo) = (n_f + p.gamma, n_f + p.beta);
    let ln_scale = ln_coeff_prefactor(lambda, s, n)? + ln_gamma(real(2.0 * n_f + s + 1.0))?.re
        - ln_gamma(real(n_f + p.gamma + 1.0))?.re
        - ln_gamma(real(n_f + p.beta + 1.0))?.re
        - (2.0 * n_f + s) * std::f64::consts::LN_2;
    let lower = z.im < 0.0;
    let w = if lower { z.conj() } else { z };
    let policy = QuadraturePolicy::new(2000, 12, 1e-13)?;
    let r = tanh_sinh(
        -1.0,
        1.0,
        |x, d_lo, d_hi| {
            let weight = (e_hi * d_hi.ln() + e_lo * d_lo.ln() + ln_scale).exp();
            principal_powf(w - x, -(n_f + lambda)) * weight
        },
        &policy,
    )?;
    let value = if lower { r.value.conj() } else { r.value };
    crate::complex::finite(value, "kernel expansion coefficient")
}

/// The same coefficient with the ₂F₁ evaluated by [`gauss_2f1`]; reliable
/// for small `n` only.
pub fn kernel_expansion_coeff_series(
    lambda: f64,
    p: BetaParams,
    n: u32,
    z: ComplexValue,
) -> Result<ComplexValue> {
    check_coeff_args(lambda, p, z)?;
    let n_f = n as f64;
    let s = p.gamma + p.beta + 1.0;
    let f = gauss_2f1(
        real(n_f + lambda),
        real(n_f + p.gamma + 1.0),
        real(2.0 * n_f + s + 1.0),
        2.0 / (1.0 - z),
        &SeriesPolicy::default(),
    )?;
    let ln_pre = ln_coeff_prefactor(lambda, s, n)?;
    let power = (-(n_f + lambda) * crate::complex::principal_ln(z - 1.0) + ln_pre).exp();
    crate::complex::finite(power * f, "kernel expansion coefficient")
}

pub fn kernel_coefficients(
    lambda: f64,
    p: BetaParams,
    z: ComplexValue,
    t: ExpansionTruncation,
) -> Result<Vec<ComplexValue>> {
    (0..=t.n_max).map(|n| kernel_expansion_coeff(lambda, p, n, z)).collect()
}

/// Partial sum `Σ_{n ≤ n_max} c_n P_n^{(γ,β)}(x)`.
pub fn kernel_reconstruct(
    lambda: f64,
    p: BetaParams,
    z: ComplexValue,
    x: f64,
    t: ExpansionTruncation,
) -> Result<ComplexValue> {
    let coeffs = kernel_coefficients(lambda, p, z, t)?;
    Ok(reconstruct_from(&coeffs, p, x))
}

/// Evaluates the partial sum for precomputed coefficients.
pub fn reconstruct_from(coeffs: &[ComplexValue], p: BetaParams, x: f64) -> ComplexValue {
    if coeffs.is_empty() {
        return real(0.0);
    }
    let values = jacobi_values(p.gamma, p.beta, coeffs.len() as u32 - 1, x);
    coeffs.iter().zip(values).map(|(c, v)| c * v).sum()
}

/// `(z−x)^{−λ}`.
pub fn kernel(lambda: f64, z: ComplexValue, x: f64) -> ComplexValue {
    principal_powf(z - x, -lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degree_values() {
        let p = |n| JacobiParams::new(0.0, 0.0, n).unwrap();
        assert_eq!(jacobi_poly(p(0), 0.3).unwrap(), 1.0);
        assert!((jacobi_poly(p(1), 0.3).unwrap() - 0.3).abs() < 1e-15);
        // Legendre P₂
        assert!((jacobi_poly(p(2), 0.3).unwrap() - (1.5 * 0.09 - 0.5)).abs() < 1e-15);
        assert!((jacobi_poly_series(p(2), 0.3).unwrap() - (1.5 * 0.09 - 0.5)).abs() < 1e-15);
    }

    #[test]
    fn chebyshev_second_kind() {
        // C_n^{(1)} = U_n
        let x: f64 = 0.37;
        let th = x.acos();
        for n in 0..8 {
            let u = ((n as f64 + 1.0) * th).sin() / th.sin();
            assert!((ultraspherical_poly(1.0, n, x).unwrap() - u).abs() < 1e-13);
        }
        assert!(ultraspherical_poly(0.0, 2, x).is_err());
        assert!(ultraspherical_poly(-0.5, 2, x).is_err());
    }

    #[test]
    fn zero_coefficient_is_the_closed_transform() {
        let p = BetaParams::new(0.5, 0.5).unwrap();
        let z = ComplexValue::new(2.0, 0.0);
        let c0 = kernel_expansion_coeff(1.0, p, 0, z).unwrap();
        assert!((c0 - 2.0 / (2.0 + 3f64.sqrt())).norm() < 1e-14);
        let t = ExpansionTruncation { n_max: 0 };
        assert_eq!(kernel_reconstruct(1.0, p, z, 0.7, t).unwrap(), c0);
        assert!(kernel_expansion_coeff(1.0, p, 0, real(0.5)).is_err());
    }

    #[test]
    fn arcsine_parameters_at_n_zero() {
        // γ+β+1 = 0: the Γ ratio must not hit the pole
        let p = BetaParams::new(-0.5, -0.5).unwrap();
        let c0 = kernel_expansion_coeff(1.0, p, 0, real(2.0)).unwrap();
        assert!((c0.re - 1.0 / 3f64.sqrt()).abs() < 1e-14);
        assert!(kernel_expansion_coeff(1.0, p, 3, real(2.0)).unwrap().norm().is_finite());
    }
}
