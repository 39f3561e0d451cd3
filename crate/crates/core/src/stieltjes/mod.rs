//! Generalized Stieltjes transforms `G_{λ,μ}(z) = ∫ (z−x)^{−λ} μ(dx)`.
//!
//! [`gst_quadrature`] is the reference evaluator. Everything else in this
//! module is a closed form that must agree with it.

mod grid;
mod identities;

pub use grid::EvalGrid;
pub use identities::{
    bernoulli_power_identity, free_poisson_forms_residual, free_poisson_identity,
    kappa_reduction_identity, power_relation_check, power_relation_residuals, prop1_remark_residual, prop2_square_residual,
    shrinkage_identity, shrinkage_inner_check, wigner_functional_residual, FreePoissonResidual,
    PowerRelation,
};

use serde::{Deserialize, Serialize};

use crate::complex::{principal_powf, real, sqrt_z2_minus_1, sqrt_z_times_z_minus_1, ComplexValue};
use crate::error::{Error, Result};
use crate::measures::{BetaParams, MeasureSpec};
use crate::quadrature::QuadraturePolicy;
use crate::special::{gauss_2f1, SeriesPolicy};

/// Points closer than this to a support or cut are rejected.
pub const EXCLUSION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::ClosedForm => "closed_form",
            Method::Quadrature => "quadrature",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GstResult {
    pub value: ComplexValue,
    pub err_estimate: f64,
    pub method: Method,
}

impl GstResult {
    fn closed(value: ComplexValue) -> Result<Self> {
        crate::complex::finite(value, "closed form")?;
        Ok(GstResult {
            value,
            err_estimate: 0.0,
            method: Method::ClosedForm,
        })
    }

    pub fn record(&self, z: ComplexValue) -> GstRecord {
        GstRecord {
            z_re: z.re,
            z_im: z.im,
            value_re: self.value.re,
            value_im: self.value.im,
            err: self.err_estimate,
            method: self.method,
        }
    }
}

/// Flat serialization of a [`GstResult`] at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GstRecord {
    pub z_re: f64,
    pub z_im: f64,
    pub value_re: f64,
    pub value_im: f64,
    pub err: f64,
    pub method: Method,
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::parameter(format!("λ must be positive, got {lambda}")));
    }
    Ok(())
}

/// `z ∉ (−∞, 1]`.
fn check_off_left_cut(z: ComplexValue, context: &str) -> Result<()> {
    if z.im == 0.0 && z.re <= 1.0 {
        return Err(Error::cut(z, context));
    }
    Ok(())
}

pub fn gst_quadrature(lambda: f64, m: &MeasureSpec, z: ComplexValue) -> Result<GstResult> {
    gst_quadrature_with(lambda, m, z, &QuadraturePolicy::default())
}

pub fn gst_quadrature_with(
    lambda: f64,
    m: &MeasureSpec,
    z: ComplexValue,
    policy: &QuadraturePolicy,
) -> Result<GstResult> {
    check_lambda(lambda)?;
    let distance = m.distance_to_support(z);
    if !(distance >= EXCLUSION) {
        return Err(Error::Support {
            re: z.re,
            im: z.im,
            distance,
            measure: m.name().to_string(),
        });
    }
    // work in the closed upper half-plane and conjugate back
    let lower = z.im < 0.0;
    let w = if lower { z.conj() } else { z };
    let r = m.integrate(|x| principal_powf(w - x, -lambda), policy)?;
    let value = if lower { r.value.conj() } else { r.value };
    crate::complex::finite(value, "generalized Stieltjes transform")?;
    Ok(GstResult {
        value,
        err_estimate: r.error,
        method: Method::Quadrature,
    })
}

/// `(z−1)^{−λ} ₂F₁(λ, γ+1; γ+β+2; 2/(1−z))`.
pub fn gst_beta_closed(lambda: f64, p: BetaParams, z: ComplexValue) -> Result<GstResult> {
    check_lambda(lambda)?;
    p.validate()?;
    check_off_left_cut(z, "the (z−1) form needs z off (−∞, 1]")?;
    let f = gauss_2f1(
        real(lambda),
        real(p.gamma + 1.0),
        real(p.gamma + p.beta + 2.0),
        2.0 / (1.0 - z),
        &SeriesPolicy::default(),
    )?;
    GstResult::closed(principal_powf(z - 1.0, -lambda) * f)
}

/// `(z+1)^{−λ} ₂F₁(λ, β+1; γ+β+2; 2/(1+z))`.
pub fn gst_beta_closed_alt(lambda: f64, p: BetaParams, z: ComplexValue) -> Result<GstResult> {
    check_lambda(lambda)?;
    p.validate()?;
    check_off_left_cut(z, "the (z+1) form needs z off (−∞, 1]")?;
    let f = gauss_2f1(
        real(lambda),
        real(p.beta + 1.0),
        real(p.gamma + p.beta + 2.0),
        2.0 / (1.0 + z),
        &SeriesPolicy::default(),
    )?;
    GstResult::closed(principal_powf(z + 1.0, -lambda) * f)
}

fn check_off_segment(z: ComplexValue, lo: f64, hi: f64, what: &str) -> Result<()> {
    if z.im == 0.0 && z.re >= lo && z.re <= hi {
        return Err(Error::cut(z, format!("{what} is undefined on [{lo}, {hi}]")));
    }
    Ok(())
}

/// `G_W(z) = 2/(z + √(z²−1))`.
pub fn stieltjes_wigner(z: ComplexValue) -> Result<ComplexValue> {
    check_off_segment(z, -1.0, 1.0, "G_W")?;
    Ok(2.0 / (z + sqrt_z2_minus_1(z)))
}

/// `G_AS(z) = 1/√(z²−1)`.
pub fn stieltjes_arcsine(z: ComplexValue) -> Result<ComplexValue> {
    check_off_segment(z, -1.0, 1.0, "G_AS")?;
    Ok(1.0 / sqrt_z2_minus_1(z))
}

/// `G_ν(z) = z/(z²−1)`.
pub fn stieltjes_bernoulli(z: ComplexValue) -> Result<ComplexValue> {
    if z.im == 0.0 && (z.re == 1.0 || z.re == -1.0) {
        return Err(Error::cut(z, "G_ν has poles at ±1"));
    }
    Ok(z / (z * z - 1.0))
}

/// `2/(z + √(z(z−1)))`.
pub fn stieltjes_free_poisson(z: ComplexValue) -> Result<ComplexValue> {
    check_off_segment(z, 0.0, 1.0, "free Poisson transform")?;
    Ok(2.0 / (z + sqrt_z_times_z_minus_1(z)))
}

/// `G_{λ,μ_{γ,γ}}` with `γ = λ−1/2−k`, as
/// `4^k G_W^λ/(4−G_W²)^k ₂F₁(k, 1−k; γ+3/2; G_W²/(G_W²−4))`.
pub fn prop1_closed(lambda: f64, k: u32, z: ComplexValue) -> Result<GstResult> {
    check_lambda(lambda)?;
    let gamma = lambda - 0.5 - k as f64;
    if !(gamma > -1.0) {
        return Err(Error::parameter(format!(
            "symmetric closed form needs γ = λ−1/2−k > −1, got {gamma}"
        )));
    }
    let g = stieltjes_wigner(z)?;
    let g2 = g * g;
    let k_f = k as f64;
    let f = gauss_2f1(
        real(k_f),
        real(1.0 - k_f),
        real(gamma + 1.5),
        g2 / (g2 - 4.0),
        &SeriesPolicy::default(),
    )?;
    let value = 4f64.powi(k as i32) * principal_powf(g, lambda) / (4.0 - g2).powi(k as i32) * f;
    GstResult::closed(value)
}

/// Parameters `(γ, β)` of the beta measure whose transform
/// [`prop2_closed`] computes.
pub fn prop2_params(lambda: f64, k: u32, swapped: bool) -> BetaParams {
    let (a, b) = (lambda - 0.5, lambda - 0.5 - k as f64);
    if swapped {
        BetaParams { gamma: b, beta: a }
    } else {
        BetaParams { gamma: a, beta: b }
    }
}

/// `G` for `μ_{λ−1/2, λ−1/2−k}` (or the swapped pair):
/// `G_W^{λ−k/2}/(1±z)^{k/2} ₂F₁(1−k, k; 2λ−k+1; G_W/(G_W±2))`.
pub fn prop2_closed(lambda: f64, k: u32, z: ComplexValue, swapped: bool) -> Result<GstResult> {
    check_lambda(lambda)?;
    if k == 0 {
        return Err(Error::parameter("asymmetric closed form needs k ≥ 1"));
    }
    let k_f = k as f64;
    if !(lambda > k_f - 0.5) {
        return Err(Error::parameter(format!(
            "asymmetric closed form needs λ > k − 1/2, got λ = {lambda}, k = {k}"
        )));
    }
    let c = 2.0 * lambda - k_f + 1.0;
    if c <= 0.0 && c.fract() == 0.0 {
        return Err(Error::parameter(format!("2λ−k+1 = {c} is a nonpositive integer")));
    }
    let g = stieltjes_wigner(z)?;
    let (base, arg) = if swapped {
        (z - 1.0, g / (g - 2.0))
    } else {
        (z + 1.0, g / (g + 2.0))
    };
    let f = gauss_2f1(real(1.0 - k_f), real(k_f), real(c), arg, &SeriesPolicy::default())?;
    let value = principal_powf(g, lambda - k_f / 2.0) / principal_powf(base, k_f / 2.0) * f;
    GstResult::closed(value)
}

/// `[G_ν(z)]^λ` for `ν = ½(δ₋₁ + δ₁)`.
pub fn bernoulli_power_closed(lambda: f64, z: ComplexValue) -> Result<ComplexValue> {
    Ok(principal_powf(stieltjes_bernoulli(z)?, lambda))
}

/// `[(z−1)^{−(1−p)}(z+1)^{−p}]^λ`.
pub fn shrinkage_closed(lambda: f64, p: f64, z: ComplexValue) -> Result<ComplexValue> {
    check_off_segment(z, -1.0, 1.0, "shrinkage transform")?;
    let inner = principal_powf(z - 1.0, -(1.0 - p)) * principal_powf(z + 1.0, -p);
    Ok(principal_powf(inner, lambda))
}

/// `2^λ / [z + √(z(z−1))]^λ`.
pub fn free_poisson_closed(lambda: f64, z: ComplexValue) -> Result<ComplexValue> {
    Ok(principal_powf(stieltjes_free_poisson(z)?, lambda))
}

/// Closed form for a measure when one is known, by its kind.
pub fn gst_closed(lambda: f64, m: &MeasureSpec, z: ComplexValue) -> Option<Result<GstResult>> {
    use crate::measures::MeasureKind::*;
    let wrap = |v: Result<ComplexValue>| v.and_then(GstResult::closed);
    match m.kind() {
        Beta(p) => Some(gst_beta_closed(lambda, p, z)),
        Wigner if lambda == 1.0 => Some(wrap(stieltjes_wigner(z))),
        Arcsine if lambda == 1.0 => Some(wrap(stieltjes_arcsine(z))),
        Wigner => Some(gst_beta_closed(lambda, BetaParams { gamma: 0.5, beta: 0.5 }, z)),
        Arcsine => Some(gst_beta_closed(lambda, BetaParams { gamma: -0.5, beta: -0.5 }, z)),
        BernoulliSym => Some(wrap(stieltjes_bernoulli(z).map(|_| {
            0.5 * (principal_powf(z - 1.0, -lambda) + principal_powf(z + 1.0, -lambda))
        }))),
        BernoulliPower { lambda: l } if l == lambda => Some(wrap(bernoulli_power_closed(lambda, z))),
        FreePoissonQuarter if lambda == 1.0 => Some(wrap(stieltjes_free_poisson(z))),
        KappaConvolution { lambda: l } if l == lambda => Some(wrap(free_poisson_closed(lambda, z))),
        Kappa { lambda: l } if l == lambda => Some(wrap(check_off_segment(z, 0.0, 1.0, "κ transform").map(
            |_| principal_powf(z, -lambda / 2.0) * principal_powf(z - 1.0, -lambda / 2.0),
        ))),
        _ => None,
    }
}
