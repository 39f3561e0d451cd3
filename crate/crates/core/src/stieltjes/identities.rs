//! Residual checks for the transform identities, each comparing a closed
//! form with quadrature.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    bernoulli_power_closed, free_poisson_closed, gst_quadrature, shrinkage_closed, stieltjes_arcsine,
    stieltjes_free_poisson, stieltjes_wigner, EvalGrid,
};
use crate::complex::{principal_powf, principal_sqrt, ComplexValue};
use crate::error::{Error, Result};
use crate::measures::{
    beta_measure, bernoulli_power_measure, kappa, kappa_convolution_density, mult_convolve, BetaParams,
    MeasureSpec,
};
use crate::special::IdentityResidual;
use crate::verify::VerificationReport;

/// Bernoulli power measure: `G_{λ,μ_λ}(z)` against `[z/(z²−1)]^λ`.
pub fn bernoulli_power_identity(lambda: f64, z: ComplexValue) -> Result<IdentityResidual> {
    let m = bernoulli_power_measure(lambda)?;
    let lhs = gst_quadrature(lambda, &m, z)?.value;
    Ok(IdentityResidual::new(lhs, bernoulli_power_closed(lambda, z)?))
}

fn shrinkage_params(lambda: f64, p: f64) -> Result<BetaParams> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::parameter(format!("p must lie in (0, 1), got {p}")));
    }
    BetaParams::new(p * lambda - 1.0, (1.0 - p) * lambda - 1.0)
}

/// Shrinkage: `G_{λ,μ_{pλ−1,(1−p)λ−1}}(z)` against `[(z−1)^{−(1−p)}(z+1)^{−p}]^λ`.
pub fn shrinkage_identity(lambda: f64, p: f64, z: ComplexValue) -> Result<IdentityResidual> {
    let m = beta_measure(shrinkage_params(lambda, p)?)?;
    let lhs = gst_quadrature(lambda, &m, z)?.value;
    Ok(IdentityResidual::new(lhs, shrinkage_closed(lambda, p, z)?))
}

/// The `λ = 1` case: `G_{μ_{p−1,−p}}(z) = (z−1)^{p−1}(z+1)^{−p}`.
pub fn shrinkage_inner_check(p: f64, z: ComplexValue) -> Result<IdentityResidual> {
    shrinkage_identity(1.0, p, z)
}

/// `∫(z−x)^{−λ}(κ_λ⋆μ)(dx)` by double quadrature against
/// `z^{−λ/2} G_{λ/2,μ}(z)`.
pub fn kappa_reduction_identity(lambda: f64, m: &MeasureSpec, z: ComplexValue) -> Result<IdentityResidual> {
    let (lo, hi) = m.support();
    if lo < -1.0 || hi > 1.0 {
        return Err(Error::parameter(format!(
            "κ reduction needs μ supported in [−1, 1], got [{lo}, {hi}]"
        )));
    }
    let conv = mult_convolve(&kappa(lambda)?, m);
    let lower = z.im < 0.0;
    let w = if lower { z.conj() } else { z };
    let lhs = conv.integrate(|x| principal_powf(w - x, -lambda))?.value;
    let rhs = principal_powf(w, -lambda / 2.0) * gst_quadrature(lambda / 2.0, m, w)?.value;
    Ok(if lower {
        IdentityResidual::new(lhs.conj(), rhs.conj())
    } else {
        IdentityResidual::new(lhs, rhs)
    })
}

/// The free Poisson identity checked along both routes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FreePoissonResidual {
    /// `κ_λ ⋆ κ_{λ+1}` by double quadrature.
    pub double: IdentityResidual,
    /// The closed-form density of `κ_λ ⋆ κ_{λ+1}`, single quadrature.
    pub closed_density: IdentityResidual,
}

/// `∫(z−x)^{−λ}(κ_λ⋆κ_{λ+1})(dx) = 2^λ/[z+√(z(z−1))]^λ`.
pub fn free_poisson_identity(lambda: f64, z: ComplexValue) -> Result<FreePoissonResidual> {
    let rhs = free_poisson_closed(lambda, z)?;
    let lower = z.im < 0.0;
    let w = if lower { z.conj() } else { z };
    let conv = mult_convolve(&kappa(lambda)?, &kappa(lambda + 1.0)?);
    let mut double = conv.integrate(|x| principal_powf(w - x, -lambda))?.value;
    if lower {
        double = double.conj();
    }
    let single = gst_quadrature(lambda, &kappa_convolution_density(lambda)?, z)?.value;
    Ok(FreePoissonResidual {
        double: IdentityResidual::new(double, rhs),
        closed_density: IdentityResidual::new(single, rhs),
    })
}

/// `2/(z+√(z(z−1)))` against `2(z−√((z−1/2)²−1/4))/z`.
pub fn free_poisson_forms_residual(z: ComplexValue) -> Result<IdentityResidual> {
    let lhs = stieltjes_free_poisson(z)?;
    let w = z - 0.5;
    let mut s = principal_sqrt(w * w - 0.25);
    // the root asymptotic to z at infinity
    let flip = if z.im != 0.0 { s.im * z.im < 0.0 } else { s.re * z.re < 0.0 };
    if flip {
        s = -s;
    }
    Ok(IdentityResidual::new(lhs, 2.0 * (z - s) / z))
}

/// `1 + G_W²/4 = z G_W`.
pub fn wigner_functional_residual(z: ComplexValue) -> Result<IdentityResidual> {
    let g = stieltjes_wigner(z)?;
    Ok(IdentityResidual::new(1.0 + g * g / 4.0, z * g))
}

/// `1 − G_W²/4 = G_W/G_AS`.
pub fn prop1_remark_residual(z: ComplexValue) -> Result<IdentityResidual> {
    let g = stieltjes_wigner(z)?;
    Ok(IdentityResidual::new(1.0 - g * g / 4.0, g / stieltjes_arcsine(z)?))
}

/// `(1 + G_W/2)² = (z+1) G_W`.
pub fn prop2_square_residual(z: ComplexValue) -> Result<IdentityResidual> {
    let g = stieltjes_wigner(z)?;
    let s = 1.0 + g / 2.0;
    Ok(IdentityResidual::new(s * s, (z + 1.0) * g))
}

/// Per-point residuals of (Rel).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerRelation {
    pub residuals: Vec<IdentityResidual>,
}

/// (Rel): `G_{λ,μ}(z)` against `[G_ν(z)]^λ` over a grid, both by quadrature.
pub fn power_relation_check(
    lambda: f64,
    mu: &MeasureSpec,
    nu: &MeasureSpec,
    grid: &EvalGrid,
    tolerance: f64,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let relation = power_relation_residuals(lambda, mu, nu, grid)?;
    let residuals: Vec<f64> = relation.residuals.iter().map(|r| r.residual).collect();
    Ok(VerificationReport::from_residuals(
        "power-relation",
        format!("lambda={lambda},mu={},nu={}", mu.name(), nu.name()),
        &residuals,
        tolerance,
        start.elapsed(),
    ))
}

pub fn power_relation_residuals(
    lambda: f64,
    mu: &MeasureSpec,
    nu: &MeasureSpec,
    grid: &EvalGrid,
) -> Result<PowerRelation> {
    let residuals = grid
        .points()
        .par_iter()
        .map(|&z| {
            let lhs = gst_quadrature(lambda, mu, z)?.value;
            let g = gst_quadrature(1.0, nu, z)?.value;
            Ok(IdentityResidual::new(lhs, principal_powf(g, lambda)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PowerRelation { residuals })
}

