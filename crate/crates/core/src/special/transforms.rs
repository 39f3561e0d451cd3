//! Linear and quadratic `₂F₁` transformations and the closed forms they
//! produce. Each transformation is exposed as a residual between its two
//! sides so it can be used as a self-test of [`super::gauss_2f1`].

use serde::{Deserialize, Serialize};

use super::hypergeometric::{gauss_2f1, SeriesPolicy};
use crate::complex::{finite, principal_pow, principal_powf, principal_sqrt, real, ComplexValue};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityResidual {
    pub lhs: ComplexValue,
    pub rhs: ComplexValue,
    pub residual: f64,
}

impl IdentityResidual {
    pub fn new(lhs: ComplexValue, rhs: ComplexValue) -> Self {
        IdentityResidual {
            lhs,
            rhs,
            residual: (lhs - rhs).norm(),
        }
    }

    /// `|lhs − rhs| / (1 + |rhs|)`.
    pub fn scaled(&self) -> f64 {
        self.residual / (1.0 + self.rhs.norm())
    }
}

fn check_arg(u: ComplexValue) -> Result<()> {
    // |arg(1−u)| < π  ⇔  u ∉ [1, ∞)
    if u.im == 0.0 && u.re >= 1.0 {
        return Err(Error::cut(u, "requires |arg(1−u)| < π"));
    }
    Ok(())
}

/// `₂F₁(a, c+d; c; u) = (1−u)^{−a} ₂F₁(a, −d; c; u/(u−1))`.
pub fn transform_linear(
    a: ComplexValue,
    d: ComplexValue,
    c: ComplexValue,
    u: ComplexValue,
) -> Result<IdentityResidual> {
    check_arg(u)?;
    let p = SeriesPolicy::default();
    let lhs = gauss_2f1(a, c + d, c, u, &p)?;
    let rhs = principal_pow(1.0 - u, -a) * gauss_2f1(a, -d, c, u / (u - 1.0), &p)?;
    Ok(IdentityResidual::new(lhs, rhs))
}

/// `₂F₁(a, b; 2a; u) = (1−u/2)^{−b} ₂F₁(b/2, (b+1)/2; a+1/2; u²/(2−u)²)`.
pub fn transform_quadratic_0(
    a: ComplexValue,
    b: ComplexValue,
    u: ComplexValue,
) -> Result<IdentityResidual> {
    check_arg(u)?;
    let p = SeriesPolicy::default();
    let lhs = gauss_2f1(a, b, 2.0 * a, u, &p)?;
    let w = u * u / ((2.0 - u) * (2.0 - u));
    let rhs = principal_pow(1.0 - u / 2.0, -b) * gauss_2f1(b / 2.0, (b + 1.0) / 2.0, a + 0.5, w, &p)?;
    Ok(IdentityResidual::new(lhs, rhs))
}

/// `₂F₁(a, a+1/2; b; u) = 2^{2a}/(1+√(1−u))^{2a} · ₂F₁(2a, 2a−b+1; b; u/(1+√(1−u))²)`.
pub fn transform_quadratic_1(
    a: ComplexValue,
    b: ComplexValue,
    u: ComplexValue,
) -> Result<IdentityResidual> {
    check_arg(u)?;
    let p = SeriesPolicy::default();
    let lhs = gauss_2f1(a, a + 0.5, b, u, &p)?;
    let s = 1.0 + principal_sqrt(1.0 - u);
    let rhs = principal_pow(real(4.0) / (s * s), a)
        * gauss_2f1(2.0 * a, 2.0 * a - b + 1.0, b, u / (s * s), &p)?;
    Ok(IdentityResidual::new(lhs, rhs))
}

/// `₂F₁(a−1/2, a; 2a; u) = 2^{2a−1}/(1+√(1−u))^{2a−1}`.
pub fn closed_id1(a: ComplexValue, u: ComplexValue) -> Result<ComplexValue> {
    check_arg(u)?;
    let s = 1.0 + principal_sqrt(1.0 - u);
    // Re s ≥ 1, so the principal power of 2/s is unambiguous.
    finite(principal_pow(real(2.0) / s, 2.0 * a - 1.0), "closed_id1")
}

/// `₂F₁(a, a+1/2; 2a; u) = (1−u)^{−1/2} · 2^{2a−1}/(1+√(1−u))^{2a−1}`.
pub fn closed_id2(a: ComplexValue, u: ComplexValue) -> Result<ComplexValue> {
    let id1 = closed_id1(a, u)?;
    finite(principal_powf(1.0 - u, -0.5) * id1, "closed_id2")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn residuals_vanish_at_origin() {
        let (a, b) = (real(0.9), real(1.7));
        assert_eq!(transform_linear(a, b, real(2.0), real(0.0)).unwrap().residual, 0.0);
        assert_eq!(transform_quadratic_0(a, b, real(0.0)).unwrap().residual, 0.0);
        assert_eq!(transform_quadratic_1(a, b, real(0.0)).unwrap().residual, 0.0);
    }

    #[test]
    fn closed_forms_at_zero_and_examples() {
        for a in [0.6, 1.0, 2.3] {
            assert!((closed_id1(real(a), real(0.0)).unwrap() - 1.0).norm() < 1e-15);
            assert!((closed_id2(real(a), real(0.0)).unwrap() - 1.0).norm() < 1e-15);
        }
        let v = closed_id1(real(1.0), real(0.5)).unwrap();
        assert!((v.re - 2.0 / (1.0 + 0.5f64.sqrt())).abs() < 1e-15);
        let v = closed_id2(real(1.5), real(-3.0)).unwrap();
        assert!((v.re - 2.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn cut_is_rejected() {
        assert!(closed_id1(real(1.0), real(1.5)).is_err());
        assert!(transform_linear(real(1.0), real(1.0), real(2.0), real(3.0)).is_err());
        assert!(closed_id1(real(1.0), Complex64::new(1.5, 0.1)).is_ok());
    }
}
