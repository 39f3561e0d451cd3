use super::gamma::gamma_ratio;
use crate::complex::{finite, principal_pow, real, ComplexValue};
use crate::error::{Error, Result};
use crate::quadrature::{tanh_sinh, QuadraturePolicy};

/// `₂F₁(a, b; c; z)` from Euler's integral
/// `Γ(c)/(Γ(b)Γ(c−b)) ∫₀¹ (1−uz)^{−a} u^{b−1} (1−u)^{c−b−1} du`,
/// evaluated by tanh-sinh quadrature.
///
/// Shares no code with [`super::gauss_2f1`] beyond the gamma function, which
/// makes it the reference for that evaluator. Requires `Re c > Re b > 0`.
pub fn euler_2f1_oracle(
    a: ComplexValue,
    b: ComplexValue,
    c: ComplexValue,
    z: ComplexValue,
) -> Result<ComplexValue> {
    let policy = QuadraturePolicy {
        rel_tol: 1e-12,
        ..QuadraturePolicy::default()
    };
    euler_2f1_oracle_with(a, b, c, z, &policy)
}

pub fn euler_2f1_oracle_with(
    a: ComplexValue,
    b: ComplexValue,
    c: ComplexValue,
    z: ComplexValue,
    policy: &QuadraturePolicy,
) -> Result<ComplexValue> {
    if !(b.re > 0.0 && c.re > b.re) {
        return Err(Error::parameter(format!(
            "Euler integral needs Re(c) > Re(b) > 0, got b = {b}, c = {c}"
        )));
    }
    if z.im == 0.0 && z.re >= 1.0 {
        return Err(Error::cut(z, "Euler integral is cut along [1, ∞)"));
    }
    let e_lo = b - 1.0;
    let e_hi = c - b - 1.0;
    // (1−uz)^{−a} is singular at u = 1/z; when that point hugs [0, 1] the
    // interval is split there so the nodes cluster around it.
    let pole = 1.0 / z;
    let split = pole.re.clamp(0.0, 1.0);
    let near = (pole - split).norm() < 0.5 && split > 1e-3 && split < 1.0 - 1e-3;
    let integrand = |u: f64, from_zero: f64, from_one: f64| {
        principal_pow(real(1.0) - z * u, -a)
            * (e_lo * from_zero.ln()).exp()
            * (e_hi * from_one.ln()).exp()
    };
    let integral = if near {
        let left = tanh_sinh(0.0, split, |u, d_lo, d_hi| integrand(u, d_lo, (1.0 - split) + d_hi), policy)?;
        let right = tanh_sinh(split, 1.0, |u, d_lo, d_hi| integrand(u, split + d_lo, d_hi), policy)?;
        left.value + right.value
    } else {
        tanh_sinh(0.0, 1.0, integrand, policy)?.value
    };
    let norm = gamma_ratio(&[c], &[b, c - b])?;
    finite(norm * integral, "Euler integral")
}
