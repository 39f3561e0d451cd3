//! Complex scalar conventions.
//!
//! Every power `w^λ` in this crate is the principal determination with
//! `arg w ∈ (−π, π]`. A negative zero imaginary part is folded to `+0` before
//! taking logarithms so that the negative real axis always maps to `arg = π`.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// The ambient scalar of every transform.
pub type ComplexValue = Complex64;

#[inline]
pub fn real(x: f64) -> ComplexValue {
    Complex64::new(x, 0.0)
}

#[inline]
fn fold_signed_zero(z: ComplexValue) -> ComplexValue {
    if z.im == 0.0 {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

/// Principal logarithm with `arg ∈ (−π, π]`.
#[inline]
pub fn principal_ln(z: ComplexValue) -> ComplexValue {
    fold_signed_zero(z).ln()
}

/// Principal square root, continuous from above on the negative real axis.
#[inline]
pub fn principal_sqrt(z: ComplexValue) -> ComplexValue {
    fold_signed_zero(z).sqrt()
}

/// Principal power `z^w`. `0^w` is `0` for `Re w > 0` and `1` for `w = 0`.
pub fn principal_pow(z: ComplexValue, w: ComplexValue) -> ComplexValue {
    if w == Complex64::new(0.0, 0.0) {
        return real(1.0);
    }
    if z == Complex64::new(0.0, 0.0) {
        return if w.re > 0.0 {
            real(0.0)
        } else {
            Complex64::new(f64::INFINITY, 0.0)
        };
    }
    if w.im == 0.0 && z.im == 0.0 && z.re > 0.0 {
        return real(z.re.powf(w.re));
    }
    (w * principal_ln(z)).exp()
}

/// Principal power with a real exponent.
#[inline]
pub fn principal_powf(z: ComplexValue, lambda: f64) -> ComplexValue {
    principal_pow(z, real(lambda))
}

/// `√(z−1)·√(z+1)`: the square root of `z²−1` that behaves like `z` at
/// infinity, analytic off `[−1, 1]`.
pub fn sqrt_z2_minus_1(z: ComplexValue) -> ComplexValue {
    principal_sqrt(z - 1.0) * principal_sqrt(z + 1.0)
}

/// `√z·√(z−1)`: the square root of `z(z−1)` that behaves like `z` at infinity,
/// analytic off `[0, 1]`.
pub fn sqrt_z_times_z_minus_1(z: ComplexValue) -> ComplexValue {
    principal_sqrt(z) * principal_sqrt(z - 1.0)
}

pub fn is_finite(z: ComplexValue) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Rejects NaN/Inf components so they never escape an operation silently.
pub fn finite(z: ComplexValue, context: &str) -> Result<ComplexValue> {
    if is_finite(z) {
        Ok(z)
    } else {
        Err(Error::NonFinite(context.to_string()))
    }
}

/// Returns `Some(n)` when `z` is (numerically exactly) the integer `−n ≤ 0`.
pub fn as_nonpositive_integer(z: ComplexValue) -> Option<u64> {
    if z.im != 0.0 || z.re > 0.0 || z.re.fract() != 0.0 || z.re < -1e15 {
        return None;
    }
    Some((-z.re) as u64)
}

/// Distance from `x` to the nearest integer when `x` is (close to) real.
pub(crate) fn distance_to_integer(x: ComplexValue) -> f64 {
    (x.re - x.re.round()).abs().hypot(x.im)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_axis_uses_arg_pi() {
        let below = Complex64::new(-4.0, -0.0);
        let r = principal_sqrt(below);
        assert!((r - Complex64::new(0.0, 2.0)).norm() < 1e-15);
        let p = principal_powf(below, 0.5);
        assert!((p - Complex64::new(0.0, 2.0)).norm() < 1e-14);
    }

    #[test]
    fn branch_roots_are_asymptotic_to_z() {
        for z in [
            Complex64::new(3.0, 0.0),
            Complex64::new(-3.0, 0.0),
            Complex64::new(0.2, 1.5),
            Complex64::new(-0.7, -0.4),
        ] {
            let s = sqrt_z2_minus_1(z);
            assert!((s * s - (z * z - 1.0)).norm() < 1e-13);
            // same half-plane as z
            assert!(s.re * z.re >= 0.0 && s.im * z.im >= 0.0);
            let t = sqrt_z_times_z_minus_1(z);
            assert!((t * t - z * (z - 1.0)).norm() < 1e-13);
        }
        let far = Complex64::new(0.0, 1e6);
        assert!((sqrt_z2_minus_1(far) / far - 1.0).norm() < 1e-9);
    }

    #[test]
    fn nonpositive_integers() {
        assert_eq!(as_nonpositive_integer(real(-3.0)), Some(3));
        assert_eq!(as_nonpositive_integer(real(0.0)), Some(0));
        assert_eq!(as_nonpositive_integer(real(-2.5)), None);
        assert_eq!(as_nonpositive_integer(Complex64::new(-2.0, 1e-3)), None);
    }
}
