//! Analytic continuation of `₂F₁` by Taylor stepping the hypergeometric ODE
//!
//! `z(1−z)w'' + [c − (a+b+1)z]w' − ab·w = 0`
//!
//! Around a regular point `p` the Taylor coefficients of `w(p+h)` satisfy
//! `P₀(n+1)(n+2)c_{n+2} = (n+a)(n+b)c_n − (n+1)(P₁n + Q₀)c_{n+1}` with
//! `P₀ = p(1−p)`, `P₁ = 1−2p`, `Q₀ = c − (a+b+1)p`. Each step stays within
//! half the distance to the nearest singular point (0 or 1).

use super::hypergeometric::{pfq_series, SeriesPolicy};
use crate::complex::ComplexValue;
use crate::error::{Error, Result};

const START_RADIUS: f64 = 0.5;
const STEP_FRACTION: f64 = 0.5;
const MAX_STEPS: usize = 100_000;

pub(crate) fn continue_along_ray(
    a: ComplexValue,
    b: ComplexValue,
    c: ComplexValue,
    z: ComplexValue,
    policy: &SeriesPolicy,
) -> Result<ComplexValue> {
    let mut p = z * (START_RADIUS / z.norm());
    let mut w = pfq_series(&[a, b], &[c], p, policy)?;
    let mut dw = a * b / c * pfq_series(&[a + 1.0, b + 1.0], &[c + 1.0], p, policy)?;

    for _ in 0..MAX_STEPS {
        let remaining = z - p;
        if remaining.norm() == 0.0 {
            return Ok(w);
        }
        let radius = p.norm().min((1.0 - p).norm());
        let reach = STEP_FRACTION * radius;
        let (h, last) = if remaining.norm() <= reach {
            (remaining, true)
        } else {
            (remaining * (reach / remaining.norm()), false)
        };
        let (nw, ndw) = taylor_step(a, b, c, p, w, dw, h, policy)?;
        w = nw;
        dw = ndw;
        if last {
            return Ok(w);
        }
        p += h;
    }
    Err(Error::Convergence {
        terms: MAX_STEPS,
        context: format!("ODE continuation of 2F1 to {z}"),
    })
}

#[allow(clippy::too_many_arguments)]
fn taylor_step(
    a: ComplexValue,
    b: ComplexValue,
    c: ComplexValue,
    p: ComplexValue,
    w: ComplexValue,
    dw: ComplexValue,
    h: ComplexValue,
    policy: &SeriesPolicy,
) -> Result<(ComplexValue, ComplexValue)> {
    let p0 = p * (1.0 - p);
    let p1 = 1.0 - 2.0 * p;
    let q0 = c - (a + b + 1.0) * p;

    // c_n h^n, kept pre-scaled so the recurrence works on O(1) numbers
    let mut prev = w; // n
    let mut cur = dw * h; // n+1
    let mut value = prev + cur;
    let mut deriv = dw;
    let mut quiet = 0;
    let h2 = h * h;
    for n in 0..policy.max_terms {
        let nf = n as f64;
        let next = ((nf + a) * (nf + b) * prev * h2 - (nf + 1.0) * (p1 * nf + q0) * cur * h)
            / (p0 * (nf + 1.0) * (nf + 2.0));
        value += next;
        deriv += next * (nf + 2.0) / h;
        let small = next.norm() <= policy.rel_tol * 0.01 * value.norm()
            || next.norm() <= policy.abs_tol;
        if small {
            quiet += 1;
            if quiet >= 3 {
                return Ok((value, deriv));
            }
        } else {
            quiet = 0;
        }
        prev = cur;
        cur = next;
    }
    Err(Error::Convergence {
        terms: policy.max_terms,
        context: format!("Taylor step at {p} of length {}", h.norm()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{principal_ln, real};
    use num_complex::Complex64;

    #[test]
    fn reproduces_logarithm_beyond_unit_disc() {
        let pol = SeriesPolicy::default();
        for z in [
            Complex64::new(0.5, 0.866_025_403_784_438_6),
            Complex64::new(-3.0, 0.1),
            Complex64::new(2.0, 1e-3),
            Complex64::new(1e4, 1e4),
        ] {
            let v = continue_along_ray(real(1.0), real(1.0), real(2.0), z, &pol).unwrap();
            let want = -principal_ln(1.0 - z) / z;
            assert!((v - want).norm() < 1e-12 * want.norm(), "{z}: {v} vs {want}");
        }
    }
}
