//! Humbert polynomials, roots of the trinomial `z^{d+1} − (d+1)yz + 1`, and
//! the `Γ₀` integral identity at `d = 2`.

use nalgebra::{DMatrix, Schur};
use serde::{Deserialize, Serialize};

use crate::complex::{finite, principal_powf, real, ComplexValue};
use crate::error::{Error, Result};
use crate::quadrature::{tanh_sinh, QuadraturePolicy};
use crate::special::{gamma_real, gauss_2f1, hyper_pfq_real, SeriesPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HumbertParams {
    pub alpha: f64,
    pub d: u32,
}

impl HumbertParams {
    pub fn new(alpha: f64, d: u32) -> Result<Self> {
        let p = HumbertParams { alpha, d };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > -0.5) || self.alpha == 0.0 {
            return Err(Error::parameter(format!(
                "Humbert index must satisfy α > −1/2, α ≠ 0; got {}",
                self.alpha
            )));
        }
        check_degree(self.d)
    }
}

fn check_degree(d: u32) -> Result<()> {
    if d == 0 {
        return Err(Error::parameter("d must be at least 1"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrinomialRoot {
    pub y: ComplexValue,
    pub z: ComplexValue,
    /// `|z^{d+1} − (d+1)yz + 1|`.
    pub residual: f64,
}

/// Trinomial residuals above this are reported as failures by callers.
pub const ROOT_TOLERANCE: f64 = 1e-10;

/// `H_0 … H_{n_max}` from `(1 − (d+1)xz + z^{d+1})^{−α}`, by the power-series
/// exponentiation recurrence
/// `b_n = (1/n) Σ_{k=1}^{n} ((1−α)k − n) a_k b_{n−k}`.
pub fn humbert_coeffs(p: HumbertParams, x: f64, n_max: usize) -> Result<Vec<f64>> {
    p.validate()?;
    let d1 = p.d as usize + 1;
    // nonzero coefficients of the base: a_1 = −(d+1)x, a_{d+1} = 1
    let terms = [(1usize, -(d1 as f64) * x), (d1, 1.0)];
    let exponent = -p.alpha;
    let mut b = Vec::with_capacity(n_max + 1);
    b.push(1.0);
    for n in 1..=n_max {
        let mut s = 0.0;
        for &(k, a_k) in terms.iter().filter(|(k, _)| *k <= n) {
            s += ((exponent + 1.0) * k as f64 - n as f64) * a_k * b[n - k];
        }
        b.push(s / n as f64);
    }
    Ok(b)
}

/// `(1 − (d+1)xz + z^{d+1})^{−α}`.
pub fn humbert_generating_function(p: HumbertParams, x: f64, z: ComplexValue) -> ComplexValue {
    let d1 = p.d as i32 + 1;
    principal_powf(1.0 - (d1 as f64) * x * z + z.powi(d1), -p.alpha)
}

/// `f(z) = (1 + z^{d+1}) / ((d+1) z)`.
pub fn f_map(d: u32, z: ComplexValue) -> Result<ComplexValue> {
    check_degree(d)?;
    if z == real(0.0) {
        return Err(Error::Zero("f(z) has a pole at z = 0".into()));
    }
    let d1 = d as i32 + 1;
    Ok((1.0 + z.powi(d1)) / (d1 as f64 * z))
}

fn trinomial(d: u32, y: ComplexValue, z: ComplexValue) -> (ComplexValue, ComplexValue) {
    let d1 = d as i32 + 1;
    let zd = z.powi(d1 - 1);
    let value = zd * z - (d1 as f64) * y * z + 1.0;
    let slope = (d1 as f64) * zd - (d1 as f64) * y;
    (value, slope)
}

/// All roots of `z^{d+1} − (d+1)yz + 1` from the companion matrix.
pub fn trinomial_roots(d: u32, y: ComplexValue) -> Result<Vec<ComplexValue>> {
    check_degree(d)?;
    let n = d as usize + 1;
    // monic: z^n + c_{n−1} z^{n−1} + … + c_0, with c_1 = −(d+1)y, c_0 = 1
    let mut coeffs = vec![real(0.0); n];
    coeffs[0] = real(1.0);
    coeffs[1] = -(n as f64) * y;
    let mut m = DMatrix::<ComplexValue>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = real(1.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i];
    }
    let eig = Schur::try_new(m, f64::EPSILON, 10_000)
        .and_then(|s| s.eigenvalues())
        .ok_or_else(|| Error::Branch(format!("companion eigenvalues did not converge at y = {y}")))?;
    Ok(eig
        .iter()
        .map(|&z0| {
            // one Newton step
            let (f, df) = trinomial(d, y, z0);
            if df.norm() > 0.0 {
                z0 - f / df
            } else {
                z0
            }
        })
        .collect())
}

/// Real `y` must clear the branch points by this margin.
pub fn real_axis_margin(d: u32) -> f64 {
    let d = d as f64;
    (d + 1.0) / d * d.powf(-1.0 / (d + 1.0))
}

/// The root that behaves like `1/((d+1)y)` as `y → ∞`.
pub fn root_select(d: u32, y: ComplexValue) -> Result<TrinomialRoot> {
    check_degree(d)?;
    finite(y, "trinomial parameter")?;
    if y.im == 0.0 && y.re.abs() <= real_axis_margin(d) {
        return Err(Error::Branch(format!(
            "real y = {} within the branch-point margin {}",
            y.re,
            real_axis_margin(d)
        )));
    }
    let guess = 1.0 / ((d + 1) as f64 * y);
    let mut roots = trinomial_roots(d, y)?;
    roots.sort_by(|a, b| (a - guess).norm().total_cmp(&(b - guess).norm()));
    let z = roots[0];
    if let Some(second) = roots.get(1) {
        let (d1, d2) = ((z - guess).norm(), (second - guess).norm());
        if d2 <= 2.0 * d1 {
            return Err(Error::Branch(format!(
                "root selection ambiguous at y = {y}: distances {d1:e} and {d2:e}"
            )));
        }
    }
    let residual = trinomial(d, y, z).0.norm();
    Ok(TrinomialRoot { y, z, residual })
}

/// Roots from the ₂F₁ formula that disagree with [`root_select`] by more
/// than this are outside the formula's sector.
pub const SECTOR_TOLERANCE: f64 = 1e-8;

/// `(1/(3y)) ₂F₁(1/3, 2/3; 3/2; 1/(4y³))` without the cross-check.
pub fn root_2f1_d2_raw(y: ComplexValue) -> Result<ComplexValue> {
    let w = 1.0 / (4.0 * y * y * y);
    if !(w.norm() < 1.0) {
        return Err(Error::parameter(format!("|1/(4y³)| = {} is not below 1", w.norm())));
    }
    let f = gauss_2f1(real(1.0 / 3.0), real(2.0 / 3.0), real(1.5), w, &SeriesPolicy::default())?;
    Ok(f / (3.0 * y))
}

/// `d = 2` root from the ₂F₁ formula, cross-validated against the
/// companion-matrix root.
pub fn root_via_2f1_d2(y: ComplexValue) -> Result<ComplexValue> {
    let z = root_2f1_d2_raw(y)?;
    let reference = root_select(2, y)?.z;
    let discrepancy = (z - reference).norm();
    if discrepancy > SECTOR_TOLERANCE {
        return Err(Error::Sector { discrepancy });
    }
    Ok(z)
}

/// How to read the argument of the general-`d` hypergeometric root series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeriesArgument {
    /// `(−1)^d / (d^d y^{d+1})`.
    AsPrinted,
    /// `1 / (d^d y^{d+1})`, from Lagrange inversion of `z = (1+z^{d+1})/((d+1)y)`.
    LagrangeInversion,
}

/// Upper and lower parameters of the general-`d` series.
///
/// As printed: `{i/(d+1)}_{1≤i≤d}` over `{(i+1)/d}_{1≤i≤d, i≠d−1}`. Lagrange
/// inversion gives `{i/(d+1)}_{1≤i≤d} ∪ {1}` over `{i/d}_{2≤i≤d+1}`, which
/// reduces to the printed list once the pair of 1s cancels; at `d = 1` there
/// is no lower 1 and the upper 1 stays.
pub fn root_series_parameters(d: u32, argument: SeriesArgument) -> (Vec<f64>, Vec<f64>) {
    let df = d as f64;
    let mut upper: Vec<f64> = (1..=d).map(|i| i as f64 / (df + 1.0)).collect();
    let lower = match argument {
        SeriesArgument::AsPrinted => (1..=d).filter(|&i| i + 1 != d).map(|i| (i as f64 + 1.0) / df).collect(),
        SeriesArgument::LagrangeInversion => {
            let lower: Vec<f64> = (2..=d + 1).filter(|&i| i != d).map(|i| i as f64 / df).collect();
            if d == 1 {
                upper.push(1.0);
            }
            lower
        }
    };
    (upper, lower)
}

/// `(1/((d+1)y)) ₚF_q(…; x)` with `x` per `argument`.
pub fn root_via_pfq(d: u32, y: ComplexValue, argument: SeriesArgument) -> Result<ComplexValue> {
    check_degree(d)?;
    let df = d as f64;
    let mut x = 1.0 / (df.powi(d as i32) * y.powi(d as i32 + 1));
    if argument == SeriesArgument::AsPrinted && d % 2 == 1 {
        x = -x;
    }
    if !(x.norm() < 1.0) {
        return Err(Error::parameter(format!("series argument |x| = {} is not below 1", x.norm())));
    }
    let (upper, lower) = root_series_parameters(d, argument);
    let f = hyper_pfq_real(&upper, &lower, x)?;
    Ok(f / ((df + 1.0) * y))
}

/// Form of the Euler integral for `3z` at `d = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntegralForm {
    /// `4^{1/3} K ∫₀¹ (y³−x)^{−1/3} x^{−1/3}(1−x)^{−1/6} dx`.
    AsPrinted,
    /// `(K/y) ∫₀¹ (1 − x/(4y³))^{−1/3} x^{−1/3}(1−x)^{−1/6} dx`, the Euler
    /// integral of the ₂F₁ root formula.
    Euler,
}

/// `K ∫₀¹ … dx` with `K = Γ(3/2)/(Γ(2/3)Γ(5/6))`; equals `3·z(y)` in the
/// [`IntegralForm::Euler`] reading.
pub fn gamma0_integral(y: ComplexValue, form: IntegralForm, policy: &QuadraturePolicy) -> Result<ComplexValue> {
    let k = gamma_real(1.5)? / (gamma_real(2.0 / 3.0)? * gamma_real(5.0 / 6.0)?);
    let y3 = y * y * y;
    let weight = |d_lo: f64, d_hi: f64| d_lo.powf(-1.0 / 3.0) * d_hi.powf(-1.0 / 6.0);
    let value = match form {
        IntegralForm::Euler => {
            let w = 1.0 / (4.0 * y3);
            let r = tanh_sinh(
                0.0,
                1.0,
                |x, d_lo, d_hi| principal_powf(1.0 - w * x, -1.0 / 3.0) * weight(d_lo, d_hi),
                policy,
            )?;
            k * r.value / y
        }
        IntegralForm::AsPrinted => {
            let r = tanh_sinh(
                0.0,
                1.0,
                |x, d_lo, d_hi| principal_powf(y3 - x, -1.0 / 3.0) * weight(d_lo, d_hi),
                policy,
            )?;
            4f64.powf(1.0 / 3.0) * k * r.value
        }
    };
    finite(value, "Γ₀ integral")
}

/// Both sides of `∫(y−x)^{−α}Γ₀(dx) = [3z(y)]^α` at `d = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Gamma0Check {
    /// `[3·root_select(2, y)]^α`.
    pub root_side: ComplexValue,
    /// `{Euler integral}^α`.
    pub integral_side: ComplexValue,
    pub residual: f64,
}

/// `d = 2` Γ₀ identity: the Euler-integral side by quadrature against the
/// root side by companion-matrix root finding.
pub fn gamma0_gst_identity_d2(alpha: f64, y: ComplexValue) -> Result<Gamma0Check> {
    if !((4.0 * y * y * y).norm() > 1.0) {
        return Err(Error::parameter("Γ₀ identity needs |4y³| > 1"));
    }
    let root = root_select(2, y)?;
    let root_side = principal_powf(3.0 * root.z, alpha);
    let integral = gamma0_integral(y, IntegralForm::Euler, &QuadraturePolicy::default())?;
    let integral_side = principal_powf(integral, alpha);
    Ok(Gamma0Check {
        root_side,
        integral_side,
        residual: (root_side - integral_side).norm(),
    })
}

/// Normalization `Γ₀[(1 − 3xz + z³)^{−α}] = 1`, restated at `y = f(z)`:
/// the root at `y` must be `z` itself and `[3z]^α / {Euler integral}^α = 1`.
pub fn humbert_functional_normalization(p: HumbertParams, z: ComplexValue) -> Result<f64> {
    p.validate()?;
    if p.d != 2 {
        return Err(Error::parameter(format!(
            "the Γ₀ normalization is realized for d = 2 only, got d = {}",
            p.d
        )));
    }
    let y = f_map(2, z)?;
    let check = gamma0_gst_identity_d2(p.alpha, y)?;
    let root_gap = (root_select(2, y)?.z - z).norm();
    let lhs = principal_powf(3.0 * z, p.alpha);
    let ratio_gap = (lhs / check.integral_side - 1.0).norm();
    Ok(root_gap.max(ratio_gap))
}
