//! Compactly supported probability measures: atoms plus piecewise densities
//! with declared endpoint behaviour, and integration against them.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{real, ComplexValue};
use crate::error::{Error, Result};
use crate::quadrature::{fixed_rule, nodes_through_level, tanh_sinh, QuadEstimate, QuadraturePolicy};
use crate::special::{gamma_real, gauss_2f1, ln_gamma, SeriesPolicy};

/// Mass tolerance every constructed measure must meet.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// Parameters `(γ, β)` of `μ_{γ,β}(dx) ∝ (1−x)^γ (1+x)^β dx` on `[−1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaParams {
    pub gamma: f64,
    pub beta: f64,
}

impl BetaParams {
    pub fn new(gamma: f64, beta: f64) -> Result<Self> {
        let p = BetaParams { gamma, beta };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > -1.0 && self.beta > -1.0) {
            return Err(Error::parameter(format!(
                "beta parameters must exceed −1, got ({}, {})",
                self.gamma, self.beta
            )));
        }
        Ok(())
    }

    /// `Γ(γ+β+2) / (2^{γ+β+1} Γ(γ+1) Γ(β+1))`.
    pub fn normalizer(&self) -> f64 {
        let (g, b) = (self.gamma, self.beta);
        let ln = ln_gamma(real(g + b + 2.0)).expect("γ+β+2 > 0").re
            - (g + b + 1.0) * std::f64::consts::LN_2
            - ln_gamma(real(g + 1.0)).expect("γ+1 > 0").re
            - ln_gamma(real(b + 1.0)).expect("β+1 > 0").re;
        ln.exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub location: f64,
    pub weight: f64,
}

/// Density evaluated at `(x, x − lo, hi − x)`.
pub type DensityFn = Arc<dyn Fn(f64, f64, f64) -> f64 + Send + Sync>;

/// A density on `[lo, hi]` behaving like `(x−lo)^{e_lo}` and `(hi−x)^{e_hi}`
/// at the endpoints.
#[derive(Clone)]
pub struct DensityPiece {
    pub lo: f64,
    pub hi: f64,
    pub exponents: (f64, f64),
    f: DensityFn,
}

impl DensityPiece {
    pub fn new(lo: f64, hi: f64, exponents: (f64, f64), f: DensityFn) -> Result<Self> {
        if !(hi > lo) {
            return Err(Error::parameter(format!("empty density interval [{lo}, {hi}]")));
        }
        if !(exponents.0 > -1.0 && exponents.1 > -1.0) {
            return Err(Error::parameter(format!(
                "endpoint exponents must exceed −1, got {exponents:?}"
            )));
        }
        Ok(DensityPiece { lo, hi, exponents, f })
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.lo || x >= self.hi {
            return 0.0;
        }
        (self.f)(x, x - self.lo, self.hi - x)
    }

    #[inline]
    pub fn eval_with(&self, x: f64, d_lo: f64, d_hi: f64) -> f64 {
        (self.f)(x, d_lo, d_hi)
    }
}

impl fmt::Debug for DensityPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DensityPiece")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .field("exponents", &self.exponents)
            .finish_non_exhaustive()
    }
}

/// Which family a measure belongs to; used to look up closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum MeasureKind {
    Beta(BetaParams),
    Wigner,
    Arcsine,
    BernoulliSym,
    Kappa { lambda: f64 },
    FreePoissonQuarter,
    BernoulliPower { lambda: f64 },
    KappaConvolution { lambda: f64 },
    Custom,
}

#[derive(Debug, Clone)]
pub struct MeasureSpec {
    name: String,
    kind: MeasureKind,
    atoms: Vec<Atom>,
    pieces: Vec<DensityPiece>,
}

impl MeasureSpec {
    /// A user-defined measure; rejects it unless its total mass is 1.
    pub fn custom(name: impl Into<String>, atoms: Vec<Atom>, pieces: Vec<DensityPiece>) -> Result<Self> {
        let m = MeasureSpec::from_parts(name, MeasureKind::Custom, atoms, pieces)?;
        let mass = m.total_mass(&QuadraturePolicy::default())?;
        if (mass - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::parameter(format!("total mass {mass} is not 1")));
        }
        Ok(m)
    }

    fn from_parts(
        name: impl Into<String>,
        kind: MeasureKind,
        atoms: Vec<Atom>,
        pieces: Vec<DensityPiece>,
    ) -> Result<Self> {
        if let Some(a) = atoms.iter().find(|a| !(a.weight > 0.0 && a.weight <= 1.0)) {
            return Err(Error::parameter(format!("atom weight {} not in (0, 1]", a.weight)));
        }
        Ok(MeasureSpec {
            name: name.into(),
            kind,
            atoms,
            pieces,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn pieces(&self) -> &[DensityPiece] {
        &self.pieces
    }

    /// Convex hull of the support.
    pub fn support(&self) -> (f64, f64) {
        let lo = self
            .atoms
            .iter()
            .map(|a| a.location)
            .chain(self.pieces.iter().map(|p| p.lo))
            .fold(f64::INFINITY, f64::min);
        let hi = self
            .atoms
            .iter()
            .map(|a| a.location)
            .chain(self.pieces.iter().map(|p| p.hi))
            .fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    }

    pub fn distance_to_support(&self, z: ComplexValue) -> f64 {
        let seg = |lo: f64, hi: f64| {
            let x = z.re.clamp(lo, hi);
            (z - x).norm()
        };
        self.atoms
            .iter()
            .map(|a| seg(a.location, a.location))
            .chain(self.pieces.iter().map(|p| seg(p.lo, p.hi)))
            .fold(f64::INFINITY, f64::min)
    }

    /// Continuous part of the density at `x`.
    pub fn density(&self, x: f64) -> f64 {
        self.pieces.iter().map(|p| p.eval(x)).sum()
    }

    /// `Σ wᵢ f(xᵢ) + ∫ f·density`, with the quadrature error estimate.
    pub fn integrate<F>(&self, f: F, policy: &QuadraturePolicy) -> Result<QuadEstimate>
    where
        F: Fn(f64) -> ComplexValue,
    {
        let mut value = self
            .atoms
            .iter()
            .map(|a| f(a.location) * a.weight)
            .sum::<ComplexValue>();
        let mut error = 0.0;
        let mut nodes = self.atoms.len();
        for piece in &self.pieces {
            let r = tanh_sinh(
                piece.lo,
                piece.hi,
                |x, d_lo, d_hi| {
                    let w = piece.eval_with(x, d_lo, d_hi);
                    if w == 0.0 {
                        real(0.0)
                    } else {
                        f(x) * w
                    }
                },
                policy,
            )?;
            value += r.value;
            error += r.error;
            nodes += r.nodes;
        }
        Ok(QuadEstimate { value, error, nodes })
    }

    pub fn total_mass(&self, policy: &QuadraturePolicy) -> Result<f64> {
        Ok(self.integrate(|_| real(1.0), policy)?.value.re)
    }

    pub fn moment(&self, k: u32, policy: &QuadraturePolicy) -> Result<f64> {
        Ok(self.integrate(|x| real(x.powi(k as i32)), policy)?.value.re)
    }

    /// Nodes `(x, weight)` of a fixed tanh-sinh rule at `level` on every
    /// piece, followed by the atoms.
    pub fn discretize(&self, level: usize) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = self
            .pieces
            .iter()
            .flat_map(|p| {
                fixed_rule(p.lo, p.hi, level)
                    .into_iter()
                    .map(move |n| (n.x, n.weight * p.eval_with(n.x, n.d_lo, n.d_hi)))
            })
            .filter(|&(_, w)| w != 0.0)
            .collect();
        out.extend(self.atoms.iter().map(|a| (a.location, a.weight)));
        out
    }
}

fn beta_density(name: &str, kind: MeasureKind, p: BetaParams) -> Result<MeasureSpec> {
    p.validate()?;
    let norm = p.normalizer();
    let (g, b) = (p.gamma, p.beta);
    let piece = DensityPiece::new(
        -1.0,
        1.0,
        (b, g),
        Arc::new(move |_, d_lo, d_hi| norm * d_hi.powf(g) * d_lo.powf(b)),
    )?;
    MeasureSpec::from_parts(name, kind, vec![], vec![piece])
}

/// `μ_{γ,β}`: density `Γ(γ+β+2)/(2^{γ+β+1}Γ(γ+1)Γ(β+1)) (1−x)^γ (1+x)^β` on `[−1, 1]`.
pub fn beta_measure(p: BetaParams) -> Result<MeasureSpec> {
    beta_density(
        &format!("beta:gamma={},beta={}", p.gamma, p.beta),
        MeasureKind::Beta(p),
        p,
    )
}

/// Semicircle law `(2/π)√(1−x²)`, i.e. `μ_{1/2,1/2}`.
pub fn wigner() -> MeasureSpec {
    beta_density("wigner", MeasureKind::Wigner, BetaParams { gamma: 0.5, beta: 0.5 })
        .expect("valid parameters")
}

/// Arcsine law `1/(π√(1−x²))`, i.e. `μ_{−1/2,−1/2}`.
pub fn arcsine() -> MeasureSpec {
    beta_density("arcsine", MeasureKind::Arcsine, BetaParams { gamma: -0.5, beta: -0.5 })
        .expect("valid parameters")
}

/// `½(δ₋₁ + δ₁)`.
pub fn bernoulli_sym() -> MeasureSpec {
    MeasureSpec::from_parts(
        "bernoulli",
        MeasureKind::BernoulliSym,
        vec![
            Atom { location: -1.0, weight: 0.5 },
            Atom { location: 1.0, weight: 0.5 },
        ],
        vec![],
    )
    .expect("valid atoms")
}

fn require_positive(lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::parameter(format!("λ must be positive, got {lambda}")));
    }
    Ok(())
}

/// `κ_λ`: density `Γ(λ)/Γ(λ/2)² [x(1−x)]^{λ/2−1}` on `[0, 1]`.
pub fn kappa(lambda: f64) -> Result<MeasureSpec> {
    require_positive(lambda)?;
    let e = lambda / 2.0 - 1.0;
    let norm = (ln_gamma(real(lambda))?.re - 2.0 * ln_gamma(real(lambda / 2.0))?.re).exp();
    let piece = DensityPiece::new(
        0.0,
        1.0,
        (e, e),
        Arc::new(move |_, d_lo, d_hi| norm * (d_lo * d_hi).powf(e)),
    )?;
    MeasureSpec::from_parts(
        format!("kappa:lambda={lambda}"),
        MeasureKind::Kappa { lambda },
        vec![],
        vec![piece],
    )
}

/// Free Poisson law with parameters `(1, 1/4)`: density `(2/π)√((1−x)/x)` on `[0, 1]`.
pub fn free_poisson_quarter() -> MeasureSpec {
    let c = 2.0 / std::f64::consts::PI;
    let piece = DensityPiece::new(
        0.0,
        1.0,
        (-0.5, 0.5),
        Arc::new(move |_, d_lo, d_hi| c * (d_hi / d_lo).sqrt()),
    )
    .expect("valid exponents");
    MeasureSpec::from_parts("free-poisson", MeasureKind::FreePoissonQuarter, vec![], vec![piece])
        .expect("no atoms")
}

/// `h_λ(s) = λ(λ−1)/4 · s^{λ−1} ₂F₁(λ/2+1, (λ+1)/2; 2; 1−s)` for `s ∈ (0, 1]`.
pub fn h_lambda(lambda: f64, s: f64) -> Result<f64> {
    if !(s > 0.0 && s <= 1.0) {
        return Ok(0.0);
    }
    let f = gauss_2f1(
        real(lambda / 2.0 + 1.0),
        real((lambda + 1.0) / 2.0),
        real(2.0),
        real(1.0 - s),
        &SeriesPolicy::default(),
    )?;
    Ok(lambda * (lambda - 1.0) / 4.0 * s.powf(lambda - 1.0) * f.re)
}

/// The symmetric measure `μ_λ`, `λ ≥ 1`, whose `λ`-transform is the `λ`-th
/// power of the transform of `½(δ₋₁ + δ₁)`.
///
/// Atoms of mass `2^{−λ}` sit at `±1`. The continuous part is the preimage
/// under `x ↦ x²` of the G-distribution `2^{1−λ}[δ₁ + h_λ(y)dy]`, i.e. the
/// density `2^{1−λ}|x| h_λ(x²)`. After Euler's transformation this is the
/// bounded function `2^{−1−λ} λ(λ−1) ₂F₁(1−λ/2, (3−λ)/2; 2; 1−x²)`.
pub fn bernoulli_power_measure(lambda: f64) -> Result<MeasureSpec> {
    if !(lambda >= 1.0 && lambda.is_finite()) {
        return Err(Error::parameter(format!(
            "the Bernoulli power measure exists only for λ ≥ 1, got {lambda}"
        )));
    }
    let atom_mass = 2f64.powf(-lambda);
    let atoms = vec![
        Atom { location: -1.0, weight: atom_mass },
        Atom { location: 1.0, weight: atom_mass },
    ];
    let name = format!("bernoulli-power:lambda={lambda}");
    let kind = MeasureKind::BernoulliPower { lambda };
    if lambda == 1.0 {
        return MeasureSpec::from_parts(name, kind, atoms, vec![]);
    }
    let scale = 2f64.powf(-1.0 - lambda) * lambda * (lambda - 1.0);
    let (a, b) = (1.0 - lambda / 2.0, (3.0 - lambda) / 2.0);
    // Gauss's sum: ₂F₁(a, b; 2; 1) = Γ(2)Γ(2−a−b)/(Γ(2−a)Γ(2−b)), 2−a−b = λ−1/2 > 0
    let at_origin = scale * gamma_real(lambda - 0.5)?
        / (gamma_real(1.0 + lambda / 2.0)? * gamma_real((lambda + 1.0) / 2.0)?);
    let g = move |x: f64, one_minus_x2: f64| -> f64 {
        if x * x < 1e-15 {
            return at_origin;
        }
        let f = gauss_2f1(real(a), real(b), real(2.0), real(one_minus_x2), &SeriesPolicy::default())
            .map(|v| v.re)
            .unwrap_or(f64::NAN);
        scale * f
    };
    let g = Arc::new(g);
    let g_left = g.clone();
    let left = DensityPiece::new(
        -1.0,
        0.0,
        (0.0, 0.0),
        Arc::new(move |x, d_lo, _| g_left(x, d_lo * (1.0 - x))),
    )?;
    let right = DensityPiece::new(0.0, 1.0, (0.0, 0.0), Arc::new(move |x, _, d_hi| g(x, d_hi * (1.0 + x))))?;
    MeasureSpec::from_parts(name, kind, atoms, vec![left, right])
}

/// Density of `κ_λ ⋆ κ_{λ+1}`:
/// `Γ(λ)Γ(λ+1)/(Γ(λ/2)Γ((λ+1)/2)Γ(λ+1/2)) x^{λ/2−1}(1−x)^{λ−1/2} ₂F₁((λ−1)/2, (λ+1)/2; λ+1/2; 1−x)`.
pub fn kappa_convolution_density(lambda: f64) -> Result<MeasureSpec> {
    require_positive(lambda)?;
    let ln_c = ln_gamma(real(lambda))?.re + ln_gamma(real(lambda + 1.0))?.re
        - ln_gamma(real(lambda / 2.0))?.re
        - ln_gamma(real((lambda + 1.0) / 2.0))?.re
        - ln_gamma(real(lambda + 0.5))?.re;
    let c = ln_c.exp();
    let (a, b, cc) = ((lambda - 1.0) / 2.0, (lambda + 1.0) / 2.0, lambda + 0.5);
    // ₂F₁ at 1 by Gauss's sum; c−a−b = 1/2
    let at_one = gamma_real(cc)? * gamma_real(0.5)? / (gamma_real(cc - a)? * gamma_real(cc - b)?);
    let (e_lo, e_hi) = (lambda / 2.0 - 1.0, lambda - 0.5);
    let piece = DensityPiece::new(
        0.0,
        1.0,
        (e_lo, e_hi),
        Arc::new(move |_, d_lo, d_hi| {
            let f = if d_hi >= 1.0 {
                at_one
            } else {
                gauss_2f1(real(a), real(b), real(cc), real(d_hi), &SeriesPolicy::default())
                    .map(|v| v.re)
                    .unwrap_or(f64::NAN)
            };
            c * d_lo.powf(e_lo) * d_hi.powf(e_hi) * f
        }),
    )?;
    MeasureSpec::from_parts(
        format!("kappa-conv:lambda={lambda}"),
        MeasureKind::KappaConvolution { lambda },
        vec![],
        vec![piece],
    )
}

/// `Σ wᵢ f(xᵢ) + ∫ f dμ` (free-function form of [`MeasureSpec::integrate`]).
pub fn integrate<F>(m: &MeasureSpec, f: F, policy: &QuadraturePolicy) -> Result<QuadEstimate>
where
    F: Fn(f64) -> ComplexValue,
{
    m.integrate(f, policy)
}

pub fn moment(m: &MeasureSpec, k: u32) -> Result<f64> {
    m.moment(k, &QuadraturePolicy::default())
}

/// Node budget per density piece for iterated quadrature.
pub const CONVOLUTION_BUDGET: usize = 400;

/// The multiplicative convolution `a ⋆ b` as an integration functional:
/// `∫ f d(a⋆b) = ∬ f(uv) a(du) b(dv)`.
#[derive(Debug, Clone)]
pub struct MultConvolution {
    pub first: MeasureSpec,
    pub second: MeasureSpec,
    pub budget: usize,
}

pub fn mult_convolve(a: &MeasureSpec, b: &MeasureSpec) -> MultConvolution {
    MultConvolution {
        first: a.clone(),
        second: b.clone(),
        budget: CONVOLUTION_BUDGET,
    }
}

impl MultConvolution {
    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    fn level(&self) -> Result<usize> {
        let mut level = 0;
        if nodes_through_level(0) > self.budget {
            return Err(Error::parameter(format!("budget {} below the coarsest rule", self.budget)));
        }
        while nodes_through_level(level + 1) <= self.budget {
            level += 1;
        }
        Ok(level)
    }

    fn double_sum<F>(&self, level: usize, f: &F) -> ComplexValue
    where
        F: Fn(f64) -> ComplexValue + Sync,
    {
        let outer = self.first.discretize(level);
        let inner = self.second.discretize(level);
        outer
            .par_iter()
            .map(|&(u, wu)| inner.iter().map(|&(v, wv)| f(u * v) * (wu * wv)).sum::<ComplexValue>())
            .sum()
    }

    /// Iterated tanh-sinh sum at the finest level within the budget; the
    /// error estimate is the change from the next coarser level.
    pub fn integrate<F>(&self, f: F) -> Result<QuadEstimate>
    where
        F: Fn(f64) -> ComplexValue + Sync,
    {
        let level = self.level()?;
        let fine = self.double_sum(level, &f);
        let error = if level > 0 {
            (fine - self.double_sum(level - 1, &f)).norm()
        } else {
            f64::INFINITY
        };
        let n1 = self.first.discretize(level).len();
        let n2 = self.second.discretize(level).len();
        Ok(QuadEstimate {
            value: fine,
            error,
            nodes: n1 * n2,
        })
    }
}

/// Parses measure identifiers such as `wigner`, `beta:gamma=0.5,beta=1.5`,
/// `kappa:lambda=2`, `bernoulli-power:lambda=2`.
pub fn parse_measure(spec: &str) -> Result<MeasureSpec> {
    let (head, args) = match spec.split_once(':') {
        Some((h, a)) => (h.trim(), a.trim()),
        None => (spec.trim(), ""),
    };
    let mut params = std::collections::BTreeMap::new();
    for kv in args.split(',').filter(|s| !s.trim().is_empty()) {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::parameter(format!("expected key=value in `{kv}`")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::parameter(format!("`{}` is not a number", v.trim())))?;
        params.insert(k.trim().to_string(), v);
    }
    let get = |k: &str| {
        params
            .get(k)
            .copied()
            .ok_or_else(|| Error::parameter(format!("measure `{head}` needs `{k}=`")))
    };
    match head {
        "beta" => beta_measure(BetaParams::new(get("gamma")?, get("beta")?)?),
        "wigner" | "semicircle" => Ok(wigner()),
        "arcsine" => Ok(arcsine()),
        "bernoulli" => Ok(bernoulli_sym()),
        "free-poisson" => Ok(free_poisson_quarter()),
        "kappa" => kappa(get("lambda")?),
        "bernoulli-power" => bernoulli_power_measure(get("lambda")?),
        "kappa-conv" => kappa_convolution_density(get("lambda")?),
        other => Err(Error::parameter(format!("unknown measure `{other}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn pol() -> QuadraturePolicy {
        QuadraturePolicy::default()
    }

    #[test]
    fn beta_family_special_cases() {
        let u = beta_measure(BetaParams::new(0.0, 0.0).unwrap()).unwrap();
        assert!((u.density(0.3) - 0.5).abs() < 1e-15);
        let w = wigner();
        let x: f64 = 0.4;
        assert!((w.density(x) - 2.0 / PI * (1.0 - x * x).sqrt()).abs() < 1e-14);
        let a = arcsine();
        assert!((a.density(x) - 1.0 / (PI * (1.0 - x * x).sqrt())).abs() < 1e-14);
        assert!(BetaParams::new(-1.0, 0.0).is_err());
    }

    #[test]
    fn kappa_special_cases() {
        let k2 = kappa(2.0).unwrap();
        assert!((k2.density(0.37) - 1.0).abs() < 1e-14);
        let k1 = kappa(1.0).unwrap();
        let x: f64 = 0.2;
        assert!((k1.density(x) - 1.0 / (PI * (x * (1.0 - x)).sqrt())).abs() < 1e-13);
        let k4 = kappa(4.0).unwrap();
        assert!((k4.density(x) - 6.0 * x * (1.0 - x)).abs() < 1e-13);
        assert!(kappa(0.0).is_err());
    }

    #[test]
    fn free_poisson_vanishes_at_one() {
        let m = free_poisson_quarter();
        assert_eq!(m.pieces()[0].eval_with(1.0, 1.0, 0.0), 0.0);
        assert!((m.moment(1, &pol()).unwrap() - 0.25).abs() < 1e-10);
    }

    #[test]
    fn bernoulli_power_edges() {
        assert!(bernoulli_power_measure(0.9).is_err());
        let m = bernoulli_power_measure(1.0).unwrap();
        assert!(m.pieces().is_empty());
        assert_eq!(m.atoms().len(), 2);
        assert!((m.atoms()[0].weight - 0.5).abs() < 1e-15);
        // λ = 2: the continuous part is the constant 1/4
        let m = bernoulli_power_measure(2.0).unwrap();
        for x in [-0.9, -0.3, 1e-9, 0.5] {
            assert!((m.density(x) - 0.25).abs() < 1e-13, "{x}");
        }
    }

    #[test]
    fn bernoulli_power_density_matches_h_lambda_form() {
        for lambda in [1.5, 3.0, 3.5] {
            let m = bernoulli_power_measure(lambda).unwrap();
            for x in [0.1, 0.45, 0.8, -0.6] {
                let want = 2f64.powf(1.0 - lambda) * f64::abs(x) * h_lambda(lambda, x * x).unwrap();
                let got = m.density(x);
                assert!((got - want).abs() < 1e-11 * want.abs().max(1.0), "λ={lambda} x={x}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn convolution_density_at_lambda_one_is_free_poisson() {
        let m = kappa_convolution_density(1.0).unwrap();
        let fp = free_poisson_quarter();
        for x in [0.05, 0.3, 0.7, 0.99] {
            assert!((m.density(x) - fp.density(x)).abs() < 1e-12 * fp.density(x));
        }
    }

    #[test]
    fn parse_identifiers() {
        let m = parse_measure("beta:gamma=1.5,beta=0.5").unwrap();
        assert_eq!(m.kind(), MeasureKind::Beta(BetaParams { gamma: 1.5, beta: 0.5 }));
        assert_eq!(parse_measure("wigner").unwrap().kind(), MeasureKind::Wigner);
        assert!(parse_measure("beta:gamma=1").is_err());
        assert!(parse_measure("cauchy").is_err());
        assert!(parse_measure("kappa:lambda=x").is_err());
    }

    #[test]
    fn custom_measure_mass_is_checked() {
        let half = DensityPiece::new(0.0, 1.0, (0.0, 0.0), Arc::new(|_, _, _| 0.5)).unwrap();
        assert!(MeasureSpec::custom("half", vec![], vec![half.clone()]).is_err());
        let atom = Atom { location: 2.0, weight: 0.5 };
        let m = MeasureSpec::custom("mixed", vec![atom], vec![half]).unwrap();
        assert_eq!(m.support(), (0.0, 2.0));
        assert!(DensityPiece::new(0.0, 1.0, (-1.0, 0.0), Arc::new(|_, _, _| 1.0)).is_err());
    }

    #[test]
    fn distance_to_support() {
        let m = bernoulli_sym();
        assert!((m.distance_to_support(ComplexValue::new(0.0, 1.0)) - 2f64.sqrt()).abs() < 1e-15);
        let w = wigner();
        assert!((w.distance_to_support(ComplexValue::new(0.3, 0.5)) - 0.5).abs() < 1e-15);
    }
}
