//! Verification reports and the identity suites that produce them.
//!
//! Every row compares two independently computed quantities (a closed form
//! against quadrature, a series against an integral, a root against its
//! defining equation) and carries its own pinned tolerance.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{principal_powf, real, ComplexValue};
use crate::error::{Error, Result};
use crate::humbert::{
    gamma0_gst_identity_d2, humbert_coeffs, humbert_functional_normalization, humbert_generating_function,
    root_2f1_d2_raw, root_select, root_via_pfq, HumbertParams, SeriesArgument,
};
use crate::jacobi::{
    kernel, kernel_coefficients, reconstruct_from, ultraspherical_poly, ExpansionTruncation,
};
use crate::measures::{
    arcsine, bernoulli_power_measure, bernoulli_sym, beta_measure, free_poisson_quarter, kappa,
    kappa_convolution_density, wigner, BetaParams, MeasureSpec,
};
use crate::quadrature::QuadraturePolicy;
use crate::special::{
    closed_id1, closed_id2, euler_2f1_oracle, gauss_2f1, pochhammer_real, transform_linear,
    transform_quadratic_0, transform_quadratic_1, SeriesPolicy,
};
use crate::stieltjes::{
    bernoulli_power_identity, free_poisson_forms_residual, free_poisson_identity, gst_beta_closed,
    gst_beta_closed_alt, gst_quadrature, kappa_reduction_identity, power_relation_residuals, prop1_closed,
    prop1_remark_residual, prop2_closed, prop2_params, prop2_square_residual, shrinkage_identity,
    stieltjes_arcsine, stieltjes_wigner, wigner_functional_residual, EvalGrid,
};

/// Outcome of one identity over one parameter set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: String,
    pub grid_size: usize,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub wall_time_ms: f64,
}

impl VerificationReport {
    /// `pass` holds iff every residual is finite and the largest is within
    /// `tolerance`.
    pub fn from_residuals(
        identity: impl Into<String>,
        params: impl Into<String>,
        residuals: &[f64],
        tolerance: f64,
        elapsed: Duration,
    ) -> Self {
        let max_residual = residuals
            .iter()
            .fold(0.0f64, |m, &r| if r.is_nan() || m.is_nan() { f64::NAN } else { m.max(r) });
        let mean_residual = if residuals.is_empty() {
            0.0
        } else {
            residuals.iter().sum::<f64>() / residuals.len() as f64
        };
        VerificationReport {
            identity: identity.into(),
            params: params.into(),
            grid_size: residuals.len(),
            max_residual,
            mean_residual,
            tolerance,
            pass: max_residual <= tolerance,
            wall_time_ms: elapsed.as_secs_f64() * 1e3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Suite {
    All,
    BetaClosed,
    Prop1,
    Prop2,
    Bernoulli,
    Shrinkage,
    FreePoisson,
    Cohl,
    Humbert,
    SpecialFunctions,
    Global,
}

impl Suite {
    /// Suites run by [`Suite::All`], in order.
    pub const MEMBERS: [Suite; 10] = [
        Suite::SpecialFunctions,
        Suite::BetaClosed,
        Suite::Prop1,
        Suite::Prop2,
        Suite::Bernoulli,
        Suite::Shrinkage,
        Suite::FreePoisson,
        Suite::Cohl,
        Suite::Humbert,
        Suite::Global,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::BetaClosed => "beta-closed",
            Suite::Prop1 => "prop1",
            Suite::Prop2 => "prop2",
            Suite::Bernoulli => "bernoulli",
            Suite::Shrinkage => "shrinkage",
            Suite::FreePoisson => "free-poisson",
            Suite::Cohl => "cohl",
            Suite::Humbert => "humbert",
            Suite::SpecialFunctions => "special-functions",
            Suite::Global => "global",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        std::iter::once(Suite::All)
            .chain(Suite::MEMBERS)
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::parameter(format!("unknown suite `{s}`")))
    }
}

#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Replaces every row's pinned tolerance when set.
    pub tolerance: Option<f64>,
    /// Grid for the closed-form vs quadrature sweeps.
    pub grid: EvalGrid,
    pub quadrature: QuadraturePolicy,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            tolerance: None,
            grid: EvalGrid::standard(),
            quadrature: QuadraturePolicy::default(),
            seed: 20_240_601,
        }
    }
}

pub fn run_suite(suite: Suite, config: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let mut rows = Rows::new(config);
    match suite {
        Suite::All => {
            for s in Suite::MEMBERS {
                run_member(s, &mut rows)?;
            }
        }
        s => run_member(s, &mut rows)?,
    }
    Ok(rows.out)
}

fn run_member(suite: Suite, rows: &mut Rows<'_>) -> Result<()> {
    match suite {
        Suite::SpecialFunctions => special_functions(rows),
        Suite::BetaClosed => beta_closed(rows),
        Suite::Prop1 => prop1(rows),
        Suite::Prop2 => prop2(rows),
        Suite::Bernoulli => bernoulli(rows),
        Suite::Shrinkage => shrinkage(rows),
        Suite::FreePoisson => free_poisson(rows),
        Suite::Cohl => cohl(rows),
        Suite::Humbert => humbert(rows),
        Suite::Global => global(rows),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

struct Rows<'a> {
    config: &'a SuiteConfig,
    out: Vec<VerificationReport>,
}

impl<'a> Rows<'a> {
    fn new(config: &'a SuiteConfig) -> Self {
        Rows { config, out: Vec::new() }
    }

    /// Evaluates `f` at every item in parallel; errors become NaN residuals
    /// so they fail the row instead of aborting the suite.
    fn push<T, F>(&mut self, identity: &str, params: String, pinned: f64, items: &[T], f: F)
    where
        T: Sync,
        F: Fn(&T) -> Result<f64> + Sync,
    {
        let start = Instant::now();
        let residuals: Vec<f64> = items.par_iter().map(|t| f(t).unwrap_or(f64::NAN)).collect();
        let tolerance = self.config.tolerance.unwrap_or(pinned);
        self.out.push(VerificationReport::from_residuals(
            identity,
            params,
            &residuals,
            tolerance,
            start.elapsed(),
        ));
    }

    fn grid(&self) -> Vec<ComplexValue> {
        self.config.grid.points().to_vec()
    }
}

fn dist(a: ComplexValue, b: ComplexValue) -> f64 {
    (a - b).norm()
}

fn cut_distance(z: ComplexValue) -> f64 {
    if z.re >= 1.0 {
        z.im.abs()
    } else {
        (z - 1.0).norm()
    }
}

/// Random `(a, b, c, z)` with `Re c > Re b > 0`, `z` at least 0.25 from the cut.
fn euler_admissible(rng: &mut ChaCha8Rng) -> [ComplexValue; 4] {
    let a = ComplexValue::new(rng.random_range(-1.5..3.0), rng.random_range(-0.5..0.5));
    let b = ComplexValue::new(rng.random_range(0.2..2.5), rng.random_range(-0.5..0.5));
    let c = b + ComplexValue::new(rng.random_range(0.2..3.0), rng.random_range(-0.5..0.5));
    loop {
        let z = ComplexValue::new(rng.random_range(-4.0..4.0), rng.random_range(-3.0..3.0));
        if cut_distance(z) >= 0.25 {
            return [a, b, c, z];
        }
    }
}

fn special_functions(rows: &mut Rows<'_>) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(rows.config.seed);
    let p = SeriesPolicy::default();
    let euler: Vec<_> = (0..200).map(|_| euler_admissible(&mut rng)).collect();
    rows.push("gauss-vs-euler", "random=200".into(), 1e-10, &euler, |&[a, b, c, z]| {
        let oracle = euler_2f1_oracle(a, b, c, z)?;
        Ok(dist(gauss_2f1(a, b, c, z, &p)?, oracle) / (1.0 + oracle.norm()))
    });
    let lin: Vec<_> = (0..100)
        .map(|_| {
            [
                real(rng.random_range(-1.0..3.0)),
                real(rng.random_range(-2.0..2.0)),
                real(rng.random_range(0.3..4.0)),
                ComplexValue::new(rng.random_range(-3.0..0.9), rng.random_range(-2.0..2.0)),
            ]
        })
        .collect();
    rows.push("lin1", "random=100".into(), 1e-11, &lin, |&[a, d, c, u]| {
        Ok(transform_linear(a, d, c, u)?.scaled())
    });
    let quad0: Vec<_> = (0..100)
        .map(|_| {
            [
                real(rng.random_range(0.3..3.0)),
                real(rng.random_range(-1.0..3.0)),
                ComplexValue::new(rng.random_range(-0.9..0.9), rng.random_range(-0.9..0.9)),
            ]
        })
        .collect();
    rows.push("quad0", "random=100".into(), 1e-11, &quad0, |&[a, b, u]| {
        Ok(transform_quadratic_0(a, b, u)?.scaled())
    });
    let quad1: Vec<_> = (0..100)
        .map(|_| {
            [
                real(rng.random_range(-1.0..3.0)),
                real(rng.random_range(0.5..4.0)),
                ComplexValue::new(rng.random_range(-3.0..0.9), rng.random_range(-2.0..2.0)),
            ]
        })
        .collect();
    rows.push("quad1", "random=100".into(), 1e-11, &quad1, |&[a, b, u]| {
        Ok(transform_quadratic_1(a, b, u)?.scaled())
    });
    let mut closed = Vec::new();
    for a in [0.6, 1.0, 1.5, 2.3, 4.0] {
        for re in [-3.0, -1.0, 0.0, 0.5, 0.9, 1.5, 3.0] {
            for im in [-1.0, 0.0, 0.5, 2.0] {
                if !(im == 0.0 && re >= 1.0) {
                    closed.push((a, ComplexValue::new(re, im)));
                }
            }
        }
    }
    rows.push("id1", "a∈{0.6,1,1.5,2.3,4}".into(), 1e-11, &closed, |&(a, u)| {
        let g = gauss_2f1(real(a - 0.5), real(a), real(2.0 * a), u, &p)?;
        Ok(dist(closed_id1(real(a), u)?, g) / (1.0 + g.norm()))
    });
    rows.push("id2", "a∈{0.6,1,1.5,2.3,4}".into(), 1e-11, &closed, |&(a, u)| {
        let g = gauss_2f1(real(a), real(a + 0.5), real(2.0 * a), u, &p)?;
        Ok(dist(closed_id2(real(a), u)?, g) / (1.0 + g.norm()))
    });
    let sym: Vec<_> = (0..100).map(|_| euler_admissible(&mut rng)).collect();
    rows.push("gauss-symmetry", "random=100".into(), 1e-13, &sym, |&[a, b, c, z]| {
        let f = gauss_2f1(a, b, c, z, &p)?;
        Ok(dist(f, gauss_2f1(b, a, c, z, &p)?) / (1.0 + f.norm()))
    });
    let conj: Vec<_> = (0..100)
        .map(|_| {
            let [_, _, _, z] = euler_admissible(&mut rng);
            [
                real(rng.random_range(-2.0..3.0)),
                real(rng.random_range(-2.0..3.0)),
                real(rng.random_range(0.2..4.0)),
                z,
            ]
        })
        .collect();
    rows.push("gauss-conjugation", "random=100".into(), 1e-13, &conj, |&[a, b, c, z]| {
        let f = gauss_2f1(a, b, c, z, &p)?;
        Ok(dist(f.conj(), gauss_2f1(a, b, c, z.conj(), &p)?) / (1.0 + f.norm()))
    });
    Ok(())
}

const LAMBDAS: [f64; 6] = [0.5, 1.0, 1.5, 2.0, 2.5, 3.5];
const BETA_PARAMS: [(f64, f64); 5] = [(0.0, 0.0), (0.5, 0.5), (-0.5, -0.5), (1.5, 0.5), (0.3, 2.1)];

fn beta_closed(rows: &mut Rows<'_>) -> Result<()> {
    let grid = rows.grid();
    for lambda in LAMBDAS {
        for (g, b) in BETA_PARAMS {
            let p = BetaParams::new(g, b)?;
            let m = beta_measure(p)?;
            let params = format!("lambda={lambda},gamma={g},beta={b}");
            let quad: Vec<_> = grid
                .par_iter()
                .map(|&z| rows_gst(lambda, &m, z).map(|q| (z, q)))
                .collect::<Result<_>>()?;
            rows.push("gst1", params.clone(), 1e-8, &quad, |&(z, q)| {
                Ok(dist(gst_beta_closed(lambda, p, z)?.value, q))
            });
            rows.push("gst2", params.clone(), 1e-8, &quad, |&(z, q)| {
                Ok(dist(gst_beta_closed_alt(lambda, p, z)?.value, q))
            });
            rows.push("gst1-vs-gst2", params, 1e-10, &grid, |&z| {
                Ok(dist(gst_beta_closed(lambda, p, z)?.value, gst_beta_closed_alt(lambda, p, z)?.value))
            });
        }
    }
    Ok(())
}

/// Ten fixed points in the upper half-plane for algebraic identities.
fn sample_points() -> Vec<ComplexValue> {
    [
        (2.0, 0.0),
        (3.0, 2.0),
        (0.0, 0.5),
        (-1.5, 0.3),
        (0.5, 1.0),
        (-3.0, 2.0),
        (1.2, 0.1),
        (2.5, -1.0),
        (-0.7, -0.4),
        (10.0, 5.0),
    ]
    .into_iter()
    .map(|(a, b)| ComplexValue::new(a, b))
    .collect()
}

fn prop1(rows: &mut Rows<'_>) -> Result<()> {
    let grid = rows.grid();
    for lambda in [0.5, 1.0, 2.0, 3.7] {
        let mu = beta_measure(BetaParams::new(lambda - 0.5, lambda - 0.5)?)?;
        let w = wigner();
        let points = grid.clone();
        let rel = power_relation_residuals(lambda, &mu, &w, &EvalGrid::new(points)?)?;
        let residuals: Vec<f64> = rel.residuals.iter().map(|r| r.residual).collect();
        rows.push("examp1", format!("lambda={lambda}"), 1e-8, &residuals, |&r| Ok(r));
    }
    for lambda in [1.5, 2.0, 3.0] {
        let m = beta_measure(BetaParams::new(lambda - 1.5, lambda - 1.5)?)?;
        rows.push("examp2", format!("lambda={lambda}"), 1e-8, &grid, |&z| {
            let closed = stieltjes_arcsine(z)? * principal_powf(stieltjes_wigner(z)?, lambda - 1.0);
            Ok(dist(rows_gst(lambda, &m, z)?, closed))
        });
    }
    for k in 0..=3u32 {
        for lambda in [0.5, 1.0, 1.5, 2.0, 2.5, 3.5, 4.0] {
            let gamma = lambda - 0.5 - k as f64;
            if gamma <= -1.0 {
                continue;
            }
            let m = beta_measure(BetaParams::new(gamma, gamma)?)?;
            rows.push("prop1", format!("k={k},lambda={lambda}"), 1e-8, &grid, |&z| {
                Ok(dist(prop1_closed(lambda, k, z)?.value, rows_gst(lambda, &m, z)?))
            });
        }
    }
    let points = sample_points();
    for lambda in [0.7, 2.0, 3.3] {
        rows.push("prop1-k0-reduction", format!("lambda={lambda}"), 1e-12, &points, |&z| {
            Ok(dist(prop1_closed(lambda, 0, z)?.value, principal_powf(stieltjes_wigner(z)?, lambda)))
        });
    }
    for lambda in [1.6, 2.0, 3.3] {
        rows.push("prop1-k1-reduction", format!("lambda={lambda}"), 1e-12, &points, |&z| {
            let examp2 = stieltjes_arcsine(z)? * principal_powf(stieltjes_wigner(z)?, lambda - 1.0);
            Ok(dist(prop1_closed(lambda, 1, z)?.value, examp2))
        });
    }
    rows.push("remark-identity", "1-G_W^2/4=G_W/G_AS".into(), 1e-12, &points, |&z| {
        Ok(prop1_remark_residual(z)?.residual)
    });
    rows.push("wigner-functional", "1+G_W^2/4=zG_W".into(), 1e-13, &points, |&z| {
        Ok(wigner_functional_residual(z)?.residual)
    });
    Ok(())
}

fn rows_gst(lambda: f64, m: &MeasureSpec, z: ComplexValue) -> Result<ComplexValue> {
    Ok(gst_quadrature(lambda, m, z)?.value)
}

fn prop2(rows: &mut Rows<'_>) -> Result<()> {
    let grid = rows.grid();
    for k in 1..=3u32 {
        let k_f = k as f64;
        for lambda in [k_f, k_f + 0.5, k_f + 2.0] {
            for swapped in [false, true] {
                let p = prop2_params(lambda, k, swapped);
                let m = beta_measure(p)?;
                let name = if swapped { "prop2-swapped" } else { "prop2" };
                rows.push(name, format!("k={k},lambda={lambda}"), 1e-8, &grid, |&z| {
                    Ok(dist(prop2_closed(lambda, k, z, swapped)?.value, rows_gst(lambda, &m, z)?))
                });
            }
        }
    }
    rows.push("prop2-square", "(1+G_W/2)^2=(z+1)G_W".into(), 1e-13, &sample_points(), |&z| {
        Ok(prop2_square_residual(z)?.residual)
    });
    Ok(())
}

/// `(2k)!(λ)_k / (k!(λ)_{2k})`.
pub fn bernoulli_power_moment(lambda: f64, k: u32) -> f64 {
    let mut fact_ratio = 1.0;
    for j in (k + 1)..=(2 * k) {
        fact_ratio *= j as f64;
    }
    fact_ratio * pochhammer_real(lambda, k as u64) / pochhammer_real(lambda, 2 * k as u64)
}

fn bernoulli(rows: &mut Rows<'_>) -> Result<()> {
    let policy = rows.config.quadrature;
    let lambdas = [1.0, 1.5, 2.0, 3.0];
    rows.push("bernoulli-power-mass", "lambda∈{1,1.5,2,3}".into(), 1e-8, &lambdas, |&l| {
        Ok((bernoulli_power_measure(l)?.total_mass(&policy)? - 1.0).abs())
    });
    for lambda in lambdas {
        let m = bernoulli_power_measure(lambda)?;
        let ks: Vec<u32> = (1..=10).collect();
        rows.push("bernoulli-power-moments", format!("lambda={lambda},k≤10"), 1e-7, &ks, |&k| {
            let want = bernoulli_power_moment(lambda, k);
            let odd = m.moment(2 * k - 1, &policy)?.abs();
            Ok(((m.moment(2 * k, &policy)? - want) / want).abs().max(odd))
        });
    }
    let grid = rows.grid();
    for lambda in [1.0, 1.5, 2.0, 3.0, 3.5] {
        rows.push("bernoulli-power-identity", format!("lambda={lambda}"), 1e-8, &grid, |&z| {
            Ok(bernoulli_power_identity(lambda, z)?.residual)
        });
    }
    rows.push("bernoulli-power-rejects", "lambda=0.9".into(), 0.0, &[0.9], |&l| {
        Ok(if bernoulli_power_measure(l).is_err() { 0.0 } else { 1.0 })
    });
    Ok(())
}

fn shrinkage(rows: &mut Rows<'_>) -> Result<()> {
    let grid = rows.grid();
    for p in [0.3, 0.5, 0.7] {
        for lambda in [1.0, 2.0, 4.0] {
            rows.push("shrinkage", format!("p={p},lambda={lambda}"), 1e-9, &grid, |&z| {
                Ok(shrinkage_identity(lambda, p, z)?.residual)
            });
        }
    }
    for lambda in [1.0, 3.0, 5.0] {
        // density ∝ (1−x²)^{λ/2−1} against G_AS^λ
        let m = beta_measure(BetaParams::new(lambda / 2.0 - 1.0, lambda / 2.0 - 1.0)?)?;
        rows.push("shrinkage-symmetric", format!("lambda={lambda}"), 1e-9, &grid, |&z| {
            Ok(dist(rows_gst(lambda, &m, z)?, principal_powf(stieltjes_arcsine(z)?, lambda)))
        });
    }
    Ok(())
}

/// Twenty upper-half-plane points for the free Poisson checks.
pub fn prop4_points() -> Vec<ComplexValue> {
    let mut out = Vec::new();
    for im in [0.5, 1.0, 1.5, 2.5] {
        for re in [-1.0, -0.25, 0.5, 1.25, 2.0] {
            out.push(ComplexValue::new(re, im));
        }
    }
    out
}

fn free_poisson(rows: &mut Rows<'_>) -> Result<()> {
    let points = prop4_points();
    let policy = rows.config.quadrature;
    for lambda in [0.5, 1.0, 2.0, 3.0] {
        let checks: Vec<_> = points
            .par_iter()
            .map(|&z| free_poisson_identity(lambda, z))
            .collect::<Result<_>>()?;
        rows.push("prop4-double", format!("lambda={lambda}"), 1e-7, &checks, |c| {
            Ok(c.double.residual)
        });
        rows.push("prop4-closed-density", format!("lambda={lambda}"), 1e-8, &checks, |c| {
            Ok(c.closed_density.residual)
        });
        rows.push("kappa-conv-mass", format!("lambda={lambda}"), 1e-9, &[lambda], |&l| {
            Ok((kappa_convolution_density(l)?.total_mass(&policy)? - 1.0).abs())
        });
    }
    for (name, m) in [("uniform", beta_measure(BetaParams::new(0.0, 0.0)?)?), ("wigner", wigner())] {
        for lambda in [1.0, 2.0] {
            rows.push("kappa-reduction", format!("mu={name},lambda={lambda}"), 1e-7, &points, |&z| {
                Ok(kappa_reduction_identity(lambda, &m, z)?.residual)
            });
        }
    }
    let fp = free_poisson_quarter();
    rows.push("free-poisson-measure", "lambda=1".into(), 1e-10, &points, |&z| {
        Ok(dist(rows_gst(1.0, &fp, z)?, crate::stieltjes::stieltjes_free_poisson(z)?))
    });
    rows.push("free-poisson-forms", "two G forms".into(), 1e-13, &sample_points(), |&z| {
        Ok(free_poisson_forms_residual(z)?.residual)
    });
    Ok(())
}

/// Points at distance at least 1 from `[−1, 1]`, off `(−∞, 1]`.
pub fn cohl_points() -> Vec<ComplexValue> {
    [(2.0, 0.0), (3.0, 0.0), (0.0, 1.0), (1.0, 1.5), (-1.5, 1.0), (0.5, -1.2), (2.0, 1.0), (-2.5, 0.5)]
        .into_iter()
        .map(|(a, b)| ComplexValue::new(a, b))
        .collect()
}

fn cohl(rows: &mut Rows<'_>) -> Result<()> {
    let xs: Vec<f64> = (0..=100).map(|i| -1.0 + 0.02 * i as f64).collect();
    let t = ExpansionTruncation::default();
    let policy = rows.config.quadrature;
    for lambda in [1.0, 2.0] {
        for (g, b) in [(0.5, 0.5), (0.3, 2.1)] {
            let p = BetaParams::new(g, b)?;
            let params = format!("lambda={lambda},gamma={g},beta={b},n_max={}", t.n_max);
            rows.push("cohl-reconstruction", params.clone(), 1e-8, &cohl_points(), |&z| {
                let coeffs = kernel_coefficients(lambda, p, z, t)?;
                Ok(xs
                    .iter()
                    .map(|&x| dist(reconstruct_from(&coeffs, p, x), kernel(lambda, z, x)))
                    .fold(0.0, f64::max))
            });
            let m = beta_measure(p)?;
            rows.push("cohl-orthogonality", params, 1e-9, &cohl_points(), |&z| {
                let coeffs = kernel_coefficients(lambda, p, z, t)?;
                let integrated = m.integrate(|x| reconstruct_from(&coeffs, p, x), &policy)?.value;
                Ok(dist(integrated, gst_beta_closed(lambda, p, z)?.value))
            });
        }
    }
    Ok(())
}

/// Fifty upper-half-plane points with `|y| ≥ 2`.
pub fn humbert_points() -> Vec<ComplexValue> {
    let mut out = Vec::new();
    for r in [2.0, 3.0, 5.0, 8.0, 13.0] {
        for j in 0..10 {
            let th = std::f64::consts::PI * (j as f64 + 0.5) / 10.0;
            out.push(ComplexValue::from_polar(r, th));
        }
    }
    out
}

fn humbert(rows: &mut Rows<'_>) -> Result<()> {
    let points = humbert_points();
    for d in 1..=4u32 {
        rows.push("trinomial-residual", format!("d={d}"), 1e-10, &points, |&y| {
            Ok(root_select(d, y)?.residual)
        });
    }
    rows.push("root-2f1-d2", "d=2".into(), 1e-10, &points, |&y| {
        Ok(dist(root_2f1_d2_raw(y)?, root_select(2, y)?.z))
    });
    for d in [2u32, 3, 4] {
        rows.push("root-pfq", format!("d={d},argument=lagrange"), 1e-9, &points[..10], |&y| {
            Ok(dist(root_via_pfq(d, y, SeriesArgument::LagrangeInversion)?, root_select(d, y)?.z))
        });
    }
    let g0: Vec<ComplexValue> = points.iter().step_by(5).copied().collect();
    for alpha in [1.0, 2.5] {
        rows.push("gamma0-d2", format!("alpha={alpha}"), 1e-8, &g0, |&y| {
            Ok(gamma0_gst_identity_d2(alpha, y)?.residual)
        });
    }
    let zs = [ComplexValue::new(0.0, 0.1), ComplexValue::new(0.05, 0.05), ComplexValue::new(-0.1, 0.08)];
    for alpha in [1.0, 2.0] {
        rows.push("humbert-normalization", format!("d=2,alpha={alpha}"), 1e-7, &zs, |&z| {
            humbert_functional_normalization(HumbertParams::new(alpha, 2)?, z)
        });
    }
    rows.push("d1-wigner", "2z(y)=G_W(y)".into(), 1e-11, &points, |&y| {
        Ok(dist(2.0 * root_select(1, y)?.z, stieltjes_wigner(y)?))
    });
    let mut ultra = Vec::new();
    for alpha in [0.5, 1.0, 2.0] {
        for x in [-0.9, 0.0, 0.4] {
            ultra.push((alpha, x));
        }
    }
    rows.push("d1-ultraspherical", "n≤10".into(), 1e-10, &ultra, |&(alpha, x)| {
        let h = humbert_coeffs(HumbertParams::new(alpha, 1)?, x, 10)?;
        let mut worst: f64 = 0.0;
        for (n, hn) in h.iter().enumerate() {
            worst = worst.max((hn - ultraspherical_poly(alpha, n as u32, x)?).abs());
        }
        Ok(worst)
    });
    let mut resub = Vec::new();
    for d in 1..=4u32 {
        for alpha in [0.5, 1.5] {
            resub.push((d, alpha));
        }
    }
    rows.push("generating-resubstitution", "|z|=0.1,N=60".into(), 1e-10, &resub, |&(d, alpha)| {
        let p = HumbertParams::new(alpha, d)?;
        let x = 0.3;
        let h = humbert_coeffs(p, x, 60)?;
        let mut worst: f64 = 0.0;
        for j in 0..8 {
            let z = ComplexValue::from_polar(0.1, std::f64::consts::PI * j as f64 / 4.0);
            let mut pw = real(1.0);
            let mut sum = real(0.0);
            for hn in &h {
                sum += pw * *hn;
                pw *= z;
            }
            worst = worst.max(dist(sum, humbert_generating_function(p, x, z)));
        }
        Ok(worst)
    });
    Ok(())
}

/// Measures used by the global invariants.
pub fn invariant_measures() -> Result<Vec<MeasureSpec>> {
    Ok(vec![
        wigner(),
        arcsine(),
        bernoulli_sym(),
        beta_measure(BetaParams::new(0.3, 2.1)?)?,
        kappa(1.5)?,
        free_poisson_quarter(),
        bernoulli_power_measure(2.0)?,
        kappa_convolution_density(1.0)?,
    ])
}

fn global(rows: &mut Rows<'_>) -> Result<()> {
    let policy = rows.config.quadrature;
    let points = prop4_points();
    for m in invariant_measures()? {
        rows.push("lambda1-reduction", m.name().to_string(), 1e-10, &points, |&z| {
            let ordinary = m.integrate(|x| 1.0 / (z - x), &policy)?.value;
            Ok(dist(rows_gst(1.0, &m, z)?, ordinary))
        });
        for lambda in [0.5, 2.5] {
            rows.push("conjugation", format!("{},lambda={lambda}", m.name()), 1e-12, &points, |&z| {
                let zc = z.conj();
                // integrate in the lower half-plane directly, without the symmetry shortcut
                let below = m.integrate(|x| principal_powf(zc - x, -lambda), &policy)?.value;
                Ok(dist(below, rows_gst(lambda, &m, z)?.conj()))
            });
            rows.push("decay", format!("{},lambda={lambda}", m.name()), 1e-3, &[1e4], |&r| {
                let z = ComplexValue::new(0.0, r);
                Ok((principal_powf(z, lambda) * rows_gst(lambda, &m, z)? - 1.0).norm())
            });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rows.config.seed ^ 0x5eed);
    let uhp: Vec<ComplexValue> = (0..200)
        .map(|_| ComplexValue::new(rng.random_range(-4.0..4.0), rng.random_range(0.05..4.0)))
        .collect();
    for (name, g) in [
        ("wigner", stieltjes_wigner as fn(ComplexValue) -> Result<ComplexValue>),
        ("bernoulli", crate::stieltjes::stieltjes_bernoulli),
        ("free-poisson", crate::stieltjes::stieltjes_free_poisson),
    ] {
        rows.push("nevanlinna", name.into(), 0.0, &uhp, |&z| {
            let v = principal_powf(g(z)?, 0.5) / principal_powf(z, 0.5);
            Ok(if v.im < 0.0 { 0.0 } else { 1.0 })
        });
    }
    Ok(())
}
