//! Grid sweeps of one identity: both sides and the residual at each point.

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;
use stieltjes_core::complex::{principal_powf, ComplexValue};
use stieltjes_core::humbert::{gamma0_gst_identity_d2, root_2f1_d2_raw, root_select};
use stieltjes_core::measures::{beta_measure, parse_measure, BetaParams, MeasureSpec};
use stieltjes_core::quadrature::QuadraturePolicy;
use stieltjes_core::stieltjes::{
    bernoulli_power_identity, free_poisson_identity, gst_beta_closed, gst_beta_closed_alt, gst_quadrature_with,
    kappa_reduction_identity, prop1_closed, prop2_closed, prop2_params, shrinkage_identity, stieltjes_arcsine,
    stieltjes_wigner,
};

use crate::config::{usage, RunConfig};
use crate::output::{num, Row};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Identity {
    /// `(z−1)` closed form against quadrature
    Gst1,
    /// `(z+1)` closed form against quadrature
    Gst2,
    /// G for the Beta law with γ = β = λ−1/2 against G_W^λ
    Examp1,
    /// G for γ = β = λ−3/2 against G_AS·G_W^{λ−1}
    Examp2,
    Prop1,
    Prop2,
    BernoulliPower,
    Shrinkage,
    /// κ_λ⋆κ_{λ+1} by double quadrature against the closed form
    FreePoisson,
    KappaReduction,
    /// d = 2 hypergeometric root against the companion-matrix root, over y
    HumbertSector,
    /// d = 2 Γ₀ identity over y
    Gamma0,
}

impl Identity {
    fn pinned(self) -> f64 {
        match self {
            Identity::Shrinkage => 1e-9,
            Identity::FreePoisson | Identity::KappaReduction => 1e-7,
            Identity::HumbertSector => 1e-10,
            _ => 1e-8,
        }
    }
}

#[derive(Debug, Clone, clap::Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub identity: Identity,
    #[arg(long, default_value_t = 1.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    pub beta: f64,
    /// exchange the roles of γ and β in prop2
    #[arg(long)]
    pub swapped: bool,
    /// Humbert α
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    /// measure for kappa-reduction
    #[arg(long, default_value = "wigner")]
    pub measure: String,
    /// explicit points (`a+bi`), instead of the configured grid
    #[arg(long = "z", allow_hyphen_values = true)]
    pub points: Vec<ComplexValue>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub z_re: f64,
    pub z_im: f64,
    pub lhs_re: f64,
    pub lhs_im: f64,
    pub rhs_re: f64,
    pub rhs_im: f64,
    pub residual: f64,
}

impl Row for TableRow {
    const HEADER: &'static [&'static str] = &["z_re", "z_im", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual"];

    fn cells(&self) -> Vec<String> {
        [self.z_re, self.z_im, self.lhs_re, self.lhs_im, self.rhs_re, self.rhs_im, self.residual]
            .into_iter()
            .map(num)
            .collect()
    }
}

impl TableRow {
    fn new(z: ComplexValue, sides: Option<(ComplexValue, ComplexValue)>) -> Self {
        let nan = ComplexValue::new(f64::NAN, f64::NAN);
        let (lhs, rhs) = sides.unwrap_or((nan, nan));
        TableRow {
            z_re: z.re,
            z_im: z.im,
            lhs_re: lhs.re,
            lhs_im: lhs.im,
            rhs_re: rhs.re,
            rhs_im: rhs.im,
            residual: (lhs - rhs).norm(),
        }
    }
}

type Sides = stieltjes_core::Result<(ComplexValue, ComplexValue)>;

struct Ctx {
    args: TableArgs,
    policy: QuadraturePolicy,
    beta_law: Option<MeasureSpec>,
    measure: Option<MeasureSpec>,
}

impl Ctx {
    fn quad(&self, lambda: f64, m: &MeasureSpec, z: ComplexValue) -> stieltjes_core::Result<ComplexValue> {
        Ok(gst_quadrature_with(lambda, m, z, &self.policy)?.value)
    }

    fn law(&self) -> &MeasureSpec {
        self.beta_law.as_ref().expect("beta law built for this identity")
    }

    fn sides(&self, z: ComplexValue) -> Sides {
        let a = &self.args;
        let l = a.lambda;
        match a.identity {
            Identity::Gst1 => {
                let p = BetaParams::new(a.gamma, a.beta)?;
                Ok((gst_beta_closed(l, p, z)?.value, self.quad(l, self.law(), z)?))
            }
            Identity::Gst2 => {
                let p = BetaParams::new(a.gamma, a.beta)?;
                Ok((gst_beta_closed_alt(l, p, z)?.value, self.quad(l, self.law(), z)?))
            }
            Identity::Examp1 => Ok((self.quad(l, self.law(), z)?, principal_powf(stieltjes_wigner(z)?, l))),
            Identity::Examp2 => Ok((
                self.quad(l, self.law(), z)?,
                stieltjes_arcsine(z)? * principal_powf(stieltjes_wigner(z)?, l - 1.0),
            )),
            Identity::Prop1 => Ok((prop1_closed(l, a.k, z)?.value, self.quad(l, self.law(), z)?)),
            Identity::Prop2 => Ok((prop2_closed(l, a.k, z, a.swapped)?.value, self.quad(l, self.law(), z)?)),
            Identity::BernoulliPower => {
                let r = bernoulli_power_identity(l, z)?;
                Ok((r.lhs, r.rhs))
            }
            Identity::Shrinkage => {
                let r = shrinkage_identity(l, a.p, z)?;
                Ok((r.lhs, r.rhs))
            }
            Identity::FreePoisson => {
                let r = free_poisson_identity(l, z)?;
                Ok((r.double.lhs, r.double.rhs))
            }
            Identity::KappaReduction => {
                let m = self.measure.as_ref().expect("measure parsed");
                let r = kappa_reduction_identity(l, m, z)?;
                Ok((r.lhs, r.rhs))
            }
            Identity::HumbertSector => Ok((root_2f1_d2_raw(z)?, root_select(2, z)?.z)),
            Identity::Gamma0 => {
                let r = gamma0_gst_identity_d2(a.alpha, z)?;
                Ok((r.integral_side, r.root_side))
            }
        }
    }
}

/// Returns the rows and whether every residual is within tolerance.
pub fn run(cfg: &RunConfig, args: TableArgs) -> anyhow::Result<(Vec<TableRow>, bool)> {
    let points: Vec<ComplexValue> = if args.points.is_empty() {
        cfg.grid()?.points().to_vec()
    } else {
        args.points.clone()
    };
    let l = args.lambda;
    let beta = |g: f64, b: f64| -> anyhow::Result<Option<MeasureSpec>> {
        Ok(Some(beta_measure(BetaParams::new(g, b).map_err(|e| usage(e.to_string()))?)?))
    };
    let beta_law = match args.identity {
        Identity::Gst1 | Identity::Gst2 => beta(args.gamma, args.beta)?,
        Identity::Examp1 => beta(l - 0.5, l - 0.5)?,
        Identity::Examp2 => beta(l - 1.5, l - 1.5)?,
        Identity::Prop1 => {
            let g = l - 0.5 - args.k as f64;
            beta(g, g)?
        }
        Identity::Prop2 => {
            let p = prop2_params(l, args.k, args.swapped);
            beta(p.gamma, p.beta)?
        }
        _ => None,
    };
    let measure = match args.identity {
        Identity::KappaReduction => Some(parse_measure(&args.measure).map_err(|e| usage(e.to_string()))?),
        _ => None,
    };
    let tolerance = cfg.tolerance.unwrap_or(args.identity.pinned());
    let ctx = Ctx {
        args,
        policy: cfg.quadrature()?,
        beta_law,
        measure,
    };
    // the ₂F₁ root series only exists for |4y³| > 1
    let points: Vec<ComplexValue> = match ctx.args.identity {
        Identity::HumbertSector | Identity::Gamma0 => {
            points.into_iter().filter(|y| (4.0 * y * y * y).norm() > 1.0).collect()
        }
        _ => points,
    };
    let rows: Vec<TableRow> = points.par_iter().map(|&z| TableRow::new(z, ctx.sides(z).ok())).collect();
    let pass = rows.iter().all(|r| r.residual <= tolerance);
    Ok((rows, pass))
}
