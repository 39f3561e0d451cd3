use rayon::prelude::*;
use serde::Serialize;
use stieltjes_core::complex::ComplexValue;
use stieltjes_core::humbert::{
    gamma0_gst_identity_d2, gamma0_integral, root_2f1_d2_raw, root_select, root_via_pfq, HumbertParams,
    IntegralForm, SeriesArgument, ROOT_TOLERANCE, SECTOR_TOLERANCE,
};
use stieltjes_core::jacobi::{kernel_coefficients, ExpansionTruncation};
use stieltjes_core::measures::{parse_measure, BetaParams};
use stieltjes_core::stieltjes::{gst_closed, gst_quadrature_with, Method};
use stieltjes_core::verify::{humbert_points, run_suite, Suite, VerificationReport};

use crate::config::{usage, RunConfig};
use crate::output::{emit, num, Row};

pub struct ReportRow(pub VerificationReport);

impl Serialize for ReportRow {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl Row for ReportRow {
    const HEADER: &'static [&'static str] = &[
        "identity",
        "params",
        "grid_size",
        "max_residual",
        "mean_residual",
        "tolerance",
        "pass",
        "wall_time_ms",
    ];

    fn cells(&self) -> Vec<String> {
        let r = &self.0;
        vec![
            r.identity.clone(),
            r.params.clone(),
            r.grid_size.to_string(),
            num(r.max_residual),
            num(r.mean_residual),
            num(r.tolerance),
            r.pass.to_string(),
            format!("{:.3}", r.wall_time_ms),
        ]
    }
}

/// Runs a suite; `Ok(false)` when some row fails.
pub fn verify(cfg: &RunConfig, suite: Suite) -> anyhow::Result<bool> {
    let rows = run_suite(suite, &cfg.suite_config()?)?;
    let failing: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
    for r in &failing {
        eprintln!("FAIL {} [{}]: max residual {:e} > {:e}", r.identity, r.params, r.max_residual, r.tolerance);
    }
    eprintln!("{suite}: {} rows, {} failing", rows.len(), failing.len());
    let pass = failing.is_empty();
    emit(cfg, &rows.into_iter().map(ReportRow).collect::<Vec<_>>())?;
    Ok(pass)
}

#[derive(Debug, Clone, Serialize)]
pub struct EvalRow {
    pub z_re: f64,
    pub z_im: f64,
    pub method: &'static str,
    pub value_re: f64,
    pub value_im: f64,
    pub err: f64,
    pub status: String,
}

impl Row for EvalRow {
    const HEADER: &'static [&'static str] = &["z_re", "z_im", "method", "value_re", "value_im", "err", "status"];

    fn cells(&self) -> Vec<String> {
        vec![
            num(self.z_re),
            num(self.z_im),
            self.method.to_string(),
            num(self.value_re),
            num(self.value_im),
            num(self.err),
            self.status.clone(),
        ]
    }
}

impl EvalRow {
    fn new(z: ComplexValue, method: Method, r: stieltjes_core::Result<stieltjes_core::GstResult>) -> Self {
        let (value, err, status) = match r {
            Ok(g) => (g.value, g.err_estimate, "ok".to_string()),
            Err(e) => (ComplexValue::new(f64::NAN, f64::NAN), f64::NAN, e.to_string()),
        };
        EvalRow {
            z_re: z.re,
            z_im: z.im,
            method: method.as_str(),
            value_re: value.re,
            value_im: value.im,
            err,
            status,
        }
    }
}

/// Closed form (when one exists) and quadrature at each point. Failures are
/// reported in the `status` column.
pub fn eval(cfg: &RunConfig, measure: &str, lambda: f64, points: &[ComplexValue]) -> anyhow::Result<Vec<EvalRow>> {
    let m = parse_measure(measure).map_err(|e| usage(e.to_string()))?;
    if !(lambda > 0.0) {
        return Err(usage(format!("lambda must be positive, got {lambda}")));
    }
    let policy = cfg.quadrature()?;
    let points: Vec<ComplexValue> = if points.is_empty() {
        cfg.grid()?.points().to_vec()
    } else {
        points.to_vec()
    };
    let rows: Vec<Vec<EvalRow>> = points
        .par_iter()
        .map(|&z| {
            let mut out = Vec::new();
            if let Some(closed) = gst_closed(lambda, &m, z) {
                out.push(EvalRow::new(z, Method::ClosedForm, closed));
            }
            out.push(EvalRow::new(z, Method::Quadrature, gst_quadrature_with(lambda, &m, z, &policy)));
            out
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct CoeffRow {
    pub n: u32,
    pub coeff_re: f64,
    pub coeff_im: f64,
}

impl Row for CoeffRow {
    const HEADER: &'static [&'static str] = &["n", "coeff_re", "coeff_im"];

    fn cells(&self) -> Vec<String> {
        vec![self.n.to_string(), num(self.coeff_re), num(self.coeff_im)]
    }
}

pub fn expand(lambda: f64, gamma: f64, beta: f64, z: ComplexValue, n_max: u32) -> anyhow::Result<Vec<CoeffRow>> {
    let p = BetaParams::new(gamma, beta).map_err(|e| usage(e.to_string()))?;
    let coeffs = kernel_coefficients(lambda, p, z, ExpansionTruncation { n_max })?;
    Ok(coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| CoeffRow {
            n: n as u32,
            coeff_re: c.re,
            coeff_im: c.im,
        })
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct HumbertRow {
    pub y_re: f64,
    pub y_im: f64,
    pub z_re: f64,
    pub z_im: f64,
    pub trinomial_residual: f64,
    /// Lagrange-inversion series against the selected root.
    pub lagrange_gap: f64,
    /// Series with the argument and parameters as printed.
    pub printed_gap: f64,
    /// `d = 2` only: ₂F₁ root formula against the selected root.
    pub root_2f1_gap: f64,
    /// `d = 2` only: Euler-integral side against `[3z]^α`.
    pub gamma0_residual: f64,
    /// `d = 2` only: the printed Γ₀ integral against `3z`.
    pub gamma0_printed_gap: f64,
}

impl Row for HumbertRow {
    const HEADER: &'static [&'static str] = &[
        "y_re",
        "y_im",
        "z_re",
        "z_im",
        "trinomial_residual",
        "lagrange_gap",
        "printed_gap",
        "root_2f1_gap",
        "gamma0_residual",
        "gamma0_printed_gap",
    ];

    fn cells(&self) -> Vec<String> {
        [
            self.y_re,
            self.y_im,
            self.z_re,
            self.z_im,
            self.trinomial_residual,
            self.lagrange_gap,
            self.printed_gap,
            self.root_2f1_gap,
            self.gamma0_residual,
            self.gamma0_printed_gap,
        ]
        .into_iter()
        .map(num)
        .collect()
    }
}

/// Parses `RE_MIN:RE_MAX:STEP:IM[,IM…]`.
pub fn parse_y_grid(s: &str) -> anyhow::Result<Vec<ComplexValue>> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || usage(format!("--y-grid expects RE_MIN:RE_MAX:STEP:IM[,IM...], got `{s}`"));
    if parts.len() != 4 {
        return Err(bad());
    }
    let f = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
    let ims = crate::config::parse_list(parts[3]).map_err(|_| bad())?;
    let (lo, hi, step) = (f(parts[0])?, f(parts[1])?, f(parts[2])?);
    if !(step > 0.0) || !(hi >= lo) {
        return Err(bad());
    }
    let n = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok(ims
        .iter()
        .flat_map(|&im| (0..n).map(move |i| ComplexValue::new(lo + i as f64 * step, im)))
        .collect())
}

pub struct HumbertSummary {
    pub rows: Vec<HumbertRow>,
    pub pass: bool,
    pub lines: Vec<String>,
}

fn dist(a: stieltjes_core::Result<ComplexValue>, b: ComplexValue) -> f64 {
    a.map(|a| (a - b).norm()).unwrap_or(f64::NAN)
}

fn max_finite(xs: impl Iterator<Item = f64>) -> (f64, usize) {
    xs.filter(|x| x.is_finite()).fold((0.0, 0), |(m, n), x| (m.max(x), n + 1))
}

pub fn humbert(d: u32, alpha: f64, ys: Option<Vec<ComplexValue>>) -> anyhow::Result<HumbertSummary> {
    let p = HumbertParams::new(alpha, d).map_err(|e| usage(e.to_string()))?;
    let ys = ys.unwrap_or_else(humbert_points);
    let policy = stieltjes_core::quadrature::QuadraturePolicy::default();
    let rows: Vec<HumbertRow> = ys
        .par_iter()
        .map(|&y| {
            let nan = f64::NAN;
            let root = root_select(d, y);
            let (z, residual) = match &root {
                Ok(r) => (r.z, r.residual),
                Err(_) => (ComplexValue::new(nan, nan), nan),
            };
            let d2 = d == 2 && root.is_ok();
            let in_disk = (4.0 * y * y * y).norm() > 1.0;
            HumbertRow {
                y_re: y.re,
                y_im: y.im,
                z_re: z.re,
                z_im: z.im,
                trinomial_residual: residual,
                lagrange_gap: dist(root_via_pfq(d, y, SeriesArgument::LagrangeInversion), z),
                printed_gap: dist(root_via_pfq(d, y, SeriesArgument::AsPrinted), z),
                root_2f1_gap: if d2 { dist(root_2f1_d2_raw(y), z) } else { nan },
                gamma0_residual: if d2 && in_disk {
                    gamma0_gst_identity_d2(p.alpha, y).map(|c| c.residual).unwrap_or(nan)
                } else {
                    nan
                },
                gamma0_printed_gap: if d2 && in_disk {
                    dist(gamma0_integral(y, IntegralForm::AsPrinted, &policy), 3.0 * z)
                } else {
                    nan
                },
            }
        })
        .collect();
    let ambiguous = rows.iter().filter(|r| r.trinomial_residual.is_nan()).count();
    let roots_ok = rows.iter().all(|r| r.trinomial_residual.is_nan() || r.trinomial_residual <= ROOT_TOLERANCE);
    let (lagrange, n_lagrange) = max_finite(rows.iter().map(|r| r.lagrange_gap));
    let (printed, n_printed) = max_finite(rows.iter().map(|r| r.printed_gap));
    let mut lines = vec![
        format!(
            "d={d} alpha={alpha}: {} points, trinomial residual max {:.3e}",
            rows.len(),
            max_finite(rows.iter().map(|r| r.trinomial_residual)).0
        ),
        format!("series as derived (Lagrange inversion): max gap {lagrange:.3e} over {n_lagrange} points"),
        format!("series as printed: max gap {printed:.3e} over {n_printed} points"),
    ];
    if ambiguous > 0 {
        lines.push(format!("{ambiguous} points skipped: root selection ambiguous near a branch point"));
    }
    let mut pass = roots_ok && lagrange <= 1e-9;
    if d == 2 {
        let defined: Vec<&HumbertRow> = rows.iter().filter(|r| r.root_2f1_gap.is_finite()).collect();
        let inside = defined.iter().filter(|r| r.root_2f1_gap <= SECTOR_TOLERANCE).count();
        lines.push(format!(
            "2F1 root sector map: {inside}/{} points agree within {SECTOR_TOLERANCE:e}",
            defined.len()
        ));
        for r in defined.iter().filter(|r| r.root_2f1_gap > SECTOR_TOLERANCE) {
            lines.push(format!("  outside sector: y = {}{:+}i, gap {:.3e}", r.y_re, r.y_im, r.root_2f1_gap));
        }
        let (g0, n_g0) = max_finite(rows.iter().map(|r| r.gamma0_residual));
        let (g0p, _) = max_finite(rows.iter().map(|r| r.gamma0_printed_gap));
        lines.push(format!("Gamma0 identity (Euler form): max residual {g0:.3e} over {n_g0} points"));
        lines.push(format!("Gamma0 integral as printed: max gap from 3z {g0p:.3e}"));
        pass &= g0 <= 1e-8;
    }
    Ok(HumbertSummary { rows, pass, lines })
}
