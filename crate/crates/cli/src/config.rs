//! Run configuration: defaults, then a `key = value` file, then flags.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use stieltjes_core::quadrature::QuadraturePolicy;
use stieltjes_core::stieltjes::EvalGrid;
use stieltjes_core::verify::SuiteConfig;

/// Errors the user can fix by changing the command line or config file.
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

pub fn usage(msg: impl Into<String>) -> anyhow::Error {
    UsageError(msg.into()).into()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("expected csv or json, got `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Overrides every pinned tolerance when set.
    pub tolerance: Option<f64>,
    pub re_min: f64,
    pub re_max: f64,
    pub re_step: f64,
    pub ims: Vec<f64>,
    pub budget: usize,
    pub output: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let suite = SuiteConfig::default();
        RunConfig {
            tolerance: None,
            re_min: -3.0,
            re_max: 3.0,
            re_step: 0.25,
            ims: vec![0.5, 1.0, 2.0],
            budget: suite.quadrature.abscissae_budget,
            output: None,
            format: Format::Csv,
            seed: suite.seed,
        }
    }
}

/// Values given on the command line; `None` leaves the file or default in place.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct Overrides {
    /// key = value configuration file
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// replace the pinned tolerances
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub re_min: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub re_max: Option<f64>,
    #[arg(long, global = true)]
    pub re_step: Option<f64>,
    /// comma-separated imaginary parts; empty for an empty grid
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub im: Option<String>,
    /// quadrature abscissae budget
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

pub fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
        .collect()
}

fn field<T: FromStr>(value: &str) -> Result<T, String>
where
    T::Err: fmt::Display,
{
    value.parse::<T>().map_err(|e| format!("`{value}`: {e}"))
}

impl RunConfig {
    pub fn resolve(o: &Overrides) -> anyhow::Result<Self> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &o.config {
            cfg.apply_file(path)?;
        }
        if let Some(t) = o.tolerance {
            cfg.tolerance = Some(t);
        }
        macro_rules! take {
            ($($f:ident),*) => {$(if let Some(v) = o.$f { cfg.$f = v; })*};
        }
        take!(re_min, re_max, re_step, budget, format, seed);
        if let Some(ims) = &o.im {
            cfg.ims = parse_list(ims).map_err(|e| usage(format!("--im {e}")))?;
        }
        if let Some(out) = &o.output {
            cfg.output = Some(out.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn apply_file(&mut self, path: &Path) -> anyhow::Result<()> {
        let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        self.apply_str(&text)
            .map_err(|e| usage(format!("{}: {e}", path.display())))
    }

    /// Parses `key = value` lines; `#` starts a comment.
    pub fn apply_str(&mut self, text: &str) -> Result<(), String> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let at = |key: &str, msg: String| format!("line {}, field `{key}`: {msg}", i + 1);
            let (key, value) = line
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| format!("line {}: expected `key = value`", i + 1))?;
            let r = match key {
                "tolerance" => field(value).map(|v| self.tolerance = Some(v)),
                "re_min" => field(value).map(|v| self.re_min = v),
                "re_max" => field(value).map(|v| self.re_max = v),
                "re_step" => field(value).map(|v| self.re_step = v),
                "im" => parse_list(value).map(|v| self.ims = v),
                "budget" => field(value).map(|v| self.budget = v),
                "output" => {
                    self.output = Some(PathBuf::from(value));
                    Ok(())
                }
                "format" => field(value).map(|v| self.format = v),
                "seed" => field(value).map(|v| self.seed = v),
                _ => Err("unknown key".to_string()),
            };
            r.map_err(|e| at(key, e))?;
        }
        Ok(())
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if let Some(t) = self.tolerance {
            if !(t > 0.0) {
                return Err(usage(format!("tolerance must be positive, got {t}")));
            }
        }
        self.quadrature()?;
        if !self.ims.is_empty() {
            self.grid()?;
        }
        Ok(())
    }

    pub fn quadrature(&self) -> anyhow::Result<QuadraturePolicy> {
        let d = QuadraturePolicy::default();
        QuadraturePolicy::new(self.budget, d.levels, d.rel_tol).map_err(|e| usage(e.to_string()))
    }

    /// The rectangle `[re_min, re_max] × ims`; empty when `ims` is.
    pub fn grid(&self) -> anyhow::Result<EvalGrid> {
        if self.ims.is_empty() {
            return Ok(EvalGrid::new(Vec::new())?);
        }
        EvalGrid::rectangle(self.re_min, self.re_max, self.re_step, &self.ims).map_err(|e| usage(e.to_string()))
    }

    pub fn suite_config(&self) -> anyhow::Result<SuiteConfig> {
        Ok(SuiteConfig {
            tolerance: self.tolerance,
            grid: self.grid()?,
            quadrature: self.quadrature()?,
            seed: self.seed,
        })
    }
}
