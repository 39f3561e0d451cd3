//! `stieltjes-lab`: verify identities, evaluate transforms and emit tables.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;
mod output;
mod table;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use stieltjes_core::complex::ComplexValue;
use stieltjes_core::jacobi::ExpansionTruncation;
use stieltjes_core::verify::Suite;

use config::{usage, Overrides, RunConfig, UsageError};
use output::emit;

#[derive(Parser)]
#[command(name = "stieltjes-lab", version, about = "Generalized Stieltjes transform workbench")]
struct Cli {
    #[command(flatten)]
    overrides: Overrides,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an identity suite; exit 1 if any row fails
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
    },
    /// Evaluate G_{λ,μ}(z) by closed form (when known) and quadrature
    Eval {
        /// e.g. wigner, beta:gamma=1.5,beta=1.5, kappa:lambda=2
        #[arg(long)]
        measure: String,
        #[arg(long)]
        lambda: f64,
        /// points `a+bi`; the configured grid when absent
        #[arg(long = "z", allow_hyphen_values = true)]
        points: Vec<ComplexValue>,
    },
    /// Sweep one identity over the grid
    Table(table::TableArgs),
    /// Coefficients of (z−x)^{−λ} in the Jacobi basis
    Expand {
        #[arg(long)]
        lambda: f64,
        #[arg(long, allow_hyphen_values = true)]
        gamma: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
        #[arg(long, allow_hyphen_values = true)]
        z: ComplexValue,
        #[arg(long, default_value_t = ExpansionTruncation::default().n_max)]
        n_max: u32,
    },
    /// Trinomial roots, root series and the Γ₀ identity over a y-grid
    Humbert {
        #[arg(long, default_value_t = 2)]
        d: u32,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        alpha: f64,
        /// RE_MIN:RE_MAX:STEP:IM[,IM...]; fifty points with |y| ≥ 2 when absent
        #[arg(long, allow_hyphen_values = true)]
        y_grid: Option<String>,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse::<Suite>().map_err(|e| e.to_string())
}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(raw) = std::env::var("STIELTJES_LAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| usage(format!("STIELTJES_LAB_THREADS must be a positive integer, got `{raw}`")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    configure_threads()?;
    let cfg = RunConfig::resolve(&cli.overrides)?;
    match cli.command {
        Command::Verify { suite } => commands::verify(&cfg, suite),
        Command::Eval { measure, lambda, points } => {
            let rows = commands::eval(&cfg, &measure, lambda, &points)?;
            emit(&cfg, &rows)?;
            Ok(true)
        }
        Command::Table(args) => {
            let (rows, pass) = table::run(&cfg, args)?;
            emit(&cfg, &rows)?;
            Ok(pass)
        }
        Command::Expand { lambda, gamma, beta, z, n_max } => {
            emit(&cfg, &commands::expand(lambda, gamma, beta, z, n_max)?)?;
            Ok(true)
        }
        Command::Humbert { d, alpha, y_grid } => {
            let ys = y_grid.as_deref().map(commands::parse_y_grid).transpose()?;
            let summary = commands::humbert(d, alpha, ys)?;
            for line in &summary.lines {
                eprintln!("{line}");
            }
            emit(&cfg, &summary.rows)?;
            Ok(summary.pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
