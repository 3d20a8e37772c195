use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "geomedian", version, about = "Geometric median of a weighted point set on a constant-curvature space")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the subgradient solver.
    Solve(SolveArgs),
    /// Validate an instance and report sigma, the beta floor and condition *.
    Check(CheckArgs),
    /// Compute a reference median with an independent oracle.
    Oracle(OracleArgs),
    /// Check a solve trace against the a-priori error and rate bounds.
    Bounds(BoundsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum ScheduleName {
    /// t_k = beta/(k+1)
    BetaHarmonic,
    /// t_k = beta * a_k with a_k = (k+1)^-p
    BetaAk,
    /// t_k = r_mult * r_x/(k+1)
    RxHarmonic,
    /// t_k = t (does not converge)
    Const,
    /// t_k = r/(k+1), no floor on r
    RHarmonic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleName {
    Grid,
    Weiszfeld,
    Collinear,
}

/// `heuristic`, `oracle`, or a positive number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TauChoice {
    Heuristic,
    Oracle,
    Value(f64),
}

impl FromStr for TauChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "heuristic" => Ok(TauChoice::Heuristic),
            "oracle" => Ok(TauChoice::Oracle),
            v => match v.parse::<f64>() {
                Ok(t) if t.is_finite() && t > 0.0 => Ok(TauChoice::Value(t)),
                _ => Err(format!("expected `heuristic`, `oracle` or a positive number, got `{v}`")),
            },
        }
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Result document (JSON).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Full iterate trace (JSON lines).
    #[arg(long, value_name = "FILE")]
    pub trace: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "beta_harmonic")]
    pub schedule: ScheduleName,
    /// Step scale for the beta schedules; defaults to the certified floor.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Exponent p of a_k = (k+1)^-p for beta_ak.
    #[arg(long, default_value_t = 1.0)]
    pub ak_power: f64,
    /// Multiplier of r_x for rx_harmonic.
    #[arg(long, default_value_t = 1.0)]
    pub r_mult: f64,
    /// Numerator of r_harmonic.
    #[arg(long)]
    pub r: Option<f64>,
    /// Step of the const schedule.
    #[arg(long)]
    pub step: Option<f64>,
    #[arg(long, default_value_t = geomedian::solver::DEFAULT_STOP_TOL)]
    pub stop_tol: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_iters: usize,
    #[arg(long, default_value_t = geomedian::objective::DEFAULT_ATOM_TOL)]
    pub atom_tol: f64,
    /// Random probe points for the fundamental-inequality diagnostic.
    #[arg(long, default_value_t = 0)]
    pub probes: usize,
    /// Seed of the probe points.
    #[arg(long, env = "GEOMEDIAN_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Print the result document on stdout instead of a summary.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Also estimate the tube constants and tau.
    #[arg(long)]
    pub tau: Option<TauChoice>,
    /// Tube-search resolution.
    #[arg(long, default_value_t = 100)]
    pub resolution: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "grid")]
    pub oracle: OracleName,
    #[arg(long, default_value_t = geomedian::oracles::DEFAULT_RESOLUTION)]
    pub resolution: usize,
    #[arg(long, default_value_t = geomedian::oracles::DEFAULT_REFINE_ROUNDS)]
    pub refine_rounds: usize,
    /// Weiszfeld iteration cap.
    #[arg(long, default_value_t = 1_000_000)]
    pub max_iters: usize,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
    /// Trace written by `solve --trace`.
    #[arg(long, value_name = "FILE")]
    pub trace: PathBuf,
    /// Oracle result written by `oracle --out`.
    #[arg(long, value_name = "FILE")]
    pub reference: Option<PathBuf>,
    #[arg(long, default_value = "oracle")]
    pub tau: TauChoice,
    /// Tube-search resolution.
    #[arg(long, default_value_t = 100)]
    pub resolution: usize,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
}
