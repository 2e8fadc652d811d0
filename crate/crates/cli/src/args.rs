use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use shockad::harness::{parse_config_text, CaseConfig, Problem};
use shockad::{Error, Result};

#[derive(Debug, Parser)]
#[command(name = "shockad", version, about = "Shock-aware tangent sensitivities for 1D conservation laws")]
pub struct Cli {
    /// Worker threads for independent simulations.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Burgers ramp with a tracked shock.
    Burgers(RunArgs),
    /// Moving Euler shock with a tracked shock.
    Euler(RunArgs),
    /// Error over the epsilon range, one simulation per mode.
    Sweep(SweepArgs),
    /// Error at a fixed epsilon over successive grids.
    Gridconv(GridArgs),
    /// Self-checks of the analytic references.
    ValidateOracles,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ModeArg {
    None,
    Blackbox,
    Shock,
}

impl ModeArg {
    fn key(self) -> &'static str {
        match self {
            ModeArg::None => "none",
            ModeArg::Blackbox => "blackbox",
            ModeArg::Shock => "shock",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ProblemArg {
    Burgers,
    Euler,
}

/// Case settings. Flags override the config file.
#[derive(Debug, Args)]
pub struct CaseArgs {
    /// Flat `key=value` file with case settings.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Row of the Burgers grid table (1 finest, 9 coarsest).
    #[arg(long)]
    pub grid_no: Option<usize>,
    #[arg(long)]
    pub dx: Option<f64>,
    /// Fixed time step (default: the grid table step, or CFL-based).
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub cfl: Option<f64>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    #[arg(long)]
    pub c_coeff: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub t_final: Option<f64>,
    /// Scalar flux: godunov, lxf or rusanov.
    #[arg(long)]
    pub scheme: Option<String>,
    /// Euler only: use the full [0, 210] domain and t = 1000.
    #[arg(long)]
    pub long_domain: bool,
    /// Any other config key, as `key=value`; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
}

impl CaseArgs {
    fn pairs(&self) -> Result<Vec<(String, String)>> {
        let mut pairs = match &self.config {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.clone(), source })?;
                parse_config_text(&text)?
            }
            None => Vec::new(),
        };
        let mut push = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                pairs.push((k.to_string(), v));
            }
        };
        push("long_domain", self.long_domain.then(|| "true".to_string()));
        push("grid_no", self.grid_no.map(|v| v.to_string()));
        push("dx", self.dx.map(|v| v.to_string()));
        push("dt", self.dt.map(|v| v.to_string()));
        push("cfl", self.cfl.map(|v| v.to_string()));
        push("mode", self.mode.map(|m| m.key().to_string()));
        push("c_coeff", self.c_coeff.map(|v| v.to_string()));
        push("alpha", self.alpha.map(|v| v.to_string()));
        push("t_final", self.t_final.map(|v| v.to_string()));
        push("scheme", self.scheme.clone());
        for kv in &self.set {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::config(format!("--set expects key=value, got '{kv}'")))?;
            pairs.push((k.trim().to_string(), v.trim().to_string()));
        }
        Ok(pairs)
    }

    /// Builds the case; `problem` is the subcommand's fixed problem, if any.
    pub fn resolve(&self, problem: Option<Problem>) -> Result<CaseConfig> {
        let pairs = self.pairs()?;
        if let (Some(p), Some((_, v))) = (problem, pairs.iter().find(|(k, _)| k == "problem")) {
            if v.parse::<Problem>()? != p {
                return Err(Error::config(format!("problem={v} conflicts with the '{p}' subcommand")));
            }
        }
        CaseConfig::from_pairs(problem, &pairs)
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    /// Final snapshot CSV.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Directory for every recorded snapshot plus the shock track.
    #[arg(long)]
    pub snapshot_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    /// Sweep CSV (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub problem: Option<ProblemArg>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[command(flatten)]
    pub case: CaseArgs,
    /// Grid-convergence CSV (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub problem: Option<ProblemArg>,
    /// Burgers grid table rows, coarse to fine.
    #[arg(long, value_delimiter = ',', default_value = "9,8,7,6,5")]
    pub grids: Vec<usize>,
    /// Euler: number of dx halvings starting from the configured dx.
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
    /// Perturbation (default: the case's eps_max).
    #[arg(long)]
    pub eps: Option<f64>,
}

impl ProblemArg {
    pub fn problem(self) -> Problem {
        match self {
            ProblemArg::Burgers => Problem::BurgersRamp,
            ProblemArg::Euler => Problem::EulerShock,
        }
    }
}
