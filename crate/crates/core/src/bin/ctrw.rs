use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use ctrw_search::sweep::{run, Command, RunConfig};
use ctrw_search::Error;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cmd {
    LevySweep,
    CtrwSweep,
    Simulate,
    FractionalCompare,
    MlEval,
    PathTrace,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::LevySweep => Command::LevySweep,
            Cmd::CtrwSweep => Command::CtrwSweep,
            Cmd::Simulate => Command::Simulate,
            Cmd::FractionalCompare => Command::FractionalCompare,
            Cmd::MlEval => Command::MlEval,
            Cmd::PathTrace => Command::PathTrace,
        }
    }
}

/// Optimal random search with continuous-time random walks: efficiency
/// sweeps, search simulation and fractional-diffusion checks, written as CSV.
#[derive(Debug, Parser)]
#[command(name = "ctrw", version)]
struct Cli {
    command: Cmd,
    /// Flat `key = value` file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Output file (stdout if omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated mean free paths.
    #[arg(long)]
    lambda: Option<String>,
    /// `start:stop:step`.
    #[arg(long, allow_hyphen_values = true)]
    alpha_range: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    beta_range: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    mu_range: Option<String>,
    /// Non-positive arguments for `ml-eval`, e.g. `-10:0:0.5`.
    #[arg(long, allow_hyphen_values = true)]
    z_range: Option<String>,
    #[arg(long)]
    regime: Option<String>,
    #[arg(long)]
    walkers: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    /// Waiting exponent; 0 switches waits off.
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    mu: Option<String>,
    /// Mean wait `T`.
    #[arg(long = "T", alias = "t-mean")]
    t_mean: Option<String>,
    /// Visibility radius.
    #[arg(long)]
    r_v: Option<String>,
    /// Per-step trajectory of walker 0 (`simulate`).
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Any other config key, as `key=value`. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn build_config(cli: &Cli) -> Result<RunConfig, Error> {
    let mut cfg = RunConfig::new(cli.command.into());
    if let Some(path) = &cli.config {
        cfg.load_file(path)?;
    }
    let flags = [
        ("lambda", &cli.lambda),
        ("alpha_range", &cli.alpha_range),
        ("beta_range", &cli.beta_range),
        ("mu_range", &cli.mu_range),
        ("z_range", &cli.z_range),
        ("regime", &cli.regime),
        ("walkers", &cli.walkers),
        ("alpha", &cli.alpha),
        ("beta", &cli.beta),
        ("mu", &cli.mu),
        ("T", &cli.t_mean),
        ("r_v", &cli.r_v),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            cfg.set(key, v)?;
        }
    }
    for kv in &cli.set {
        let (k, v) = kv.split_once('=').ok_or_else(|| Error::InvalidParameter {
            name: "set",
            reason: format!("expected KEY=VALUE, got `{kv}`"),
        })?;
        cfg.set(k, v)?;
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.output = Some(out.clone());
    }
    if let Some(trace) = &cli.trace {
        cfg.trace = Some(trace.clone());
    }
    Ok(cfg)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io { .. } => 2,
        Error::Singular(_) | Error::Pole(_) | Error::Normalization { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match build_config(&cli).and_then(|cfg| run(&cfg)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
