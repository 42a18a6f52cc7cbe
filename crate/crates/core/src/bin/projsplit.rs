use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use projsplit::experiment::{run_experiment, ExitStatus, ExperimentConfig, Scenario};
use projsplit::Result;

/// Projected fixed-point iteration experiments.
#[derive(Debug, Parser)]
#[command(name = "projsplit", version)]
struct Cli {
    /// typical | staircase | counterexample | counterexample-perturbed | verify-bounds
    scenario: Scenario,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long)]
    eta: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    max_iters: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    noise_divisor: Option<f64>,
    /// Singular values of X_*: `preset=geometric|staircase`, `first=`, `last=`, or `k=value`.
    #[arg(long)]
    sv: Option<String>,
    /// Counter-example start: singular value.
    #[arg(long)]
    sigma0: Option<f64>,
    /// Counter-example start: angle of the factors to e1, in degrees.
    #[arg(long)]
    phi: Option<f64>,
    /// Cases per property suite for verify-bounds.
    #[arg(long)]
    cases: Option<usize>,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    cert: Option<PathBuf>,
}

fn build_config(cli: Cli) -> Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::preset(cli.scenario);
    if let Some(r) = cli.r {
        cfg.set_rank(r);
    }
    macro_rules! set {
        ($($field:ident => $target:ident),*) => {
            $(if let Some(v) = cli.$field { cfg.$target = v; })*
        };
    }
    set!(n => n, m => m, delta => delta, eta => eta, seed => seed, max_iters => max_iters,
         tol => tol, sigma0 => start_sigma, phi => start_angle_deg, cases => verify_cases);
    if let Some(d) = cli.noise_divisor {
        cfg.noise_divisor = Some(d);
    }
    if let Some(spec) = &cli.sv {
        cfg.apply_sv_spec(spec)?;
    }
    cfg.csv = cli.csv;
    cfg.svg = cli.svg;
    cfg.cert = cli.cert;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { ExitStatus::ConfigError.code() } else { 0 };
            return ExitCode::from(code as u8);
        }
    };
    let outcome = build_config(cli).and_then(|cfg| run_experiment(&cfg));
    match outcome {
        Ok(out) => {
            for line in out.summary() {
                println!("{line}");
            }
            ExitCode::from(out.status.code() as u8)
        }
        Err(e) => {
            eprintln!("projsplit: {e}");
            ExitCode::from(ExitStatus::for_error(&e).code() as u8)
        }
    }
}
