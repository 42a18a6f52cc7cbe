//! Typical case: a 40×40 linear contraction with a rank-7 fixed point whose
//! singular values span one decade. The total error decays at rate δ while
//! the normal part decays quadratically.
//!
//! cargo run --release --example typical_case [-- OUT_DIR]

use std::path::PathBuf;

use projsplit::experiment::{run_experiment, ExperimentConfig, Scenario};

fn main() -> projsplit::Result<()> {
    let out_dir: PathBuf = std::env::args().nth(1).unwrap_or_else(|| ".".into()).into();
    let mut cfg = ExperimentConfig::preset(Scenario::Typical);
    cfg.csv = Some(out_dir.join("typical.csv"));
    cfg.svg = Some(out_dir.join("typical.svg"));

    let outcome = run_experiment(&cfg)?;
    let trace = outcome.trace.as_ref().expect("trajectory scenario");
    println!("  k    err_total    err_tangent  err_normal");
    for rec in trace.records.iter().step_by(10) {
        println!(
            "{:>3}  {:>11.3e}  {:>11.3e}  {:>11.3e}",
            rec.k, rec.err_total, rec.err_tangent, rec.err_normal
        );
    }
    let ratios: Vec<f64> = trace.records.windows(2).map(|w| w[1].err_total / w[0].err_total).collect();
    let tail = &ratios[ratios.len().saturating_sub(20)..];
    println!(
        "mean ratio over last {} steps: {:.4} (delta = {})",
        tail.len(),
        tail.iter().sum::<f64>() / tail.len() as f64,
        cfg.delta
    );
    for line in outcome.summary() {
        println!("{line}");
    }
    Ok(())
}
