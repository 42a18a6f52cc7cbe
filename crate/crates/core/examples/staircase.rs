//! Staircase: singular values 10^{4-2k}. The normal error stalls near each
//! small singular value before dropping to the next one.
//!
//! cargo run --release --example staircase [-- OUT_DIR]

use std::path::PathBuf;

use projsplit::experiment::{run_experiment, ExperimentConfig, Scenario};

fn main() -> projsplit::Result<()> {
    let out_dir: PathBuf = std::env::args().nth(1).unwrap_or_else(|| ".".into()).into();
    let mut cfg = ExperimentConfig::preset(Scenario::Staircase);
    cfg.csv = Some(out_dir.join("staircase.csv"));
    cfg.svg = Some(out_dir.join("staircase.svg"));

    let outcome = run_experiment(&cfg)?;
    let trace = outcome.trace.as_ref().expect("trajectory scenario");
    let normal = trace.err_normal();

    // Report runs of at least four steps where err_normal moves by < 7%.
    let mut start = 0;
    for k in 1..=normal.len() {
        let flat = k < normal.len() && (normal[k] / normal[k - 1]).log10().abs() < 0.03;
        if !flat {
            if k - start >= 4 {
                let level = normal[(start + k) / 2];
                let nearest = cfg
                    .singular_values
                    .iter()
                    .min_by(|a, b| (level / **a).ln().abs().total_cmp(&(level / **b).ln().abs()))
                    .unwrap();
                println!("plateau k={start}..{}  level {level:.2e}  nearest sigma {nearest:.0e}", k - 1);
            }
            start = k;
        }
    }
    for line in outcome.summary() {
        println!("{line}");
    }
    Ok(())
}
