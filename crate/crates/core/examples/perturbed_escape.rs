//! The spurious point is unstable: small noise proportional to the step
//! length pushes the iteration off the X_⊥ axis and on to X_*.
//!
//! cargo run --release --example perturbed_escape

use projsplit::experiment::{run_experiment, ExperimentConfig, Scenario};
use projsplit::iteration::StopReason;

fn main() -> projsplit::Result<()> {
    let mut escaped = 0;
    for seed in 0..10 {
        let mut cfg = ExperimentConfig::preset(Scenario::CounterexamplePerturbed);
        cfg.seed = seed;
        let outcome = run_experiment(&cfg)?;
        let trace = outcome.trace.expect("trajectory scenario");
        let hit = trace.records.iter().find(|r| r.err_total <= 1e-6).map(|r| r.k);
        if trace.stop_reason == StopReason::Converged {
            escaped += 1;
        }
        println!(
            "seed {seed}: {:<10} err<=1e-6 at k={:<5} final err {:.3e}",
            trace.stop_reason.as_str(),
            hit.map_or("-".to_string(), |k| k.to_string()),
            trace.last().err_total
        );
    }
    println!("{escaped}/10 runs reached X_*");
    Ok(())
}
