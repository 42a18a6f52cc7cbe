//! A 2×2 contraction for which projected iteration converges to the wrong
//! point. Started on the X_⊥ axis, the rank-1 iterate settles at δd_*·X_⊥,
//! a distance d_* = 1/√(1 − δ²) from the true fixed point.
//!
//! cargo run --release --example counter_example

use projsplit::bounds::spurious_attractor;
use projsplit::experiment::{run_experiment, ExperimentConfig, Scenario};

fn main() -> projsplit::Result<()> {
    let cfg = ExperimentConfig::preset(Scenario::Counterexample);
    let outcome = run_experiment(&cfg)?;
    let trace = outcome.trace.as_ref().expect("trajectory scenario");
    let (point, d_star) = spurious_attractor(cfg.delta)?;

    for rec in trace.records.iter().take(12) {
        println!("k={:>2}  err_total={:.12}  sigma={:.12}", rec.k, rec.err_total, rec.smallest_kept_sv);
    }
    let last = trace.last();
    println!("stopped: {} after {} steps", trace.stop_reason.as_str(), last.k);
    println!("err_total {:.15} vs d_*      {:.15}", last.err_total, d_star);
    println!("sigma     {:.15} vs delta*d_* {:.15}", last.smallest_kept_sv, point[(1, 1)]);
    println!("exit code would be {}", outcome.status.code());
    Ok(())
}
