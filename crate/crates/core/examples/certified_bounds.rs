//! Certified convergence: when 4p_0 s/((1 − q_0)²(1 − s)) < 1 the normalised
//! error obeys p_k ≤ p_0/c_* · s^k, and the error itself stays below
//! c·‖Y_0 − X_*‖·δ^k.

use projsplit::bounds::{bound_sequence, certify};
use projsplit::contractions::{make_random_linear_contraction, FixedPointMap, LinearContractionSpec};
use projsplit::iteration::{initial_point, run, RunConfig};

fn main() -> projsplit::Result<()> {
    let spec = LinearContractionSpec::geometric(12, 12, 3, 4.0, 1.0, 0.7, 11);
    let map = make_random_linear_contraction(&spec)?;
    let y0 = initial_point(map.fixed_point(), 3, 0.1, 11)?;
    let trace = run(&map, &y0, &RunConfig::new(3))?;
    let first = &trace.records[0];
    let cert = certify(map.delta().powi(2), first.p, first.q)?;
    println!(
        "p0 = {:.3e}, q0 = {:.3e}, condition value {:.3e}, c_* = {:?}, c = {:?}",
        cert.p0, cert.q0, cert.condition_value, cert.c_star, cert.corollary_c
    );
    let bounds = bound_sequence(&cert, trace.last().k)?;
    println!("  k   p_k          bound        err_k        err bound");
    for (rec, b) in trace.records.iter().zip(&bounds).step_by(8) {
        let err_bound = cert.bound_err(first.err_total, rec.k).unwrap_or(f64::NAN);
        println!("{:>3}   {:.3e}    {:.3e}    {:.3e}    {:.3e}", rec.k, rec.p, b, rec.err_total, err_bound);
    }
    Ok(())
}
