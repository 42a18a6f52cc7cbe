//! Reduced dynamics of the counter-example. π maps a rank-1 iterate to
//! {‖Y − X_*‖²/d_*² − 1, ctg²φ_R}; one projected step acts on that pair by f.

use projsplit::bounds::{f_components, f_map, pi_map, OmegaParams, PQPair};
use projsplit::contractions::SpuriousMap;
use projsplit::iteration::step;
use projsplit::linalg::{DenseMatrix, LowRankFactor};

fn main() -> projsplit::Result<()> {
    let delta = 0.9;
    let map = SpuriousMap::new(delta)?;
    let (a, b) = (1.3_f64, 1.45_f64);
    let mut y = LowRankFactor::new(
        DenseMatrix::column(&[a.cos(), a.sin()]),
        DenseMatrix::diag(&[2.5]),
        DenseMatrix::column(&[b.cos(), b.sin()]),
    )?;
    println!("projected steps vs f:");
    for k in 0..6 {
        let pq = pi_map(&y, delta)?;
        let predicted = f_components(pq, delta);
        y = step(&map, &y, k)?.result.point;
        let actual = pi_map(&y, delta)?;
        println!(
            "k={k}  pi(Y_k+1) = ({:.6e}, {:.6e})  f(pi(Y_k)) = ({:.6e}, {:.6e})",
            actual.p, actual.q, predicted.p, predicted.q
        );
    }

    let params = OmegaParams::new(delta, 0.05, 0.2)?;
    let mut state = PQPair { p: 1.0, q: 0.05 };
    let mut k = 0;
    while state.p.max(state.q) >= 1e-12 {
        state = f_map(state, &params)?;
        k += 1;
    }
    println!("iterating f inside Omega reaches max(p, q) < 1e-12 after {k} steps");
    Ok(())
}
