//! The projector-splitting retraction I(A_0, D) equals the projection of
//! A_0 + D onto the tangent space at the intermediate point (U_1, V_0).

use projsplit::linalg::{truncated_svd, DenseMatrix};
use projsplit::retraction::{retract, tangent_project};
use projsplit::rng;

fn main() -> projsplit::Result<()> {
    let mut r = rng::stream(2024, 0);
    let a0 = truncated_svd(&rng::gaussian_matrix(&mut r, 40, 40), 7)?;
    for scale in [1e-3, 1e-1, 1.0, 10.0] {
        let d: DenseMatrix = rng::gaussian_matrix(&mut r, 40, 40).scale(scale);
        let res = retract(&a0, &d)?;
        let projected = tangent_project(&res.intermediate_u1, a0.v(), &(&a0.assemble() + &d))?;
        let rel = (&res.point.assemble() - &projected).frobenius_norm() / projected.frobenius_norm();
        println!("|D| = {:>8.2e}  relative discrepancy {rel:.2e}", d.frobenius_norm());
    }
    Ok(())
}
