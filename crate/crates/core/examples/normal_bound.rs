//! After one step the normal error is bounded by ‖H‖₂ times the largest
//! tangent of the principal angles between V_0 and V_*, where H is the
//! error of the full step.

use projsplit::bounds::normal_component_bound;
use projsplit::linalg::{principal_angles, thin_qr, truncated_svd};
use projsplit::retraction::normal_residual;
use projsplit::rng;

fn main() -> projsplit::Result<()> {
    let mut r = rng::stream(5, 0);
    let xstar = truncated_svd(&rng::gaussian_matrix(&mut r, 30, 25), 4)?;
    for tilt in [0.01, 0.1, 0.5, 2.0] {
        // V_0: V_* plus Gaussian noise of size `tilt`, re-orthonormalised.
        let noisy = xstar.v() + &rng::gaussian_matrix(&mut r, 25, 4).scale(tilt);
        let (v0, _) = thin_qr(&noisy)?;
        let h = rng::gaussian_matrix(&mut r, 30, 25).scale(0.05);
        let (u1, _) = thin_qr(&(&(&xstar.assemble() + &h) * &v0))?;
        let actual = normal_residual(&u1, &v0, &xstar.assemble())?.spectral;
        let bound = normal_component_bound(&h, &v0, xstar.v())?;
        let tan = principal_angles(&v0, xstar.v())?.max_tangent();
        println!("max tan {tan:>8.3e}  normal {actual:>10.3e}  bound {bound:>10.3e}");
    }
    Ok(())
}
