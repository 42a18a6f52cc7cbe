//! Contraction mappings `Φ` with a known fixed point `X_*`.

mod linear;
mod perturbed;
mod spurious;

pub use linear::{
    geometric_values, make_random_linear_contraction, staircase_values, LinearContraction, LinearContractionSpec,
    OperatorKind,
};
pub use perturbed::{NoiseReading, PerturbedMap};
pub use spurious::SpuriousMap;

use crate::error::Result;
use crate::linalg::{DenseMatrix, LowRankFactor};
use crate::rng;

/// A contraction `Φ` with factor `delta` and fixed point `X_*`.
pub trait FixedPointMap: Send + Sync {
    fn apply(&self, y: &DenseMatrix) -> Result<DenseMatrix>;

    /// Evaluation at iteration `step`. Deterministic maps ignore the index.
    fn apply_at(&self, y: &DenseMatrix, step: usize) -> Result<DenseMatrix> {
        let _ = step;
        self.apply(y)
    }

    fn fixed_point(&self) -> &DenseMatrix;

    /// `X_*` as `U_* S_* V_*ᵀ` with `S_*` diagonal and descending.
    fn fixed_point_factor(&self) -> &LowRankFactor;

    fn delta(&self) -> f64;

    fn is_linear(&self) -> bool;
}

impl<M: FixedPointMap + ?Sized> FixedPointMap for &M {
    fn apply(&self, y: &DenseMatrix) -> Result<DenseMatrix> {
        (**self).apply(y)
    }

    fn apply_at(&self, y: &DenseMatrix, step: usize) -> Result<DenseMatrix> {
        (**self).apply_at(y, step)
    }

    fn fixed_point(&self) -> &DenseMatrix {
        (**self).fixed_point()
    }

    fn fixed_point_factor(&self) -> &LowRankFactor {
        (**self).fixed_point_factor()
    }

    fn delta(&self) -> f64 {
        (**self).delta()
    }

    fn is_linear(&self) -> bool {
        (**self).is_linear()
    }
}

/// Largest observed `‖Φ(Y_1) − Φ(Y_2)‖_F / ‖Y_1 − Y_2‖_F` over `pairs` random
/// pairs scattered around `X_*` at scale `scale`.
pub fn sampled_contraction_ratio(map: &dyn FixedPointMap, pairs: usize, scale: f64, seed: u64) -> Result<f64> {
    let xstar = map.fixed_point();
    let (n, m) = xstar.shape();
    let mut rng = rng::stream(seed, rng::MAP_STREAM);
    let mut worst: f64 = 0.0;
    for _ in 0..pairs {
        let y1 = xstar + &rng::gaussian_matrix(&mut rng, n, m).scale(scale);
        let y2 = xstar + &rng::gaussian_matrix(&mut rng, n, m).scale(scale);
        let num = (&map.apply(&y1)? - &map.apply(&y2)?).frobenius_norm();
        let den = (&y1 - &y2).frobenius_norm();
        if den > 0.0 {
            worst = worst.max(num / den);
        }
    }
    Ok(worst)
}
