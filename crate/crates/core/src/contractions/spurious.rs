use super::FixedPointMap;
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, LowRankFactor};

/// The 2×2 map `Φ(Y) = X_* + δ‖Y − X_*‖_F X_⊥` with `X_* = diag(1, 0)` and
/// `X_⊥ = diag(0, 1)`.
///
/// It contracts with factor `δ`, yet projected iteration at rank 1 has a
/// second fixed point on the `X_⊥` axis; see [`crate::bounds::spurious_attractor`].
#[derive(Debug, Clone)]
pub struct SpuriousMap {
    delta: f64,
    xstar_factor: LowRankFactor,
    xstar: DenseMatrix,
    xperp: DenseMatrix,
}

impl SpuriousMap {
    pub fn new(delta: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParameter(format!("delta {delta} not in (0, 1)")));
        }
        let e1 = DenseMatrix::unit(2, 0);
        let xstar_factor = LowRankFactor::new(e1.clone(), DenseMatrix::identity(1), e1)?;
        Ok(Self {
            delta,
            xstar: xstar_factor.assemble(),
            xstar_factor,
            xperp: DenseMatrix::diag(&[0.0, 1.0]),
        })
    }

    pub fn xperp(&self) -> &DenseMatrix {
        &self.xperp
    }
}

impl FixedPointMap for SpuriousMap {
    fn apply(&self, y: &DenseMatrix) -> Result<DenseMatrix> {
        if y.shape() != (2, 2) {
            return Err(Error::shape("spurious_apply", "2x2", format!("{:?}", y.shape())));
        }
        let dist = (y - &self.xstar).frobenius_norm();
        Ok(&self.xstar + &self.xperp.scale(self.delta * dist))
    }

    fn fixed_point(&self) -> &DenseMatrix {
        &self.xstar
    }

    fn fixed_point_factor(&self) -> &LowRankFactor {
        &self.xstar_factor
    }

    fn delta(&self) -> f64 {
        self.delta
    }

    fn is_linear(&self) -> bool {
        false
    }
}
