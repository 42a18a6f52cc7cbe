use super::FixedPointMap;
use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, LowRankFactor};
use crate::rng;

/// How the noise scale `‖Φ(Y) − Y‖_F / divisor` is interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseReading {
    #[default]
    StdDev,
    Variance,
}

/// Wraps a map and adds Gaussian noise `R_k` whose scale is proportional to
/// the step length `‖Φ(Y) − Y‖_F`. The noise at step `k` comes from its own
/// random stream, so a trajectory is reproducible from the seed alone.
#[derive(Debug, Clone)]
pub struct PerturbedMap<M> {
    inner: M,
    noise_scale_divisor: f64,
    seed: u64,
    reading: NoiseReading,
}

impl<M: FixedPointMap> PerturbedMap<M> {
    /// `noise_scale_divisor` may be `+∞` (no noise).
    pub fn new(inner: M, noise_scale_divisor: f64, seed: u64) -> Result<Self> {
        if !(noise_scale_divisor > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "noise divisor {noise_scale_divisor} must be positive"
            )));
        }
        Ok(Self {
            inner,
            noise_scale_divisor,
            seed,
            reading: NoiseReading::default(),
        })
    }

    pub fn with_reading(mut self, reading: NoiseReading) -> Self {
        self.reading = reading;
        self
    }

    pub fn inner(&self) -> &M {
        &self.inner
    }

    /// The noise matrix `R_k` added at `step` for input `y`.
    pub fn noise(&self, y: &DenseMatrix, step: usize) -> Result<DenseMatrix> {
        let base = self.inner.apply_at(y, step)?;
        Ok(self.noise_for(&base, y, step))
    }

    fn noise_for(&self, base: &DenseMatrix, y: &DenseMatrix, step: usize) -> DenseMatrix {
        let (n, m) = y.shape();
        let scale = (base - y).frobenius_norm() / self.noise_scale_divisor;
        let std = match self.reading {
            NoiseReading::StdDev => scale,
            NoiseReading::Variance => scale.sqrt(),
        };
        if std == 0.0 {
            return DenseMatrix::zeros(n, m);
        }
        let mut rng = rng::stream(self.seed, rng::NOISE_STREAM_BASE + step as u64);
        rng::gaussian_matrix(&mut rng, n, m).scale(std)
    }
}

impl<M: FixedPointMap> FixedPointMap for PerturbedMap<M> {
    fn apply(&self, y: &DenseMatrix) -> Result<DenseMatrix> {
        self.apply_at(y, 0)
    }

    fn apply_at(&self, y: &DenseMatrix, step: usize) -> Result<DenseMatrix> {
        let base = self.inner.apply_at(y, step)?;
        let noise = self.noise_for(&base, y, step);
        Ok(&base + &noise)
    }

    fn fixed_point(&self) -> &DenseMatrix {
        self.inner.fixed_point()
    }

    fn fixed_point_factor(&self) -> &LowRankFactor {
        self.inner.fixed_point_factor()
    }

    fn delta(&self) -> f64 {
        self.inner.delta()
    }

    fn is_linear(&self) -> bool {
        false
    }
}
