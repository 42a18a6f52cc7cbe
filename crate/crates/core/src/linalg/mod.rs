//! Dense linear algebra and subspace geometry.

mod angles;
mod factor;
mod matrix;
mod qr;
mod svd;

pub use angles::{principal_angles, AngleSet};
pub use factor::LowRankFactor;
pub use matrix::DenseMatrix;
pub use qr::{complete_orthonormal, thin_qr, thin_qr_with, QrSigns};
pub use svd::{singular_values, svd, truncated_svd, Svd};

/// Spectral norm (largest singular value).
pub fn spectral_norm(m: &DenseMatrix) -> f64 {
    m.spectral_norm()
}

pub fn frobenius_norm(m: &DenseMatrix) -> f64 {
    m.frobenius_norm()
}

/// Assembles `U·S·Vᵀ`.
pub fn assemble(f: &LowRankFactor) -> DenseMatrix {
    f.assemble()
}
