use super::matrix::DenseMatrix;
use crate::error::{Error, Result};

/// A point `U·S·Vᵀ` on the rank-`r` manifold with orthonormal `U` (n×r) and `V` (m×r).
///
/// `S` is a general r×r matrix; it is diagonal only when the factor comes
/// from an SVD.
#[derive(Debug, Clone, PartialEq)]
pub struct LowRankFactor {
    u: DenseMatrix,
    s: DenseMatrix,
    v: DenseMatrix,
}

impl LowRankFactor {
    pub fn new(u: DenseMatrix, s: DenseMatrix, v: DenseMatrix) -> Result<Self> {
        let r = u.cols();
        if s.shape() != (r, r) || v.cols() != r {
            return Err(Error::shape(
                "LowRankFactor",
                format!("U n×r, S r×r, V m×r with r = {r}"),
                format!("S {:?}, V {:?}", s.shape(), v.shape()),
            ));
        }
        if r > u.rows().min(v.rows()) {
            return Err(Error::InvalidRank {
                rank: r,
                max: u.rows().min(v.rows()),
            });
        }
        u.require_orthonormal("U")?;
        v.require_orthonormal("V")?;
        Ok(Self { u, s, v })
    }

    /// Skips the orthonormality check; callers guarantee it.
    pub(crate) fn from_parts(u: DenseMatrix, s: DenseMatrix, v: DenseMatrix) -> Self {
        Self { u, s, v }
    }

    pub fn u(&self) -> &DenseMatrix {
        &self.u
    }

    pub fn s(&self) -> &DenseMatrix {
        &self.s
    }

    pub fn v(&self) -> &DenseMatrix {
        &self.v
    }

    pub fn rank(&self) -> usize {
        self.u.cols()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.u.rows(), self.v.rows())
    }

    /// `U·S·Vᵀ`.
    pub fn assemble(&self) -> DenseMatrix {
        (&self.u * &self.s).mul_tr(&self.v).expect("factor shapes are consistent")
    }

    /// Diagonal of `S`.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.rank()).map(|i| self.s[(i, i)]).collect()
    }
}
