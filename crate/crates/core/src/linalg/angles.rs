use super::matrix::DenseMatrix;
use super::svd::singular_values;
use crate::error::{Error, Result};

/// Principal angles between two subspaces, stored as cosines (descending)
/// with the matching sines and tangents.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleSet {
    pub cosines: Vec<f64>,
    pub sines: Vec<f64>,
    pub tangents: Vec<f64>,
}

impl AngleSet {
    /// Largest tangent, `+∞` when some direction is orthogonal. Zero for an empty set.
    pub fn max_tangent(&self) -> f64 {
        self.tangents.iter().copied().fold(0.0, f64::max)
    }

    pub fn len(&self) -> usize {
        self.cosines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosines.is_empty()
    }
}

/// Principal angles between span(`v0`) (m×r) and span(`vstar`) (m×q), `q ≤ r`.
///
/// Cosines are the singular values of `V_*ᵀ V_0`. Sines are taken from the
/// singular values of `(I − V_0 V_0ᵀ) V_*` instead of `√(1 − cos²)`, which
/// keeps small angles accurate.
pub fn principal_angles(v0: &DenseMatrix, vstar: &DenseMatrix) -> Result<AngleSet> {
    if v0.rows() != vstar.rows() || vstar.cols() > v0.cols() {
        return Err(Error::shape(
            "principal_angles",
            "V0 m×r and V* m×q with q <= r",
            format!("V0 {:?}, V* {:?}", v0.shape(), vstar.shape()),
        ));
    }
    v0.require_orthonormal("V0")?;
    vstar.require_orthonormal("V*")?;

    let q = vstar.cols();
    let cross = vstar.tr_mul(v0)?;
    let cosines: Vec<f64> = singular_values(&cross).into_iter().take(q).map(|c| c.clamp(0.0, 1.0)).collect();

    let coeff = v0.tr_mul(vstar)?;
    let residual = vstar - &(v0 * &coeff);
    let mut sines: Vec<f64> = singular_values(&residual).into_iter().map(|s| s.clamp(0.0, 1.0)).collect();
    sines.truncate(q);
    sines.reverse();

    let tangents = cosines
        .iter()
        .zip(&sines)
        .map(|(&c, &s)| if c > 0.0 { s / c } else { f64::INFINITY })
        .collect();
    Ok(AngleSet {
        cosines,
        sines,
        tangents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_subspaces() {
        let v = DenseMatrix::from_fn(4, 2, |i, j| if i == j + 1 { 1.0 } else { 0.0 });
        let a = principal_angles(&v, &v).unwrap();
        assert!(a.cosines.iter().all(|&c| (c - 1.0).abs() < 1e-15));
        assert!(a.tangents.iter().all(|&t| t.abs() < 1e-15));
    }

    #[test]
    fn orthogonal_lines() {
        let a = principal_angles(&DenseMatrix::unit(2, 0), &DenseMatrix::unit(2, 1)).unwrap();
        assert_eq!(a.cosines, vec![0.0]);
        assert_eq!(a.tangents, vec![f64::INFINITY]);
        assert_eq!(a.max_tangent(), f64::INFINITY);
    }

    #[test]
    fn forty_five_degrees() {
        let h = 1.0 / 2f64.sqrt();
        let a = principal_angles(&DenseMatrix::unit(2, 0), &DenseMatrix::column(&[h, h])).unwrap();
        assert!((a.cosines[0] - 0.70711).abs() < 1e-5);
        assert!((a.tangents[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_orthonormal_and_bad_shapes() {
        let bad = DenseMatrix::column(&[1.0, 1.0]);
        assert!(matches!(
            principal_angles(&bad, &DenseMatrix::unit(2, 0)),
            Err(Error::NotOrthonormal { .. })
        ));
        assert!(principal_angles(&DenseMatrix::unit(2, 0), &DenseMatrix::identity(2)).is_err());
    }
}
