//! Independent reference computations built on nalgebra.
#![allow(dead_code)]

use nalgebra::DMatrix;
use projsplit::linalg::DenseMatrix;

pub fn to_na(m: &DenseMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.rows(), m.cols(), m.as_slice())
}

pub fn from_na(m: &DMatrix<f64>) -> DenseMatrix {
    DenseMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Orthonormal basis of the column space of a full-column-rank matrix.
pub fn orth(m: &DMatrix<f64>) -> DMatrix<f64> {
    m.clone().qr().q()
}

/// `UUᵀZ + ZVVᵀ − UUᵀZVVᵀ`.
pub fn tangent_projection(u: &DMatrix<f64>, v: &DMatrix<f64>, z: &DMatrix<f64>) -> DMatrix<f64> {
    let pu = u * u.transpose();
    let pv = v * v.transpose();
    &pu * z + z * &pv - &pu * z * &pv
}

/// `(I − UUᵀ) X (I − VVᵀ)`.
pub fn normal_part(u: &DMatrix<f64>, v: &DMatrix<f64>, x: &DMatrix<f64>) -> DMatrix<f64> {
    let (n, m) = x.shape();
    let qu = DMatrix::identity(n, n) - u * u.transpose();
    let qv = DMatrix::identity(m, m) - v * v.transpose();
    qu * x * qv
}

pub fn singular_values(m: &DMatrix<f64>) -> Vec<f64> {
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn spectral_norm(m: &DMatrix<f64>) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}

/// Largest tangent of the principal angles between span(v0) and span(vstar),
/// from the cosines `σ(V_*ᵀV_0)`.
pub fn max_tangent(v0: &DMatrix<f64>, vstar: &DMatrix<f64>) -> f64 {
    let cos = singular_values(&(vstar.transpose() * v0));
    let c = cos[..vstar.ncols()].iter().copied().fold(f64::INFINITY, f64::min).min(1.0);
    if c <= 0.0 {
        f64::INFINITY
    } else {
        (1.0 - c * c).max(0.0).sqrt() / c
    }
}

/// Least-squares slope of `ys` against `xs`.
pub fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
