//! Thin Householder QR.
//!
//! Householder reflections always yield a full set of orthonormal columns,
//! including for rank-deficient input: a column that is already zero below
//! the diagonal gets no reflection, so the corresponding column of `Q` is the
//! image of a canonical basis vector under the preceding reflections. The
//! completion is therefore deterministic without pivoting.

use super::matrix::DenseMatrix;
use crate::error::{Error, Result};

/// Sign normalisation applied to the triangular factor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QrSigns {
    /// Flip column/row pairs so every `R_ii ≥ 0`.
    #[default]
    NonNegativeDiagonal,
    /// Keep the signs produced by the reflections (`R_ii ≤ 0` for generic input).
    Reflector,
}

/// `M = Q·R` with `Q` n×r orthonormal and `R` r×r upper triangular.
pub fn thin_qr(m: &DenseMatrix) -> Result<(DenseMatrix, DenseMatrix)> {
    thin_qr_with(m, QrSigns::default())
}

pub fn thin_qr_with(m: &DenseMatrix, signs: QrSigns) -> Result<(DenseMatrix, DenseMatrix)> {
    let (n, r) = m.shape();
    if n < r {
        return Err(Error::shape("thin_qr", format!("rows >= cols ({r})"), format!("{n}x{r}")));
    }

    let mut a = m.clone();
    let mut reflectors: Vec<Option<(Vec<f64>, f64)>> = Vec::with_capacity(r);
    for j in 0..r {
        let x: Vec<f64> = (j..n).map(|i| a[(i, j)]).collect();
        let norm = DenseMatrix::column(&x).frobenius_norm();
        if norm == 0.0 {
            reflectors.push(None);
            continue;
        }
        if x[1..].iter().all(|&e| e == 0.0) {
            // Already upper triangular in this column.
            reflectors.push(None);
            continue;
        }
        // LAPACK-style scaling: v[0] = 1 and H = I − τvvᵀ. Structured input
        // such as x = (0, c) then yields exactly representable v and τ.
        let alpha = if x[0] >= 0.0 { -norm } else { norm };
        let tau = (alpha - x[0]) / alpha;
        let scale = x[0] - alpha;
        let mut v = x;
        v[0] = 1.0;
        v[1..].iter_mut().for_each(|e| *e /= scale);
        apply_reflector(&mut a, &v, tau, j, j);
        // Exact zeros below the diagonal.
        a[(j, j)] = alpha;
        for i in j + 1..n {
            a[(i, j)] = 0.0;
        }
        reflectors.push(Some((v, tau)));
    }

    let mut rfac = DenseMatrix::from_fn(r, r, |i, j| if i <= j { a[(i, j)] } else { 0.0 });
    let mut q = DenseMatrix::from_fn(n, r, |i, j| if i == j { 1.0 } else { 0.0 });
    for (j, v) in reflectors.iter().enumerate().rev() {
        if let Some((v, tau)) = v {
            apply_reflector(&mut q, v, *tau, j, 0);
        }
    }

    if signs == QrSigns::NonNegativeDiagonal {
        for j in 0..r {
            if rfac[(j, j)] < 0.0 {
                for i in 0..n {
                    q[(i, j)] = -q[(i, j)];
                }
                for k in 0..r {
                    rfac[(j, k)] = -rfac[(j, k)];
                }
            }
        }
    }
    Ok((q, rfac))
}

/// Applies `I − τvvᵀ` (acting on rows `offset..`) to columns `col_start..` of `a`.
fn apply_reflector(a: &mut DenseMatrix, v: &[f64], tau: f64, offset: usize, col_start: usize) {
    let cols = a.cols();
    let mut w = vec![0.0; cols - col_start];
    for (t, &vi) in v.iter().enumerate() {
        let row = a.row(offset + t);
        for (wk, &x) in w.iter_mut().zip(&row[col_start..]) {
            *wk += vi * x;
        }
    }
    for (t, &vi) in v.iter().enumerate() {
        for (k, wk) in w.iter().enumerate() {
            a[(offset + t, col_start + k)] -= tau * vi * wk;
        }
    }
}

/// Extends the orthonormal columns of `basis` (n×k) to `target` columns by
/// Gram–Schmidt against canonical basis vectors, taken in index order.
pub fn complete_orthonormal(basis: &DenseMatrix, target: usize) -> DenseMatrix {
    let n = basis.rows();
    assert!(target <= n, "cannot complete beyond ambient dimension");
    let mut cols: Vec<Vec<f64>> = (0..basis.cols()).map(|j| basis.col_to_vec(j)).collect();
    let mut candidate = 0;
    while cols.len() < target && candidate < n {
        let mut v = vec![0.0; n];
        v[candidate] = 1.0;
        candidate += 1;
        // Two passes of classical Gram–Schmidt.
        for _ in 0..2 {
            for c in &cols {
                let proj = super::matrix::dot(c, &v);
                v.iter_mut().zip(c).for_each(|(x, y)| *x -= proj * y);
            }
        }
        let norm = super::matrix::dot(&v, &v).sqrt();
        if norm > 0.5 {
            v.iter_mut().for_each(|x| *x /= norm);
            cols.push(v);
        }
    }
    DenseMatrix::from_fn(n, target, |i, j| cols[j][i])
}
