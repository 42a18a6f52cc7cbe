//! One-sided Jacobi SVD.
//!
//! Output is deterministic: singular values descending, and each left
//! singular vector has its first non-negligible entry positive.

use super::factor::LowRankFactor;
use super::matrix::DenseMatrix;
use super::qr::complete_orthonormal;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

/// Full thin SVD `M = U·diag(s)·Vᵀ` with `k = min(n, m)` components.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: DenseMatrix,
    pub singular_values: Vec<f64>,
    pub v: DenseMatrix,
}

pub fn svd(m: &DenseMatrix) -> Svd {
    if m.rows() >= m.cols() {
        jacobi_tall(m)
    } else {
        let t = jacobi_tall(&m.transpose());
        let mut out = Svd {
            u: t.v,
            singular_values: t.singular_values,
            v: t.u,
        };
        fix_signs(&mut out);
        out
    }
}

pub fn singular_values(m: &DenseMatrix) -> Vec<f64> {
    svd(m).singular_values
}

/// Best rank-`r` approximation in factored form, `S` diagonal and descending.
pub fn truncated_svd(m: &DenseMatrix, r: usize) -> Result<LowRankFactor> {
    let max = m.rows().min(m.cols());
    if r == 0 || r > max {
        return Err(Error::InvalidRank { rank: r, max });
    }
    let full = svd(m);
    LowRankFactor::new(
        full.u.columns(0, r),
        DenseMatrix::diag(&full.singular_values[..r]),
        full.v.columns(0, r),
    )
}

fn jacobi_tall(m: &DenseMatrix) -> Svd {
    let (n, k) = m.shape();
    // Work column-major: cols[j] is column j of the rotated matrix.
    let mut cols: Vec<Vec<f64>> = (0..k).map(|j| m.col_to_vec(j)).collect();
    let mut vcols: Vec<Vec<f64>> = (0..k)
        .map(|j| (0..k).map(|i| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let eps = f64::EPSILON;

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..k {
            for q in p + 1..k {
                let (alpha, beta, gamma) = {
                    let (a, b) = (&cols[p], &cols[q]);
                    let mut alpha = 0.0;
                    let mut beta = 0.0;
                    let mut gamma = 0.0;
                    for i in 0..n {
                        alpha += a[i] * a[i];
                        beta += b[i] * b[i];
                        gamma += a[i] * b[i];
                    }
                    (alpha, beta, gamma)
                };
                if gamma == 0.0 || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                rotate(&mut cols, p, q, c, s);
                rotate(&mut vcols, p, q, c, s);
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = cols.iter().map(|c| DenseMatrix::column(c).frobenius_norm()).collect();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]).then(a.cmp(&b)));

    let singular_values: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let nonzero = singular_values.iter().take_while(|&&s| s > 0.0).count();
    let u_partial = DenseMatrix::from_fn(n, nonzero, |i, j| cols[order[j]][i] / norms[order[j]]);
    let u = if nonzero < k {
        complete_orthonormal(&u_partial, k)
    } else {
        u_partial
    };
    let v = DenseMatrix::from_fn(k, k, |i, j| vcols[order[j]][i]);

    let mut out = Svd { u, singular_values, v };
    fix_signs(&mut out);
    out
}

fn rotate(cols: &mut [Vec<f64>], p: usize, q: usize, c: f64, s: f64) {
    let (left, right) = cols.split_at_mut(q);
    let (a, b) = (&mut left[p], &mut right[0]);
    for (x, y) in a.iter_mut().zip(b.iter_mut()) {
        let (xp, yq) = (*x, *y);
        *x = c * xp - s * yq;
        *y = s * xp + c * yq;
    }
}

fn fix_signs(out: &mut Svd) {
    for j in 0..out.singular_values.len() {
        let first = (0..out.u.rows()).map(|i| out.u[(i, j)]).find(|x| x.abs() > 1e-12);
        if first.is_some_and(|x| x < 0.0) {
            for i in 0..out.u.rows() {
                out.u[(i, j)] = -out.u[(i, j)];
            }
            for i in 0..out.v.rows() {
                out.v[(i, j)] = -out.v[(i, j)];
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_input_truncates_to_leading_values() {
        let f = truncated_svd(&DenseMatrix::diag(&[3.0, 2.0, 1.0]), 2).unwrap();
        assert_eq!(f.rank(), 2);
        assert!((f.s()[(0, 0)] - 3.0).abs() < 1e-15);
        assert!((f.s()[(1, 1)] - 2.0).abs() < 1e-15);
        assert_eq!(f.s()[(0, 1)], 0.0);
    }

    #[test]
    fn rank_out_of_range() {
        let m = DenseMatrix::identity(3);
        assert!(matches!(truncated_svd(&m, 0), Err(Error::InvalidRank { .. })));
        assert!(matches!(truncated_svd(&m, 4), Err(Error::InvalidRank { rank: 4, max: 3 })));
    }

    #[test]
    fn outer_product_recovers_norm_product() {
        let u = DenseMatrix::column(&[1.0, 2.0, 2.0]);
        let v = DenseMatrix::column(&[3.0, 4.0]);
        let f = truncated_svd(&u.mul_tr(&v).unwrap(), 1).unwrap();
        assert!((f.s()[(0, 0)] - 15.0).abs() < 1e-13);
    }

    #[test]
    fn wide_and_tall_agree() {
        let m = DenseMatrix::from_fn(3, 5, |i, j| ((i + 1) * (j + 2)) as f64 % 7.0 - 3.0);
        let a = singular_values(&m);
        let b = singular_values(&m.transpose());
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-13);
        }
    }

    #[test]
    fn zero_matrix_has_orthonormal_factors() {
        let s = svd(&DenseMatrix::zeros(4, 3));
        assert!(s.u.orthonormality_defect() < 1e-14);
        assert!(s.singular_values.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn left_vectors_have_positive_leading_entry() {
        let m = DenseMatrix::from_fn(6, 4, |i, j| ((3 * i + 5 * j) % 11) as f64 - 5.0);
        let s = svd(&m);
        for j in 0..4 {
            let first = (0..6).map(|i| s.u[(i, j)]).find(|x| x.abs() > 1e-12).unwrap();
            assert!(first > 0.0);
        }
    }
}
