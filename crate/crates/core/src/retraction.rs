//! Projector-splitting retraction onto the rank-`r` manifold.
//!
//! Given `A_0 = U_0 S_0 V_0ᵀ` and a step `D`:
//!
//! ```text
//! U_1, S'   = QR(U_0 S_0 + D V_0)
//! S''       = S' − U_1ᵀ D V_0
//! V_1, S_1ᵀ = QR(V_0 S''ᵀ + Dᵀ U_1)
//! ```
//!
//! The result equals the orthogonal projection of `A_0 + D` onto the tangent
//! space at any point with column space `U_1` and row space `V_0`; see
//! [`tangent_project`].

use crate::error::{Error, Result};
use crate::linalg::{thin_qr_with, DenseMatrix, LowRankFactor, QrSigns};
use crate::tolerances::RANK_DROP;

#[derive(Debug, Clone)]
pub struct RetractionResult {
    /// `A_1 = U_1 S_1 V_1ᵀ`.
    pub point: LowRankFactor,
    /// Orthonormal basis of the column space of `(A_0 + D) V_0`.
    pub intermediate_u1: DenseMatrix,
    /// Right factor of the input point.
    pub input_v0: DenseMatrix,
    /// `S'` was numerically singular; `U_1` contains completed directions.
    pub singular_step: bool,
}

pub fn retract(a0: &LowRankFactor, d: &DenseMatrix) -> Result<RetractionResult> {
    retract_with(a0, d, QrSigns::default())
}

/// [`retract`] with an explicit QR sign convention. The assembled result does
/// not depend on the convention.
pub fn retract_with(a0: &LowRankFactor, d: &DenseMatrix, signs: QrSigns) -> Result<RetractionResult> {
    check_step_shape(a0, d)?;
    let (u0, s0, v0) = (a0.u(), a0.s(), a0.v());

    let dv0 = d * v0;
    let (u1, s_prime) = thin_qr_with(&(&(u0 * s0) + &dv0), signs)?;
    let s_second = &s_prime - &u1.tr_mul(&dv0)?;
    let right = &v0.mul_tr(&s_second)? + &d.tr_mul(&u1)?;
    let (v1, s1_t) = thin_qr_with(&right, signs)?;

    Ok(RetractionResult {
        point: LowRankFactor::from_parts(u1.clone(), s1_t.transpose(), v1),
        intermediate_u1: u1,
        input_v0: v0.clone(),
        singular_step: is_singular_triangle(&s_prime),
    })
}

/// Two-QR form of the same retraction:
/// `U_1 = QR((A_0 + D) V_0)`, `V_1, S_1ᵀ = QR((A_0 + D)ᵀ U_1)`.
///
/// Kept as an independent code path for differential testing.
pub fn retract_via_products(a0: &LowRankFactor, d: &DenseMatrix, signs: QrSigns) -> Result<LowRankFactor> {
    check_step_shape(a0, d)?;
    let z = &a0.assemble() + d;
    let (u1, _) = thin_qr_with(&(&z * a0.v()), signs)?;
    let (v1, s1_t) = thin_qr_with(&z.tr_mul(&u1)?, signs)?;
    Ok(LowRankFactor::from_parts(u1, s1_t.transpose(), v1))
}

fn check_step_shape(a0: &LowRankFactor, d: &DenseMatrix) -> Result<()> {
    if d.shape() != a0.shape() {
        return Err(Error::shape(
            "retract",
            format!("step of shape {:?}", a0.shape()),
            format!("{:?}", d.shape()),
        ));
    }
    Ok(())
}

fn is_singular_triangle(r: &DenseMatrix) -> bool {
    let diag: Vec<f64> = (0..r.rows()).map(|i| r[(i, i)].abs()).collect();
    let max = diag.iter().copied().fold(0.0, f64::max);
    max == 0.0 || diag.iter().any(|&x| x <= RANK_DROP * max)
}

/// Orthogonal projection onto the tangent space with column space `U` and row
/// space `V`: `UUᵀZ + ZVVᵀ − UUᵀZVVᵀ`.
pub fn tangent_project(u: &DenseMatrix, v: &DenseMatrix, z: &DenseMatrix) -> Result<DenseMatrix> {
    if z.shape() != (u.rows(), v.rows()) {
        return Err(Error::shape(
            "tangent_project",
            format!("{}x{}", u.rows(), v.rows()),
            format!("{:?}", z.shape()),
        ));
    }
    u.require_orthonormal("U")?;
    v.require_orthonormal("V")?;
    let ut_z = u.tr_mul(z)?;
    let z_v = z * v;
    let left = u * &ut_z;
    let right = z_v.mul_tr(v)?;
    let both = (u * &(&ut_z * v)).mul_tr(v)?;
    Ok(&(&left + &right) - &both)
}

#[derive(Debug, Clone)]
pub struct NormalResidual {
    pub matrix: DenseMatrix,
    pub spectral: f64,
    pub frobenius: f64,
}

/// `(I − U_1U_1ᵀ) X_* (I − V_0V_0ᵀ)` and its norms.
pub fn normal_residual(u1: &DenseMatrix, v0: &DenseMatrix, xstar: &DenseMatrix) -> Result<NormalResidual> {
    let matrix = normal_component(u1, v0, xstar)?;
    Ok(NormalResidual {
        spectral: matrix.spectral_norm(),
        frobenius: matrix.frobenius_norm(),
        matrix,
    })
}

pub(crate) fn normal_component(u: &DenseMatrix, v: &DenseMatrix, x: &DenseMatrix) -> Result<DenseMatrix> {
    if x.shape() != (u.rows(), v.rows()) || u.cols() > u.rows() || v.cols() > v.rows() {
        return Err(Error::shape(
            "normal_residual",
            format!("{}x{}", u.rows(), v.rows()),
            format!("{:?}", x.shape()),
        ));
    }
    let left = x - &(u * &u.tr_mul(x)?);
    Ok(&left - &(&left * v).mul_tr(v)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> DenseMatrix {
        DenseMatrix::unit(n, i)
    }

    #[test]
    fn zero_step_returns_input() {
        let a0 = LowRankFactor::new(e(3, 0), DenseMatrix::diag(&[2.0]), e(2, 1)).unwrap();
        let res = retract(&a0, &DenseMatrix::zeros(3, 2)).unwrap();
        assert!((&res.point.assemble() - &a0.assemble()).frobenius_norm() < 1e-15);
        assert!(!res.singular_step);
    }

    #[test]
    fn hand_executed_step() {
        // A0 = E11, D = E12.
        let a0 = LowRankFactor::new(e(2, 0), DenseMatrix::identity(1), e(2, 0)).unwrap();
        let d = DenseMatrix::from_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        let res = retract(&a0, &d).unwrap();
        let h = 1.0 / 2f64.sqrt();
        assert_eq!(res.intermediate_u1, e(2, 0));
        let v1 = res.point.v();
        assert!((v1[(0, 0)] - h).abs() < 1e-15 && (v1[(1, 0)] - h).abs() < 1e-15);
        assert!((res.point.s()[(0, 0)] - 2f64.sqrt()).abs() < 1e-15);
        let expected = DenseMatrix::from_rows(&[&[1.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!((&res.point.assemble() - &expected).frobenius_norm() < 1e-15);
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let a0 = LowRankFactor::new(e(2, 0), DenseMatrix::identity(1), e(2, 0)).unwrap();
        assert!(matches!(retract(&a0, &DenseMatrix::zeros(3, 2)), Err(Error::InvalidShape { .. })));
        assert!(tangent_project(&e(2, 0), &e(2, 0), &DenseMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn pure_normal_direction_projects_to_zero() {
        let e22 = DenseMatrix::from_rows(&[&[0.0, 0.0], &[0.0, 1.0]]).unwrap();
        let p = tangent_project(&e(2, 0), &e(2, 0), &e22).unwrap();
        assert_eq!(p.frobenius_norm(), 0.0);
    }

    #[test]
    fn tangent_vectors_are_fixed() {
        let u = DenseMatrix::from_fn(4, 2, |i, j| if i == j { 1.0 } else { 0.0 });
        let v = DenseMatrix::from_fn(3, 2, |i, j| if i == 2 - j { 1.0 } else { 0.0 });
        let m = DenseMatrix::from_rows(&[&[1.0, -2.0], &[0.5, 3.0]]).unwrap();
        let z = (&u * &m).mul_tr(&v).unwrap();
        let p = tangent_project(&u, &v, &z).unwrap();
        assert!((&p - &z).frobenius_norm() < 1e-15);
    }

    #[test]
    fn normal_residual_of_identity() {
        let res = normal_residual(&e(2, 0), &e(2, 0), &DenseMatrix::identity(2)).unwrap();
        let e22 = DenseMatrix::from_rows(&[&[0.0, 0.0], &[0.0, 1.0]]).unwrap();
        assert_eq!(res.matrix, e22);
        assert!((res.spectral - 1.0).abs() < 1e-15);
        assert!((res.frobenius - 1.0).abs() < 1e-15);
    }

    #[test]
    fn normal_residual_vanishes_in_span() {
        let u = e(3, 1);
        let v = e(2, 0);
        let x = (&u * &DenseMatrix::diag(&[4.0])).mul_tr(&v).unwrap();
        assert_eq!(normal_residual(&u, &v, &x).unwrap().frobenius, 0.0);
    }

    #[test]
    fn lost_rank_is_flagged() {
        // U0 S0 + D V0 = 0 kills the only column.
        let a0 = LowRankFactor::new(e(2, 0), DenseMatrix::identity(1), e(2, 0)).unwrap();
        let d = DenseMatrix::from_rows(&[&[-1.0, 0.0], &[0.0, 0.0]]).unwrap();
        let res = retract(&a0, &d).unwrap();
        assert!(res.singular_step);
        assert!(res.point.u().orthonormality_defect() < 1e-15);
        assert!(res.point.assemble().frobenius_norm() < 1e-15);
    }
}
