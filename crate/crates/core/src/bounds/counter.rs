//! Reduced dynamics of projected iteration for the 2×2 spurious map.
//!
//! A rank-1 iterate `Y` is summarised by `π(Y) = {‖Y − X_*‖²/d_*² − 1, ctg²φ_R(Y)}`
//! with `d_* = 1/√(1 − δ²)` and `φ_R` the angle between the row factor of `Y`
//! and `e_1`. One projected step acts on this pair through a map `f`.

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, LowRankFactor};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PQPair {
    pub p: f64,
    pub q: f64,
}

/// Parameters of the invariant set
/// `Ω = {p ≥ 0, 0 ≤ q ≤ q_max, q ≤ s_ratio·p}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OmegaParams {
    pub delta: f64,
    pub d_star: f64,
    pub q_max: f64,
    pub s_ratio: f64,
}

impl OmegaParams {
    /// Requires `0 < δ < 1`, `δ² + δ⁶ > 1` and
    /// `(1 + q_max/(δ²d_*²)) / (δ⁴d_*²) ≤ δ² − s_ratio/(δ²d_*²)`.
    pub fn new(delta: f64, q_max: f64, s_ratio: f64) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParameter(format!("delta {delta} not in (0, 1)")));
        }
        if !(q_max > 0.0 && s_ratio > 0.0) {
            return Err(Error::InvalidParameter("q_max and s_ratio must be positive".into()));
        }
        let d2 = 1.0 / (1.0 - delta * delta);
        let (dl2, dl4) = (delta * delta, delta.powi(4));
        if dl2 + delta.powi(6) <= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "delta {delta} violates delta^2 + delta^6 > 1"
            )));
        }
        let lhs = (1.0 + q_max / (dl2 * d2)) / (dl4 * d2);
        let rhs = dl2 - s_ratio / (dl2 * d2);
        if lhs > rhs {
            return Err(Error::InvalidParameter(format!(
                "q_max {q_max} and s_ratio {s_ratio} too large for delta {delta}"
            )));
        }
        Ok(Self {
            delta,
            d_star: d2.sqrt(),
            q_max,
            s_ratio,
        })
    }
}

/// Membership in Ω; `p = 0` is only allowed together with `q = 0`.
pub fn omega_membership(state: PQPair, params: &OmegaParams) -> bool {
    let PQPair { p, q } = state;
    p >= 0.0 && (0.0..=params.q_max).contains(&q) && q <= params.s_ratio * p
}

fn require_omega(state: PQPair, params: &OmegaParams) -> Result<()> {
    if omega_membership(state, params) {
        Ok(())
    } else {
        Err(Error::OutsideDomain(format!("{state:?} is not in Omega for {params:?}")))
    }
}

/// The map `f` that satisfies `π(Y_1) = f(π(Y_0))`:
///
/// `p_1 = (1 + δ²p) / (1 + q/(δ²d_*²(1 + p))) − 1`,
/// `q_1 = q / (δ⁴d_*⁴(1 + p)²)`.
///
/// No domain check; any `p > −1` works.
pub fn f_components(state: PQPair, delta: f64) -> PQPair {
    let PQPair { p, q } = state;
    let dl2 = delta * delta;
    let d2 = 1.0 / (1.0 - dl2);
    let dist2 = d2 * (1.0 + p);
    PQPair {
        p: (1.0 + dl2 * p) / (1.0 + q / (dl2 * dist2)) - 1.0,
        q: q / (dl2 * dl2 * dist2 * dist2),
    }
}

/// [`f_components`] restricted to Ω.
pub fn f_map(state: PQPair, params: &OmegaParams) -> Result<PQPair> {
    require_omega(state, params)?;
    Ok(f_components(state, params.delta))
}

/// Variant whose second component is `q / (δ⁴d_*²(1 + p))`. It does not
/// commute with `π` (the exact factor is `d_*⁴(1 + p)²`), but it bounds the
/// same ratios and is kept for comparison.
pub fn f_map_stated(state: PQPair, params: &OmegaParams) -> Result<PQPair> {
    require_omega(state, params)?;
    let PQPair { p, q } = state;
    let dl2 = params.delta * params.delta;
    let d2 = params.d_star * params.d_star;
    Ok(PQPair {
        p: (1.0 + dl2 * p) / (1.0 + q / (dl2 * d2 * (1.0 + p))) - 1.0,
        q: q / (dl2 * dl2 * d2 * (1.0 + p)),
    })
}

fn require_rank_one_2x2(y: &LowRankFactor) -> Result<()> {
    if y.shape() != (2, 2) || y.rank() != 1 {
        return Err(Error::shape(
            "pi_map",
            "2x2 rank-1 factor",
            format!("{:?} rank {}", y.shape(), y.rank()),
        ));
    }
    Ok(())
}

/// `π(Y) = {‖Y − X_*‖²_F / d_*² − 1, ctg²φ_R(Y)}` for `X_* = diag(1, 0)`.
pub fn pi_map(y: &LowRankFactor, delta: f64) -> Result<PQPair> {
    require_rank_one_2x2(y)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("delta {delta} not in (0, 1)")));
    }
    let v = y.v();
    let (cos2, sin2) = (v[(0, 0)] * v[(0, 0)], v[(1, 0)] * v[(1, 0)]);
    if sin2 == 0.0 {
        return Err(Error::OutsideDomain("row factor is parallel to e1".into()));
    }
    let mut diff = y.assemble();
    diff[(0, 0)] -= 1.0;
    let d2 = 1.0 / (1.0 - delta * delta);
    Ok(PQPair {
        p: diff.frobenius_norm().powi(2) / d2 - 1.0,
        q: cos2 / sin2,
    })
}

/// `ctg²φ_L(Y)`, the column-factor counterpart of the `q` coordinate.
pub fn left_cotangent2(y: &LowRankFactor) -> Result<f64> {
    require_rank_one_2x2(y)?;
    let u = y.u();
    let sin2 = u[(1, 0)] * u[(1, 0)];
    if sin2 == 0.0 {
        return Err(Error::OutsideDomain("column factor is parallel to e1".into()));
    }
    Ok(u[(0, 0)] * u[(0, 0)] / sin2)
}

/// Fixed point `δd_*·X_⊥` of projected iteration with the spurious map, and
/// its distance `d_*` from `X_*`.
pub fn spurious_attractor(delta: f64) -> Result<(DenseMatrix, f64)> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("delta {delta} not in (0, 1)")));
    }
    let d_star = 1.0 / (1.0 - delta * delta).sqrt();
    Ok((DenseMatrix::diag(&[0.0, delta * d_star]), d_star))
}
