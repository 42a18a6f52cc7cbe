//! Convergence bounds for projected iteration and the dynamics of the 2×2
//! counter-example.
//!
//! Quantities are normalised by the smallest singular value `s_r` of `X_*`:
//! `s = δ²`, `p_k = ‖Y_k − X_*‖²_F / s_r²` and
//! `q_k = Σ_j s_j² sin²φ_{R,j}(Y_k) / s_r²`.

mod counter;

pub use counter::{
    f_components, f_map, f_map_stated, left_cotangent2, omega_membership, pi_map, spurious_attractor, OmegaParams,
    PQPair,
};

use crate::error::{Error, Result};
use crate::linalg::{principal_angles, DenseMatrix};
use crate::tolerances::{INEQUALITY_REL_SLACK, ROUNDOFF_FACTOR};

/// `‖H‖₂ · max tan∠(V_0, V_*)`, an upper bound on the spectral norm of the
/// normal component `(I − U_1U_1ᵀ) X_* (I − V_0V_0ᵀ)` where `U_1` spans
/// `(X_* + H) V_0`.
///
/// Returns `+∞` when some direction of `V_*` is orthogonal to `V_0`.
pub fn normal_component_bound(h: &DenseMatrix, v0: &DenseMatrix, vstar: &DenseMatrix) -> Result<f64> {
    let tan = principal_angles(v0, vstar)?.max_tangent();
    if tan.is_infinite() {
        return Ok(f64::INFINITY);
    }
    Ok(h.spectral_norm() * tan)
}

/// Outcome of the sufficient condition `4 p_0 s / ((1 − q_0)² (1 − s)) < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SufficientCondition {
    pub holds: bool,
    pub value: f64,
}

fn check_ranges(s: f64, p0: f64, q0: f64) -> Result<()> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::InvalidParameter(format!("s = {s} not in (0, 1)")));
    }
    if !(p0 > 0.0 && p0.is_finite()) {
        return Err(Error::InvalidParameter(format!("p0 = {p0} must be positive")));
    }
    if !(0.0..1.0).contains(&q0) {
        return Err(Error::InvalidParameter(format!("q0 = {q0} not in [0, 1)")));
    }
    Ok(())
}

pub fn check_sufficient_condition(s: f64, p0: f64, q0: f64) -> Result<SufficientCondition> {
    check_ranges(s, p0, q0)?;
    let value = 4.0 * p0 / ((1.0 - q0) * (1.0 - q0)) * s / (1.0 - s);
    Ok(SufficientCondition { holds: value < 1.0, value })
}

fn certified_value(s: f64, p0: f64, q0: f64) -> Result<f64> {
    let cond = check_sufficient_condition(s, p0, q0)?;
    if !cond.holds {
        return Err(Error::NoCertificate {
            condition_value: cond.value,
        });
    }
    Ok(cond.value)
}

/// Smaller root of `c² − (1 − q_0) c + p_0 s / (1 − s) = 0`, in the
/// cancellation-free form `p_0 s / ((1 − q_0)(1 − s)) · 2 / (1 + √(1 − b))`.
pub fn c_star(s: f64, p0: f64, q0: f64) -> Result<f64> {
    let b = certified_value(s, p0, q0)?;
    Ok(p0 / (1.0 - q0) * s / (1.0 - s) * 2.0 / (1.0 + (1.0 - b).sqrt()))
}

/// Larger root `(1 − q_0)(1 + √(1 − b)) / 2` of the same quadratic.
///
/// The induction behind `p_k ≤ p_0 s^k / c` only uses that `c ≤ 1` solves
/// `c = 1 − q_0 − p_0 s / ((1 − s) c)`, so this root gives a valid and much
/// sharper bound.
pub fn c_star_upper(s: f64, p0: f64, q0: f64) -> Result<f64> {
    let b = certified_value(s, p0, q0)?;
    Ok((1.0 - q0) * (1.0 + (1.0 - b).sqrt()) / 2.0)
}

/// Constant `c` in `‖Y_k − X_*‖_F ≤ c ‖Y_0 − X_*‖_F δ^k`, equal to
/// `1/√c⁺` with `c⁺` from [`c_star_upper`]. Tends to 1 as `Y_0 → X_*`.
pub fn corollary_constant(delta: f64, y0_err: f64, s_r: f64, weighted_sin2: f64) -> Result<f64> {
    if !(s_r > 0.0) {
        return Err(Error::InvalidParameter(format!("s_r = {s_r} must be positive")));
    }
    let s_r2 = s_r * s_r;
    let upper = c_star_upper(delta * delta, y0_err * y0_err / s_r2, weighted_sin2 / s_r2)?;
    Ok(1.0 / upper.sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundCertificate {
    pub holds: bool,
    pub condition_value: f64,
    pub c_star: Option<f64>,
    pub corollary_c: Option<f64>,
    pub s: f64,
    pub p0: f64,
    pub q0: f64,
}

impl BoundCertificate {
    /// `p_0 / c_* · s^k` when certified.
    pub fn bound_p(&self, k: usize) -> Option<f64> {
        self.c_star.map(|c| self.p0 / c * self.s.powi(k as i32))
    }

    /// The `k`-th corollary bound on `‖Y_k − X_*‖_F` given `‖Y_0 − X_*‖_F`.
    pub fn bound_err(&self, y0_err: f64, k: usize) -> Option<f64> {
        self.corollary_c.map(|c| c * y0_err * self.s.sqrt().powi(k as i32))
    }
}

/// Evaluates the sufficient condition for a run with contraction factor
/// `delta`; never fails on an uncertified start, only on invalid input.
pub fn certify(s: f64, p0: f64, q0: f64) -> Result<BoundCertificate> {
    let cond = check_sufficient_condition(s, p0, q0)?;
    let (c_star, corollary_c) = if cond.holds {
        (Some(c_star(s, p0, q0)?), Some(1.0 / c_star_upper(s, p0, q0)?.sqrt()))
    } else {
        (None, None)
    };
    Ok(BoundCertificate {
        holds: cond.holds,
        condition_value: cond.value,
        c_star,
        corollary_c,
        s,
        p0,
        q0,
    })
}

/// `p_0 / c_* · s^k` for `k = 0..=k_max`.
pub fn bound_sequence(cert: &BoundCertificate, k_max: usize) -> Result<Vec<f64>> {
    if !cert.holds {
        return Err(Error::NoCertificate {
            condition_value: cert.condition_value,
        });
    }
    Ok((0..=k_max).filter_map(|k| cert.bound_p(k)).collect())
}

/// Absolute slack, in `p` units, for inequalities between squared errors:
/// `(ROUNDOFF_FACTOR · ε · ‖X_*‖_F)² / s_r²`.
pub fn roundoff_slack_p(xstar_frobenius: f64, s_r: f64) -> f64 {
    let floor = ROUNDOFF_FACTOR * f64::EPSILON * xstar_frobenius;
    floor * floor / (s_r * s_r)
}

/// Check of one recorded step against
/// `p_{k+1} ≤ s p_k + (s p_k − q_{k+1}) q_k / (1 − q_k − q_{k+1})` and
/// `q_{k+1} ≤ s p_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepAudit {
    /// The step satisfies `s p_k + q_k ≤ 1` and `1 − q_k − q_{k+1} > 0`.
    pub applicable: bool,
    pub p_rhs: f64,
    pub p_ok: bool,
    pub q_ok: bool,
}

impl StepAudit {
    pub fn passed(&self) -> bool {
        !self.applicable || (self.p_ok && self.q_ok)
    }
}

pub fn audit_step(s: f64, prev: PQPair, next: PQPair, abs_slack: f64) -> StepAudit {
    let denom = 1.0 - prev.q - next.q;
    let applicable = s * prev.p + prev.q <= 1.0 && denom > 0.0;
    let p_rhs = s * prev.p + (s * prev.p - next.q) * prev.q / denom;
    let q_rhs = s * prev.p;
    let within = |lhs: f64, rhs: f64| lhs <= rhs + INEQUALITY_REL_SLACK * rhs.abs() + abs_slack;
    StepAudit {
        applicable,
        p_rhs,
        p_ok: within(next.p, p_rhs),
        q_ok: within(next.q, q_rhs),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::DenseMatrix;

    /// Smaller root of `c = 1 − q0 − p0 s / ((1 − s) c)` on `(0, (1 − q0)/2]`
    /// by bisection; the map `c ↦ c² − (1 − q0)c + k` decreases there.
    fn bisect_small_root(s: f64, p0: f64, q0: f64) -> f64 {
        let k = p0 * s / (1.0 - s);
        let g = |c: f64| c * c - (1.0 - q0) * c + k;
        let (mut lo, mut hi) = (0.0, (1.0 - q0) / 2.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn normal_bound_examples() {
        let e1 = DenseMatrix::unit(2, 0);
        let e2 = DenseMatrix::unit(2, 1);
        let h = 1.0 / 2f64.sqrt();
        let diag = DenseMatrix::column(&[h, h]);
        assert_eq!(normal_component_bound(&DenseMatrix::zeros(2, 2), &diag, &e1).unwrap(), 0.0);
        let hmat = DenseMatrix::diag(&[0.1, 0.05]);
        assert!((normal_component_bound(&hmat, &diag, &e1).unwrap() - 0.1).abs() < 1e-14);
        assert_eq!(normal_component_bound(&hmat, &e2, &e1).unwrap(), f64::INFINITY);
    }

    #[test]
    fn sufficient_condition_examples() {
        let c = check_sufficient_condition(0.25, 0.1, 0.0).unwrap();
        assert!(c.holds);
        assert!((c.value - 0.4 / 3.0).abs() < 1e-15);
        assert!(check_sufficient_condition(0.25, 1e-300, 0.0).unwrap().value < 1e-299);
        let c = check_sufficient_condition(0.5, 0.3, 0.0).unwrap();
        assert!(!c.holds);
        assert!((c.value - 1.2).abs() < 1e-15);
        assert!(check_sufficient_condition(1.0, 0.1, 0.0).is_err());
        assert!(check_sufficient_condition(0.5, 0.1, 1.0).is_err());
        assert!(check_sufficient_condition(0.5, 0.0, 0.0).is_err());
    }

    #[test]
    fn c_star_matches_bisection() {
        let c = c_star(0.25, 0.1, 0.0).unwrap();
        assert!((c - bisect_small_root(0.25, 0.1, 0.0)).abs() < 1e-12);
        assert!((c - 0.0345255).abs() < 1e-6, "{c}");
    }

    #[test]
    fn c_star_small_p0_limit() {
        let (s, q0) = (0.36, 0.2);
        let p0 = 1e-12;
        let c = c_star(s, p0, q0).unwrap();
        assert!(c > 0.0 && c < 1e-11);
        let limit = (1.0 - q0) * (1.0 - s) / s;
        assert!((p0 / c - limit).abs() < 1e-9 * limit);
    }

    #[test]
    fn both_roots_solve_the_fixed_point_equation() {
        for &(s, p0, q0) in &[(0.25, 0.1, 0.0), (0.64, 0.02, 0.3), (0.81, 0.001, 0.5)] {
            for c in [c_star(s, p0, q0).unwrap(), c_star_upper(s, p0, q0).unwrap()] {
                let rhs = 1.0 - q0 - p0 * s / ((1.0 - s) * c);
                assert!((c - rhs).abs() < 1e-12);
                assert!(c > 0.0 && c <= 1.0 - q0);
            }
        }
    }

    #[test]
    fn uncertified_start_has_no_constants() {
        assert!(matches!(c_star(0.5, 0.3, 0.0), Err(Error::NoCertificate { .. })));
        let cert = certify(0.5, 0.3, 0.0).unwrap();
        assert!(!cert.holds);
        assert_eq!(cert.bound_p(0), None);
        assert!(bound_sequence(&cert, 3).is_err());
        assert!(matches!(corollary_constant(0.8, 10.0, 1.0, 0.0), Err(Error::NoCertificate { .. })));
    }

    #[test]
    fn corollary_constant_tends_to_one() {
        let c = corollary_constant(0.8, 1e-8, 1.0, 0.0).unwrap();
        assert!((c - 1.0).abs() < 1e-12);
        let c = corollary_constant(0.8, 0.1, 2.0, 0.0).unwrap();
        assert!(c > 1.0);
    }

    #[test]
    fn bound_sequence_is_decreasing_from_above_p0() {
        let cert = certify(0.64, 0.05, 0.01).unwrap();
        let seq = bound_sequence(&cert, 10).unwrap();
        assert_eq!(seq.len(), 11);
        assert!(seq[0] >= cert.p0);
        assert!(seq.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn audit_examples() {
        let prev = PQPair { p: 0.1, q: 0.01 };
        let good = PQPair { p: 0.02, q: 0.005 };
        let a = audit_step(0.25, prev, good, 0.0);
        assert!(a.applicable && a.passed());
        let bad = PQPair { p: 0.2, q: 0.005 };
        assert!(!audit_step(0.25, prev, bad, 0.0).passed());
        let far = PQPair { p: 10.0, q: 0.5 };
        assert!(!audit_step(0.25, far, good, 0.0).applicable);
    }
}
