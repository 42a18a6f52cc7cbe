//! Projected fixed-point driver `Y_{k+1} = I(Y_k, Φ(Y_k) − Y_k)`.
//!
//! Record `k` describes the iterate `Y_k`. Its error `E_k = Y_k − X_*` is
//! split with respect to a tangent space that contains `Y_k`: for `k ≥ 1`
//! the intermediate space `(U_1, V_0)` of the step that produced `Y_k`, and
//! for `k = 0` the tangent space at `Y_0` itself. In both cases
//! `‖E_k‖² = ε_τ² + ε_⊥²` with `ε_⊥ = ‖P^⊥(X_*)‖`.

use crate::contractions::FixedPointMap;
use crate::error::{Error, Result};
use crate::linalg::{singular_values, truncated_svd, DenseMatrix, LowRankFactor};
use crate::retraction::{normal_component, retract, tangent_project, RetractionResult};
use crate::rng;
use crate::tolerances::{STAGNATION_REL_CHANGE, STAGNATION_WINDOW};

#[derive(Debug, Clone, PartialEq)]
pub struct StepRecord {
    pub k: usize,
    /// `‖Y_k − X_*‖_F`.
    pub err_total: f64,
    pub err_tangent: f64,
    /// Frobenius norm of the normal component.
    pub err_normal: f64,
    /// Spectral norm of the normal component.
    pub err_normal_spectral: f64,
    /// `‖Y_k − X_*‖_F² / s_r²`.
    pub p: f64,
    /// `Σ_j s_j² sin²φ_{R,j} / s_r²`.
    pub q: f64,
    pub sin2_r: Vec<f64>,
    pub sin2_l: Vec<f64>,
    /// Smallest singular value of the iterate.
    pub smallest_kept_sv: f64,
    /// The step producing this iterate hit a numerically singular `S'`.
    pub singular_step: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    Converged,
    MaxIters,
    Diverged,
    Stagnated,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::Converged => "converged",
            StopReason::MaxIters => "max_iters",
            StopReason::Diverged => "diverged",
            StopReason::Stagnated => "stagnated",
        }
    }
}

#[derive(Debug, Clone)]
pub struct IterationTrace {
    pub records: Vec<StepRecord>,
    pub stop_reason: StopReason,
    pub final_point: LowRankFactor,
}

impl IterationTrace {
    pub fn last(&self) -> &StepRecord {
        self.records.last().expect("trace is never empty")
    }

    pub fn err_total(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.err_total).collect()
    }

    pub fn err_normal(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.err_normal).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub rank: usize,
    pub max_iters: usize,
    /// Stop once `err_total ≤ tol`.
    pub tol: f64,
    /// Stop as diverged once `err_total` exceeds this or becomes non-finite.
    pub divergence_ceiling: f64,
    pub stagnation_window: usize,
    pub stagnation_rel_change: f64,
}

impl RunConfig {
    pub fn new(rank: usize) -> Self {
        Self {
            rank,
            max_iters: 500,
            tol: 1e-12,
            divergence_ceiling: 1e12,
            stagnation_window: STAGNATION_WINDOW,
            stagnation_rel_change: STAGNATION_REL_CHANGE,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.rank == 0
            || self.stagnation_window == 0
            || !(self.tol >= 0.0)
            || !(self.divergence_ceiling > 0.0)
            || !(self.stagnation_rel_change >= 0.0)
        {
            return Err(Error::InvalidParameter(format!("invalid run config {self:?}")));
        }
        Ok(())
    }
}

/// Error norms of an iterate split against a tangent space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorSplit {
    pub total: f64,
    pub tangent: f64,
    pub normal: f64,
    pub normal_spectral: f64,
}

/// Splits `y − X_*` against the tangent space with column space `u` and row
/// space `v`; `y` must lie in that space.
pub fn split_error(u: &DenseMatrix, v: &DenseMatrix, y: &DenseMatrix, xstar: &DenseMatrix) -> Result<ErrorSplit> {
    let diff = y.try_sub(xstar)?;
    let tangent = tangent_project(u, v, &diff)?.frobenius_norm();
    let normal = normal_component(u, v, xstar)?;
    Ok(ErrorSplit {
        total: diff.frobenius_norm(),
        tangent,
        normal: normal.frobenius_norm(),
        normal_spectral: normal.spectral_norm(),
    })
}

/// Tangent/normal split of `Y_1 − X_*` at the intermediate point `(U_1, V_0)`.
pub fn decompose_error(result: &RetractionResult, xstar: &DenseMatrix) -> Result<ErrorSplit> {
    split_error(&result.intermediate_u1, &result.input_v0, &result.point.assemble(), xstar)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComponentAngles {
    /// `sin²φ_{L,j} = ‖(I − UUᵀ) U_* e_j‖²`.
    pub sin2_l: Vec<f64>,
    /// `sin²φ_{R,j} = ‖e_jᵀ V_*ᵀ (I − VVᵀ)‖²`.
    pub sin2_r: Vec<f64>,
}

/// Per-direction squared sines between the factors of `y` and of `X_*`.
pub fn component_angles(y: &LowRankFactor, xstar: &LowRankFactor) -> Result<ComponentAngles> {
    if y.shape() != xstar.shape() {
        return Err(Error::shape(
            "component_angles",
            format!("{:?}", xstar.shape()),
            format!("{:?}", y.shape()),
        ));
    }
    Ok(ComponentAngles {
        sin2_l: residual_column_norms(y.u(), xstar.u())?,
        sin2_r: residual_column_norms(y.v(), xstar.v())?,
    })
}

fn residual_column_norms(basis: &DenseMatrix, target: &DenseMatrix) -> Result<Vec<f64>> {
    let resid = target - &(basis * &basis.tr_mul(target)?);
    Ok((0..resid.cols())
        .map(|j| resid.col_to_vec(j).iter().map(|x| x * x).sum())
        .collect())
}

/// `Σ_j s_j² sin²φ_{R,j}` for the diagonal of `X_*`'s core.
pub fn weighted_sin2(xstar: &LowRankFactor, sin2_r: &[f64]) -> f64 {
    xstar.diagonal().iter().zip(sin2_r).map(|(s, w)| s * s * w).sum()
}

/// Smallest singular value `s_r` of `X_*`'s core.
pub fn smallest_fixed_point_sv(xstar: &LowRankFactor) -> f64 {
    xstar.diagonal().iter().copied().fold(f64::INFINITY, f64::min)
}

fn make_record(
    k: usize,
    y: &LowRankFactor,
    frame_u: &DenseMatrix,
    frame_v: &DenseMatrix,
    map: &dyn FixedPointMap,
    singular_step: bool,
) -> Result<StepRecord> {
    let xstar_factor = map.fixed_point_factor();
    let split = split_error(frame_u, frame_v, &y.assemble(), map.fixed_point())?;
    let angles = component_angles(y, xstar_factor)?;
    let s_r = smallest_fixed_point_sv(xstar_factor);
    let s_r2 = s_r * s_r;
    let smallest_kept_sv = singular_values(y.s()).last().copied().unwrap_or(0.0);
    Ok(StepRecord {
        k,
        err_total: split.total,
        err_tangent: split.tangent,
        err_normal: split.normal,
        err_normal_spectral: split.normal_spectral,
        p: split.total * split.total / s_r2,
        q: weighted_sin2(xstar_factor, &angles.sin2_r) / s_r2,
        sin2_r: angles.sin2_r,
        sin2_l: angles.sin2_l,
        smallest_kept_sv,
        singular_step,
    })
}

/// Record for the starting point, split at its own tangent space.
pub fn initial_record(map: &dyn FixedPointMap, y0: &LowRankFactor) -> Result<StepRecord> {
    make_record(0, y0, y0.u(), y0.v(), map, false)
}

#[derive(Debug, Clone)]
pub struct StepOutcome {
    pub result: RetractionResult,
    /// Diagnostics of the new iterate, index `k + 1`.
    pub record: StepRecord,
}

/// One projected step from `y_k` (iteration index `k`).
pub fn step(map: &dyn FixedPointMap, y_k: &LowRankFactor, k: usize) -> Result<StepOutcome> {
    let current = y_k.assemble();
    let direction = map.apply_at(&current, k)?.try_sub(&current)?;
    let result = retract(y_k, &direction)?;
    let record = make_record(
        k + 1,
        &result.point,
        &result.intermediate_u1,
        &result.input_v0,
        map,
        result.singular_step,
    )?;
    Ok(StepOutcome { result, record })
}

pub fn run(map: &dyn FixedPointMap, y0: &LowRankFactor, cfg: &RunConfig) -> Result<IterationTrace> {
    cfg.validate()?;
    if y0.rank() != cfg.rank {
        return Err(Error::InvalidRank {
            rank: y0.rank(),
            max: cfg.rank,
        });
    }
    let mut y = y0.clone();
    let mut records = vec![initial_record(map, y0)?];
    let stop_reason = loop {
        let last = records.last().expect("non-empty");
        if !last.err_total.is_finite() || last.err_total > cfg.divergence_ceiling {
            break StopReason::Diverged;
        }
        if last.err_total <= cfg.tol {
            break StopReason::Converged;
        }
        if is_stagnated(&records, cfg) {
            break StopReason::Stagnated;
        }
        if last.k >= cfg.max_iters {
            break StopReason::MaxIters;
        }
        let outcome = step(map, &y, last.k)?;
        y = outcome.result.point;
        records.push(outcome.record);
    };
    Ok(IterationTrace {
        records,
        stop_reason,
        final_point: y,
    })
}

fn is_stagnated(records: &[StepRecord], cfg: &RunConfig) -> bool {
    if records.len() <= cfg.stagnation_window {
        return false;
    }
    let current = records.last().expect("non-empty").err_total;
    records[records.len() - 1 - cfg.stagnation_window..]
        .iter()
        .all(|r| (r.err_total - current).abs() <= cfg.stagnation_rel_change * current)
}

/// `truncated_svd(X_* + η·E, r)` with `E` a seeded Gaussian matrix of unit
/// Frobenius norm.
pub fn initial_point(xstar: &DenseMatrix, rank: usize, eta: f64, seed: u64) -> Result<LowRankFactor> {
    let (n, m) = xstar.shape();
    let mut rng = rng::stream(seed, rng::INITIAL_POINT_STREAM);
    let e = rng::gaussian_matrix(&mut rng, n, m);
    let e = e.scale(1.0 / e.frobenius_norm());
    truncated_svd(&(xstar + &e.scale(eta)), rank)
}
