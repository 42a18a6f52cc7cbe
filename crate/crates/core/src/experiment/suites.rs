//! Randomised property suites run by the `verify-bounds` scenario.
//!
//! Every case draws from its own random stream, keyed by the suite seed and
//! the case index, so a failing case can be replayed in isolation.

use crate::bounds::{
    audit_step, certify, f_components, left_cotangent2, normal_component_bound, omega_membership, pi_map,
    roundoff_slack_p, OmegaParams, PQPair,
};
use crate::contractions::{make_random_linear_contraction, FixedPointMap, LinearContractionSpec, SpuriousMap};
use crate::error::Result;
use crate::iteration::{initial_point, run, step, RunConfig};
use crate::linalg::{thin_qr, DenseMatrix, LowRankFactor};
use crate::retraction::{normal_residual, retract, tangent_project};
use crate::rng;
use crate::tolerances::INEQUALITY_REL_SLACK;

use rand::Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// Largest violation or discrepancy observed, in the suite's own units.
    pub worst: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn case_rng(seed: u64, suite: u64, case: usize) -> rand_chacha::ChaCha8Rng {
    rng::stream(seed ^ (suite << 48), case as u64)
}

fn random_factor<R: Rng>(rng: &mut R, n: usize, m: usize, r: usize) -> Result<LowRankFactor> {
    let u = rng::random_orthonormal(rng, n, r);
    let v = rng::random_orthonormal(rng, m, r);
    let mut s: Vec<f64> = (0..r).map(|_| rng.random_range(0.5..5.0)).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    LowRankFactor::new(u, DenseMatrix::diag(&s), v)
}

/// The retraction equals the tangent projection of `A_0 + D` at `(U_1, V_0)`.
pub fn retraction_identity(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport {
        name: "retraction identity",
        cases,
        failures: 0,
        worst: 0.0,
    };
    for case in 0..cases {
        let mut rng = case_rng(seed, 1, case);
        let (n, m) = (rng.random_range(2..=20), rng.random_range(2..=20));
        let r = rng.random_range(1..=n.min(m));
        let a0 = random_factor(&mut rng, n, m, r)?;
        let d = rng::gaussian_matrix(&mut rng, n, m);
        let res = retract(&a0, &d)?;
        let z = &a0.assemble() + &d;
        let projected = tangent_project(&res.intermediate_u1, a0.v(), &z)?;
        let rel = (&res.point.assemble() - &projected).frobenius_norm() / projected.frobenius_norm();
        report.worst = report.worst.max(rel);
        if !(rel <= 1e-12) {
            report.failures += 1;
        }
    }
    Ok(report)
}

/// `‖(I − U_1U_1ᵀ) X_* (I − V_0V_0ᵀ)‖₂ ≤ ‖H‖₂ · max tan∠(V_0, V_*)`.
pub fn normal_bound(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport {
        name: "normal-component bound",
        cases,
        failures: 0,
        worst: f64::NEG_INFINITY,
    };
    for case in 0..cases {
        let mut rng = case_rng(seed, 2, case);
        let (n, m) = (rng.random_range(2..=30), rng.random_range(2..=30));
        let r = rng.random_range(1..=n.min(m).min(8));
        let q = rng.random_range(1..=r);
        let xstar = random_factor(&mut rng, n, m, q)?;
        let v0 = rng::random_orthonormal(&mut rng, m, r);
        let h = rng::gaussian_matrix(&mut rng, n, m).scale(rng.random_range(0.01..1.0));
        let (u1, _) = thin_qr(&(&(&xstar.assemble() + &h) * &v0))?;
        let actual = normal_residual(&u1, &v0, &xstar.assemble())?.spectral;
        let bound = normal_component_bound(&h, &v0, xstar.v())?;
        report.worst = report.worst.max(actual - bound);
        if !(actual <= bound + 1e-10) {
            report.failures += 1;
        }
    }
    Ok(report)
}

/// Certified runs of small linear contractions stay below `p_0/c_* · s^k`,
/// and every step satisfies the one-step `p`/`q` recursion where it applies.
pub fn certified_domination(seed: u64, cases: usize) -> Result<SuiteReport> {
    let mut report = SuiteReport {
        name: "p/q bound domination",
        cases,
        failures: 0,
        worst: 0.0,
    };
    for case in 0..cases {
        let case_seed = seed.wrapping_add(case as u64);
        let spec = LinearContractionSpec::geometric(10, 10, 3, 4.0, 1.0, 0.6, case_seed);
        let map = make_random_linear_contraction(&spec)?;
        let y0 = initial_point(map.fixed_point(), 3, 0.05, case_seed)?;
        let mut cfg = RunConfig::new(3);
        cfg.max_iters = 150;
        let trace = run(&map, &y0, &cfg)?;
        let first = &trace.records[0];
        let cert = certify(map.delta().powi(2), first.p, first.q)?;
        let s_r = spec.singular_values[2];
        let slack = roundoff_slack_p(map.fixed_point().frobenius_norm(), s_r);
        let mut ok = cert.holds;
        for rec in &trace.records {
            if let Some(bound) = cert.bound_p(rec.k) {
                let excess = (rec.p - bound) / bound;
                report.worst = report.worst.max(excess);
                ok &= rec.p <= bound * (1.0 + INEQUALITY_REL_SLACK) + slack;
            }
        }
        for w in trace.records.windows(2) {
            let prev = PQPair { p: w[0].p, q: w[0].q };
            let next = PQPair { p: w[1].p, q: w[1].q };
            ok &= audit_step(cert.s, prev, next, slack).passed();
        }
        if !ok {
            report.failures += 1;
        }
    }
    Ok(report)
}

/// `π(step(Y)) = f(π(Y))` for the 2×2 spurious map at δ = 0.9, the angle
/// ordering `ctg²φ_{R,1} < ctg²φ_{L,1}` when `δ‖Y − X_*‖ > 1`, and
/// `f(Ω) ⊆ Ω`.
pub fn f_pi_commutation(seed: u64, cases: usize) -> Result<SuiteReport> {
    let delta = 0.9;
    let params = OmegaParams::new(delta, 0.05, 0.2)?;
    let map = SpuriousMap::new(delta)?;
    let mut report = SuiteReport {
        name: "f/pi commutation",
        cases,
        failures: 0,
        worst: 0.0,
    };
    for case in 0..cases {
        let mut rng = case_rng(seed, 4, case);
        let angle = |rng: &mut rand_chacha::ChaCha8Rng| rng.random_range(0.3..std::f64::consts::PI - 0.3);
        let (ua, va) = (angle(&mut rng), angle(&mut rng));
        let y = LowRankFactor::new(
            DenseMatrix::column(&[ua.cos(), ua.sin()]),
            DenseMatrix::diag(&[rng.random_range(0.1..3.0)]),
            DenseMatrix::column(&[va.cos(), va.sin()]),
        )?;
        let before = pi_map(&y, delta)?;
        let next = step(&map, &y, 0)?.result.point;
        let after = pi_map(&next, delta)?;
        let predicted = f_components(before, delta);
        let gap = (after.p - predicted.p).abs().max((after.q - predicted.q).abs());
        report.worst = report.worst.max(gap);
        let mut ok = gap <= 1e-10;

        let dist = (&y.assemble() - map.fixed_point()).frobenius_norm();
        if delta * dist > 1.0 && after.q > 0.0 {
            ok &= after.q < left_cotangent2(&next)?;
        }

        let p = rng.random_range(0.0..2.0);
        let state = PQPair {
            p,
            q: rng.random_range(0.0..=params.q_max.min(params.s_ratio * p)),
        };
        ok &= omega_membership(f_components(state, delta), &params);
        if !ok {
            report.failures += 1;
        }
    }
    Ok(report)
}

pub fn all_suites(seed: u64, cases: usize) -> Result<Vec<SuiteReport>> {
    Ok(vec![
        retraction_identity(seed, cases)?,
        normal_bound(seed, cases)?,
        certified_domination(seed, cases)?,
        f_pi_commutation(seed, cases)?,
    ])
}
