//! Experiment harness: builds a scenario, runs it and writes its artefacts.

mod config;
mod plot;
pub mod suites;
mod trace_file;

pub use config::{ExperimentConfig, Scenario, SvPreset};
pub use plot::{emit_plot, render_svg, PlotOptions};
pub use suites::SuiteReport;
pub use trace_file::{
    csv_header, emit_certificate, emit_csv, format_value, parse_csv, parse_key_values, read_csv, trace_rows,
    write_certificate, write_csv, TraceFileRow,
};

use crate::bounds::{certify, BoundCertificate};
use crate::contractions::{
    make_random_linear_contraction, FixedPointMap, LinearContractionSpec, PerturbedMap, SpuriousMap,
};
use crate::error::{Error, Result};
use crate::iteration::{initial_point, run, IterationTrace, RunConfig, StepRecord, StopReason};
use crate::linalg::{DenseMatrix, LowRankFactor};

/// Process exit status of an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success,
    /// The run diverged, stalled, or settled somewhere other than `X_*`;
    /// for verify-bounds, some property failed.
    NotConverged,
    ConfigError,
    IoError,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Success => 0,
            ExitStatus::NotConverged => 1,
            ExitStatus::ConfigError => 2,
            ExitStatus::IoError => 3,
        }
    }

    pub fn for_error(err: &Error) -> Self {
        match err {
            Error::Io(_) => ExitStatus::IoError,
            _ => ExitStatus::ConfigError,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentOutcome {
    pub trace: Option<IterationTrace>,
    pub certificate: Option<BoundCertificate>,
    pub suites: Vec<SuiteReport>,
    pub status: ExitStatus,
}

impl ExperimentOutcome {
    /// Human-readable summary lines.
    pub fn summary(&self) -> Vec<String> {
        let mut lines = Vec::new();
        if let Some(trace) = &self.trace {
            let last = trace.last();
            lines.push(format!("stop_reason={}", trace.stop_reason.as_str()));
            lines.push(format!("steps={}", last.k));
            lines.push(format!("final_err_total={}", format_value(last.err_total)));
            lines.push(format!("final_err_normal={}", format_value(last.err_normal)));
            lines.push(format!("final_smallest_sv={}", format_value(last.smallest_kept_sv)));
        }
        if let Some(cert) = &self.certificate {
            lines.push(format!("certified={}", cert.holds));
            lines.push(format!("condition_value={}", format_value(cert.condition_value)));
        }
        for s in &self.suites {
            lines.push(format!(
                "{} {}: {} cases, {} failures, worst {:.3e}",
                if s.passed() { "PASS" } else { "FAIL" },
                s.name,
                s.cases,
                s.failures,
                s.worst
            ));
        }
        lines
    }
}

/// Certificate for a run that starts at `first` with contraction factor
/// `delta`. Starts outside the theorem's range (`p_0 = 0` or `q_0 ≥ 1`) are
/// reported as uncertified rather than as errors.
pub fn run_certificate(delta: f64, first: &StepRecord) -> Result<BoundCertificate> {
    let s = delta * delta;
    if first.p > 0.0 && first.q < 1.0 {
        return certify(s, first.p, first.q);
    }
    Ok(BoundCertificate {
        holds: false,
        condition_value: if first.p > 0.0 { f64::INFINITY } else { 0.0 },
        c_star: None,
        corollary_c: None,
        s,
        p0: first.p,
        q0: first.q,
    })
}

/// Default counter-example start `σ_0 · v vᵀ` with `v = (cos φ, sin φ)`.
pub fn counterexample_start(sigma: f64, angle_deg: f64) -> Result<LowRankFactor> {
    let (sin, cos) = if angle_deg == 90.0 {
        // Keep the start exactly on the X_⊥ axis.
        (1.0, 0.0)
    } else {
        angle_deg.to_radians().sin_cos()
    };
    let v = DenseMatrix::column(&[cos, sin]);
    LowRankFactor::new(v.clone(), DenseMatrix::diag(&[sigma]), v)
}

fn run_config(cfg: &ExperimentConfig) -> RunConfig {
    let mut rc = RunConfig::new(cfg.r);
    rc.max_iters = cfg.max_iters;
    rc.tol = cfg.tol;
    rc
}

fn trajectory(cfg: &ExperimentConfig) -> Result<(IterationTrace, Option<Vec<f64>>)> {
    let rc = run_config(cfg);
    match cfg.scenario {
        Scenario::Typical | Scenario::Staircase => {
            let spec = LinearContractionSpec {
                n: cfg.n,
                m: cfg.m,
                delta: cfg.delta,
                singular_values: cfg.singular_values.clone(),
                seed: cfg.seed,
                operator: cfg.operator,
            };
            let map = make_random_linear_contraction(&spec)?;
            let y0 = initial_point(map.fixed_point(), cfg.r, cfg.eta, cfg.seed)?;
            let guides = (cfg.scenario == Scenario::Staircase).then(|| cfg.singular_values.clone());
            Ok((run(&map, &y0, &rc)?, guides))
        }
        Scenario::Counterexample | Scenario::CounterexamplePerturbed => {
            let inner = SpuriousMap::new(cfg.delta)?;
            let y0 = counterexample_start(cfg.start_sigma, cfg.start_angle_deg)?;
            let trace = match cfg.noise_divisor {
                Some(divisor) if cfg.scenario == Scenario::CounterexamplePerturbed => {
                    let map = PerturbedMap::new(inner, divisor, cfg.seed)?.with_reading(cfg.noise_reading);
                    run(&map, &y0, &rc)?
                }
                _ => run(&inner, &y0, &rc)?,
            };
            Ok((trace, None))
        }
        Scenario::VerifyBounds => unreachable!("verify-bounds has no single trajectory"),
    }
}

/// Runs `cfg` and writes the requested CSV, SVG and certificate files.
///
/// Returns `Err` only for configuration and I/O problems; a run that does
/// not reach `X_*` is reported through [`ExperimentOutcome::status`], after
/// its files have been written.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutcome> {
    cfg.validate()?;
    if cfg.scenario == Scenario::VerifyBounds {
        let suites = suites::all_suites(cfg.seed, cfg.verify_cases)?;
        let status = if suites.iter().all(SuiteReport::passed) {
            ExitStatus::Success
        } else {
            ExitStatus::NotConverged
        };
        return Ok(ExperimentOutcome {
            trace: None,
            certificate: None,
            suites,
            status,
        });
    }

    let (trace, guides) = trajectory(cfg)?;
    let cert = run_certificate(cfg.delta, &trace.records[0])?;
    if let Some(path) = &cfg.csv {
        emit_csv(&trace, Some(&cert), path)?;
    }
    if let Some(path) = &cfg.cert {
        emit_certificate(&cert, path)?;
    }
    if let Some(path) = &cfg.svg {
        let opts = PlotOptions {
            title: format!("{} (delta = {}, seed = {})", cfg.scenario, cfg.delta, cfg.seed),
            guide_lines: guides.unwrap_or_default(),
            ..PlotOptions::default()
        };
        emit_plot(&trace, path, &opts)?;
    }
    let status = match trace.stop_reason {
        StopReason::Converged => ExitStatus::Success,
        _ => ExitStatus::NotConverged,
    };
    Ok(ExperimentOutcome {
        trace: Some(trace),
        certificate: Some(cert),
        suites: Vec::new(),
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(ExitStatus::Success.code(), 0);
        assert_eq!(ExitStatus::NotConverged.code(), 1);
        let io = Error::Io(std::io::Error::other("x"));
        assert_eq!(ExitStatus::for_error(&io).code(), 3);
        assert_eq!(ExitStatus::for_error(&Error::InvalidParameter("x".into())).code(), 2);
    }

    #[test]
    fn counterexample_reaches_the_spurious_point() {
        let out = run_experiment(&ExperimentConfig::preset(Scenario::Counterexample)).unwrap();
        assert_eq!(out.status, ExitStatus::NotConverged);
        let last = out.trace.unwrap().last().clone();
        assert!((last.err_total - 2.0 / 3f64.sqrt()).abs() < 1e-8);
        assert!((last.smallest_kept_sv - 1.0 / 3f64.sqrt()).abs() < 1e-8);
        assert!(!out.certificate.unwrap().holds);
    }

    #[test]
    fn start_on_axis_is_exact() {
        let y = counterexample_start(2.0, 90.0).unwrap();
        assert_eq!(y.v().as_slice(), &[0.0, 1.0]);
    }

    #[test]
    fn verify_bounds_small() {
        let mut cfg = ExperimentConfig::preset(Scenario::VerifyBounds);
        cfg.verify_cases = 5;
        let out = run_experiment(&cfg).unwrap();
        assert_eq!(out.suites.len(), 4);
        assert_eq!(out.status, ExitStatus::Success, "{:?}", out.summary());
    }
}
