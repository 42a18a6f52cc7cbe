use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::contractions::{geometric_values, staircase_values, NoiseReading, OperatorKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Typical,
    Staircase,
    Counterexample,
    CounterexamplePerturbed,
    VerifyBounds,
}

impl Scenario {
    pub const ALL: [Scenario; 5] = [
        Scenario::Typical,
        Scenario::Staircase,
        Scenario::Counterexample,
        Scenario::CounterexamplePerturbed,
        Scenario::VerifyBounds,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Scenario::Typical => "typical",
            Scenario::Staircase => "staircase",
            Scenario::Counterexample => "counterexample",
            Scenario::CounterexamplePerturbed => "counterexample-perturbed",
            Scenario::VerifyBounds => "verify-bounds",
        }
    }

    /// Scenarios built on the 2×2 spurious map.
    pub fn is_counterexample(self) -> bool {
        matches!(self, Scenario::Counterexample | Scenario::CounterexamplePerturbed)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown scenario '{s}'")))
    }
}

/// How the default singular values of `X_*` are generated for a given rank.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SvPreset {
    /// Geometric from `first` to `last`.
    Geometric { first: f64, last: f64 },
    /// `10^{4−2k}`.
    Staircase,
}

impl SvPreset {
    pub fn values(self, r: usize) -> Vec<f64> {
        match self {
            SvPreset::Geometric { first, last } => geometric_values(first, last, r),
            SvPreset::Staircase => staircase_values(r),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub scenario: Scenario,
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub delta: f64,
    pub sv_preset: SvPreset,
    pub singular_values: Vec<f64>,
    pub operator: OperatorKind,
    /// Size of the perturbation of `X_*` giving `Y_0` (linear scenarios).
    pub eta: f64,
    pub seed: u64,
    pub max_iters: usize,
    pub tol: f64,
    /// Counter-example start `σ_0 · v vᵀ` with `v = (cos φ, sin φ)`.
    pub start_sigma: f64,
    pub start_angle_deg: f64,
    pub noise_divisor: Option<f64>,
    pub noise_reading: NoiseReading,
    /// Number of random cases per verify-bounds suite.
    pub verify_cases: usize,
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
    pub cert: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn preset(scenario: Scenario) -> Self {
        let typical_sv = SvPreset::Geometric { first: 10.0, last: 1.0 };
        let mut cfg = Self {
            scenario,
            n: 40,
            m: 40,
            r: 7,
            delta: 0.8,
            sv_preset: typical_sv,
            singular_values: typical_sv.values(7),
            operator: OperatorKind::default(),
            eta: 0.05,
            seed: 7,
            max_iters: 500,
            tol: 1e-12,
            start_sigma: 2.0,
            start_angle_deg: 90.0,
            noise_divisor: None,
            noise_reading: NoiseReading::default(),
            verify_cases: 50,
            csv: None,
            svg: None,
            cert: None,
        };
        match scenario {
            Scenario::Typical | Scenario::VerifyBounds => {}
            Scenario::Staircase => {
                cfg.sv_preset = SvPreset::Staircase;
                cfg.singular_values = SvPreset::Staircase.values(7);
                cfg.max_iters = 1000;
            }
            Scenario::Counterexample | Scenario::CounterexamplePerturbed => {
                cfg.n = 2;
                cfg.m = 2;
                cfg.r = 1;
                cfg.delta = 0.5;
                cfg.singular_values = vec![1.0];
                if scenario == Scenario::CounterexamplePerturbed {
                    cfg.noise_divisor = Some(400.0);
                    cfg.max_iters = 5000;
                    cfg.tol = 1e-10;
                }
            }
        }
        cfg
    }

    /// Changes the rank and regenerates the default singular values for it.
    pub fn set_rank(&mut self, r: usize) {
        self.r = r;
        if !self.scenario.is_counterexample() {
            self.singular_values = self.sv_preset.values(r);
        }
    }

    /// Applies a comma-separated `key=value` list to the singular values:
    /// `preset=geometric|staircase`, `first=…`/`last=…` (geometric ends), or a
    /// 1-based index such as `3=0.5`. Items are applied in order.
    pub fn apply_sv_spec(&mut self, spec: &str) -> Result<()> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("--sv item '{item}' is not key=value")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "preset" => {
                    self.sv_preset = match value {
                        "geometric" => SvPreset::Geometric { first: 10.0, last: 1.0 },
                        "staircase" => SvPreset::Staircase,
                        other => return Err(Error::Parse(format!("unknown sv preset '{other}'"))),
                    };
                    self.singular_values = self.sv_preset.values(self.r);
                }
                "first" | "last" => {
                    let x = parse_f64(value)?;
                    let (mut first, mut last) = match self.sv_preset {
                        SvPreset::Geometric { first, last } => (first, last),
                        SvPreset::Staircase => (10.0, 1.0),
                    };
                    if key == "first" {
                        first = x;
                    } else {
                        last = x;
                    }
                    self.sv_preset = SvPreset::Geometric { first, last };
                    self.singular_values = self.sv_preset.values(self.r);
                }
                index => {
                    let k: usize = index
                        .parse()
                        .map_err(|_| Error::Parse(format!("unknown --sv key '{index}'")))?;
                    if k == 0 || k > self.singular_values.len() {
                        return Err(Error::InvalidParameter(format!(
                            "--sv index {k} out of range 1..={}",
                            self.singular_values.len()
                        )));
                    }
                    self.singular_values[k - 1] = parse_f64(value)?;
                }
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.scenario.is_counterexample() {
            if (self.n, self.m, self.r) != (2, 2, 1) {
                return bad(format!(
                    "{} needs n=m=2, r=1 (got n={}, m={}, r={})",
                    self.scenario, self.n, self.m, self.r
                ));
            }
            if self.singular_values != [1.0] {
                return bad(format!("{} has a fixed X_*; --sv is not supported", self.scenario));
            }
            if !(self.start_sigma > 0.0 && self.start_sigma.is_finite()) {
                return bad(format!("start sigma {} must be positive", self.start_sigma));
            }
        } else {
            if self.r == 0 || self.r > self.n.min(self.m) {
                return Err(Error::InvalidRank {
                    rank: self.r,
                    max: self.n.min(self.m),
                });
            }
            if self.singular_values.len() != self.r {
                return bad(format!(
                    "{} singular values given for rank {}",
                    self.singular_values.len(),
                    self.r
                ));
            }
            if !(self.eta >= 0.0 && self.eta.is_finite()) {
                return bad(format!("eta {} must be non-negative", self.eta));
            }
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return bad(format!("delta {} not in (0, 1)", self.delta));
        }
        if !(self.tol >= 0.0) {
            return bad(format!("tol {} must be non-negative", self.tol));
        }
        if let Some(d) = self.noise_divisor {
            if !(d > 0.0) {
                return bad(format!("noise divisor {d} must be positive"));
            }
        }
        if self.scenario == Scenario::VerifyBounds && self.verify_cases == 0 {
            return bad("verify-bounds needs at least one case".into());
        }
        Ok(())
    }
}

fn parse_f64(s: &str) -> Result<f64> {
    s.parse().map_err(|_| Error::Parse(format!("'{s}' is not a number")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenario_names_round_trip() {
        for sc in Scenario::ALL {
            assert_eq!(sc.as_str().parse::<Scenario>().unwrap(), sc);
        }
        assert!("typo".parse::<Scenario>().is_err());
    }

    #[test]
    fn presets_are_valid() {
        for sc in Scenario::ALL {
            ExperimentConfig::preset(sc).validate().unwrap();
        }
        let stair = ExperimentConfig::preset(Scenario::Staircase);
        assert_eq!(stair.singular_values[0], 100.0);
        assert_eq!(stair.singular_values.len(), 7);
    }

    #[test]
    fn sv_spec_overrides() {
        let mut cfg = ExperimentConfig::preset(Scenario::Typical);
        cfg.set_rank(3);
        assert_eq!(cfg.singular_values.len(), 3);
        cfg.apply_sv_spec("first=8,last=2").unwrap();
        assert!((cfg.singular_values[1] - 4.0).abs() < 1e-12);
        cfg.apply_sv_spec("2=5").unwrap();
        assert_eq!(cfg.singular_values[1], 5.0);
        cfg.apply_sv_spec("preset=staircase").unwrap();
        assert_eq!(cfg.singular_values, vec![100.0, 1.0, 0.01]);
        assert!(cfg.apply_sv_spec("4=1").is_err());
        assert!(cfg.apply_sv_spec("x=1").is_err());
        assert!(cfg.apply_sv_spec("1").is_err());
    }

    #[test]
    fn counterexample_shape_is_enforced() {
        let mut cfg = ExperimentConfig::preset(Scenario::Counterexample);
        cfg.n = 3;
        assert!(cfg.validate().is_err());
        let mut cfg = ExperimentConfig::preset(Scenario::Counterexample);
        cfg.delta = 1.5;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn ascending_singular_values_fail_later_not_here() {
        let mut cfg = ExperimentConfig::preset(Scenario::Typical);
        cfg.apply_sv_spec("1=0.1").unwrap();
        cfg.validate().unwrap();
    }
}
