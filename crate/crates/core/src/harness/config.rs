use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::channels::ChannelKind;
use crate::dynamics::QubitNoiseParams;
use crate::error::{Error, Result};
use crate::measures::DEFAULT_SHOTS;

/// Environment variable that overrides the configured sampling seed.
pub const SEED_ENV: &str = "TEMPOCORR_SEED";

pub const DEFAULT_ZERO_TOL: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", deny_unknown_fields)]
pub enum Scenario {
    /// Ideal channel of strength `1 - exp(-gamma t)`.
    ChannelSweep { kind: ChannelKind, gamma: f64 },
    /// System qubit exchanging excitations with an environment qubit.
    FreeEvolution {
        coupling: f64,
        system: QubitNoiseParams<f64>,
        environment: QubitNoiseParams<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dt: Option<f64>,
    },
    /// The gate-compiled two-branch circuit of the channel; with `shots`, the
    /// branch is drawn per shot.
    CompiledChannelSweep {
        kind: ChannelKind,
        gamma: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        shots: Option<u64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShotMode {
    #[serde(default = "default_shots")]
    pub shots: u64,
    pub seed: u64,
}

fn default_shots() -> u64 {
    DEFAULT_SHOTS
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub scenario: Scenario,
    pub t_max: f64,
    pub num_points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shot_mode: Option<ShotMode>,
    /// Threshold below which a measure counts as dead.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_tol: Option<f64>,
}

fn finite_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be finite and positive, got {v}")))
    }
}

fn finite_non_negative(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("{name} must be finite and non-negative, got {v}")))
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        finite_positive("t_max", self.t_max)?;
        if self.num_points < 2 {
            return Err(Error::Config(format!(
                "num_points must be at least 2, got {}",
                self.num_points
            )));
        }
        if let Some(tol) = self.zero_tol {
            finite_positive("zero_tol", tol)?;
        }
        if let Some(sm) = &self.shot_mode {
            if sm.shots == 0 {
                return Err(Error::Config("shot_mode.shots must be positive".into()));
            }
        }
        match &self.scenario {
            Scenario::ChannelSweep { gamma, .. } => finite_non_negative("gamma", *gamma),
            Scenario::CompiledChannelSweep { gamma, shots, .. } => {
                if *shots == Some(0) {
                    return Err(Error::Config("shots must be positive".into()));
                }
                finite_non_negative("gamma", *gamma)
            }
            Scenario::FreeEvolution {
                coupling,
                system,
                environment,
                dt,
            } => {
                finite_positive("coupling", *coupling)?;
                system
                    .validate()
                    .and_then(|_| environment.validate())
                    .map_err(|e| Error::Config(e.to_string()))?;
                if let Some(dt) = dt {
                    finite_positive("dt", *dt)?;
                }
                Ok(())
            }
        }
    }

    /// Uniform grid `0, t_max/(n-1), …, t_max`.
    pub fn times(&self) -> Vec<f64> {
        let n = self.num_points;
        (0..n)
            .map(|k| self.t_max * k as f64 / (n - 1) as f64)
            .collect()
    }

    pub fn label(&self) -> String {
        if let Some(name) = &self.name {
            return name.clone();
        }
        match &self.scenario {
            Scenario::ChannelSweep { kind, gamma } => format!("{kind} (gamma = {gamma})"),
            Scenario::CompiledChannelSweep { kind, gamma, .. } => {
                format!("compiled {kind} (gamma = {gamma})")
            }
            Scenario::FreeEvolution { coupling, .. } => format!("free evolution (J = {coupling})"),
        }
    }

    /// Shot count and seed when sampling is enabled.
    pub fn sampling(&self) -> Option<ShotMode> {
        let scenario_shots = match &self.scenario {
            Scenario::CompiledChannelSweep { shots, .. } => *shots,
            _ => None,
        };
        match (self.shot_mode, scenario_shots) {
            (Some(sm), Some(n)) => Some(ShotMode { shots: n, ..sm }),
            (Some(sm), None) => Some(sm),
            (None, Some(n)) => Some(ShotMode { shots: n, seed: 0 }),
            (None, None) => None,
        }
    }

    /// Configured threshold, or three standard errors of the `B_max`
    /// estimator in shot mode.
    pub fn effective_zero_tol(&self) -> f64 {
        if let Some(tol) = self.zero_tol {
            return tol;
        }
        match self.sampling() {
            Some(sm) => {
                let se = 2.0 / (2.0 * 2f64.sqrt() - 2.0) / (sm.shots as f64).sqrt();
                (3.0 * se).max(DEFAULT_ZERO_TOL)
            }
            None => DEFAULT_ZERO_TOL,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        match (&mut self.shot_mode, &self.scenario) {
            (Some(sm), _) => sm.seed = seed,
            (None, Scenario::CompiledChannelSweep { shots: Some(n), .. }) => {
                self.shot_mode = Some(ShotMode { shots: *n, seed })
            }
            _ => {}
        }
        self
    }
}

/// Parses one config object or an array of them; unknown keys are errors.
pub fn parse_configs(text: &str) -> Result<Vec<SweepConfig>> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Config(format!("invalid JSON: {e}")))?;
    let items = match value {
        serde_json::Value::Array(items) => items,
        other => vec![other],
    };
    if items.is_empty() {
        return Err(Error::Config("no sweep configurations".into()));
    }
    items
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            let cfg: SweepConfig =
                serde_json::from_value(v).map_err(|e| Error::Config(format!("config {i}: {e}")))?;
            cfg.validate()
                .map_err(|e| Error::Config(format!("config {i}: {}", e.root())))?;
            Ok(cfg)
        })
        .collect()
}

pub fn load_configs(path: &Path) -> Result<Vec<SweepConfig>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
    parse_configs(&text)
}

/// Reads [`SEED_ENV`], if set.
pub fn seed_from_env() -> Result<Option<u64>> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Error::Config(format!("{SEED_ENV} must be an unsigned integer, got '{v}'"))),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(Error::Config(format!("{SEED_ENV}: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEPOL: &str = r#"{
        "scenario": {"type": "ChannelSweep", "kind": "Depolarizing", "gamma": 1.0},
        "t_max": 1.0,
        "num_points": 51
    }"#;

    #[test]
    fn parses_single_and_list() {
        let one = parse_configs(DEPOL).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].times().len(), 51);
        assert_eq!(*one[0].times().last().unwrap(), 1.0);
        let two = parse_configs(&format!("[{DEPOL}, {DEPOL}]")).unwrap();
        assert_eq!(two.len(), 2);
    }

    #[test]
    fn free_evolution_fields() {
        let text = r#"{
            "scenario": {"type": "FreeEvolution", "coupling": 1.0,
                "system": {"gamma_A": 0.224, "gamma_P": 0.038},
                "environment": {"gamma_A": 0.359, "gamma_P": 0.083}},
            "t_max": 10.0, "num_points": 11
        }"#;
        let cfg = &parse_configs(text).unwrap()[0];
        match &cfg.scenario {
            Scenario::FreeEvolution { system, .. } => assert_eq!(system.gamma_a, 0.224),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let typo = DEPOL.replace("num_points", "num_point");
        assert!(matches!(parse_configs(&typo), Err(Error::Config(_))));
        let nested = DEPOL.replace("\"gamma\": 1.0", "\"gamma\": 1.0, \"gama\": 2");
        assert!(parse_configs(&nested).is_err());
        let bad_kind = DEPOL.replace("Depolarizing", "Bitflip");
        assert!(parse_configs(&bad_kind).is_err());
    }

    #[test]
    fn invalid_values_are_rejected() {
        assert!(parse_configs(&DEPOL.replace("51", "1")).is_err());
        assert!(parse_configs(&DEPOL.replace("\"t_max\": 1.0", "\"t_max\": -1.0")).is_err());
        assert!(parse_configs("[]").is_err());
        assert!(parse_configs("{").is_err());
    }

    #[test]
    fn sampling_and_tolerance() {
        let mut cfg = parse_configs(DEPOL).unwrap().remove(0);
        assert_eq!(cfg.sampling(), None);
        assert_eq!(cfg.effective_zero_tol(), DEFAULT_ZERO_TOL);
        cfg.shot_mode = Some(ShotMode { shots: 10_000, seed: 1 });
        let tol = cfg.effective_zero_tol();
        assert!(tol > 0.07 && tol < 0.08);
        assert_eq!(cfg.with_seed(9).sampling().unwrap().seed, 9);
    }
}
