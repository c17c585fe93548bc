use std::f64::consts::PI;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::adversary::EveStrategy;
use crate::montecarlo::{EstimateMode, Quantity, Scenario};
use crate::protocol::{ChallengeEnsemble, SessionConfig, ThetaMode};

use super::CliError;

pub const DEFAULT_TRIALS: u64 = 10_000;

/// A declarative scenario file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(rename = "K")]
    pub k: usize,
    #[serde(rename = "K_prime")]
    pub k_prime: usize,
    pub theta_mode: ThetaMode,
    /// Strategy name, or `"none"` / absent for an honest run.
    #[serde(default)]
    pub strategy: Option<String>,
    #[serde(default)]
    pub strategy_params: Value,
    #[serde(default = "default_quantity")]
    pub quantity: Quantity,
    #[serde(default)]
    pub trials: Option<u64>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub mode: EstimateMode,
    #[serde(default)]
    pub challenge_ensemble: ChallengeEnsemble,
    #[serde(default)]
    pub sweep: Option<Sweep>,
}

fn default_quantity() -> Quantity {
    Quantity::Acceptance
}

/// A grid over the fixed rotation angle, either listed or evenly spaced
/// from `start` to `end` inclusive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sweep {
    pub parameter: String,
    #[serde(default)]
    pub grid: Option<Vec<f64>>,
    #[serde(default)]
    pub points: Option<usize>,
    #[serde(default)]
    pub start: Option<f64>,
    #[serde(default)]
    pub end: Option<f64>,
}

impl Sweep {
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        if self.parameter != "theta" {
            return Err(CliError::Config(format!("cannot sweep over '{}'; only 'theta' is supported", self.parameter)));
        }
        match (&self.grid, self.points) {
            (Some(g), None) if !g.is_empty() => Ok(g.clone()),
            (None, Some(n)) if n >= 2 => {
                let (a, b) = (self.start.unwrap_or(0.0), self.end.unwrap_or(PI / 2.0));
                Ok((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect())
            }
            _ => Err(CliError::Config("sweep needs either a non-empty 'grid' or 'points' >= 2".into())),
        }
    }
}

impl ScenarioFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn strategy(&self) -> Result<Option<EveStrategy>, CliError> {
        match self.strategy.as_deref() {
            None | Some("none") => Ok(None),
            Some(name) => Ok(Some(EveStrategy::from_name_params(name, &self.strategy_params)?)),
        }
    }

    pub fn session_config(&self, seed: u64) -> Result<SessionConfig, CliError> {
        let c = SessionConfig::new(self.k, self.k_prime, self.theta_mode, seed).with_ensemble(self.challenge_ensemble);
        c.validate()?;
        Ok(c)
    }

    pub fn scenario(&self, seed: u64, trials: u64) -> Result<Scenario, CliError> {
        let s = Scenario {
            config: self.session_config(seed)?,
            strategy: self.strategy()?,
            quantity: self.quantity,
            trials,
            mode: self.mode,
        };
        s.validate()?;
        Ok(s)
    }
}
