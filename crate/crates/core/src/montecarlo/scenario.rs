use serde::{Deserialize, Serialize};

use crate::adversary::EveStrategy;
use crate::protocol::{ProtocolError, Result, SessionConfig, ThetaMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    /// The attacked round is accepted.
    Acceptance,
    /// The first challenge of the attacked round passes.
    ChallengePass,
    /// The first challenge of the attacked round fails.
    Detection,
    /// Fidelity with `|Φ⁺⟩` of the first pair Eve tried to steal.
    KeyFidelity,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimateMode {
    /// Each trial contributes the exact conditional probability.
    #[default]
    Exact,
    /// Each trial contributes a sampled 0/1 outcome.
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub config: SessionConfig,
    pub strategy: Option<EveStrategy>,
    pub quantity: Quantity,
    pub trials: u64,
    #[serde(default)]
    pub mode: EstimateMode,
}

impl Scenario {
    pub fn new(config: SessionConfig, strategy: Option<EveStrategy>, quantity: Quantity, trials: u64) -> Self {
        Self { config, strategy, quantity, trials, mode: EstimateMode::Exact }
    }

    pub fn sampled(mut self) -> Self {
        self.mode = EstimateMode::Sampled;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(ProtocolError::InvalidConfig("trials must be at least 1".into()));
        }
        self.config.validate()?;
        if let Some(s) = &self.strategy {
            s.validate()?;
        }
        if self.quantity == Quantity::KeyFidelity && self.mode == EstimateMode::Sampled {
            return Err(ProtocolError::InvalidConfig("key fidelity has no sampled form".into()));
        }
        Ok(())
    }

    /// The scenario at fixed angle `theta`. Strategies that carry their own
    /// knowledge of the angle are updated to match.
    pub fn at_theta(&self, theta: f64) -> Scenario {
        let mut s = self.clone();
        s.config.theta_mode = ThetaMode::Fixed(theta);
        s.strategy = s.strategy.map(|st| match st {
            EveStrategy::FixedAngleImpersonate { .. } => EveStrategy::FixedAngleImpersonate { theta },
            EveStrategy::FixedAngleKeySteal { phi1, phi2, .. } => EveStrategy::FixedAngleKeySteal { theta, phi1, phi2 },
            other => other,
        });
        s
    }
}
