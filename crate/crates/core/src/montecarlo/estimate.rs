use rayon::prelude::*;
use serde::Serialize;

use crate::adversary::attack_round;
use crate::protocol::{ProtocolError, Result, RoundMode};
use crate::quantum::Outcome;
use crate::rng;

use super::oracle::{oracle_for, Oracle};
use super::scenario::{EstimateMode, Quantity, Scenario};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Estimate {
    pub quantity: Quantity,
    pub mode: EstimateMode,
    /// The fixed angle, when the scenario has one.
    pub theta: Option<f64>,
    pub mean: f64,
    pub std_error: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub trials: u64,
    pub oracle: Option<Oracle>,
    /// `(mean − oracle) / std_error`; zero when the difference is below
    /// rounding, absent when only the error vanishes.
    pub z: Option<f64>,
}

/// Runs `scenario.trials` independent trials. Trial `t` uses seed
/// `split(seed, t)`, so the result depends only on `(scenario, seed)`.
pub fn run(scenario: &Scenario, seed: u64) -> Result<Estimate> {
    scenario.validate()?;
    let values: Vec<f64> = (0..scenario.trials)
        .into_par_iter()
        .map(|t| trial(scenario, rng::split(seed, t)))
        .collect::<Result<_>>()?;
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let std_error = match scenario.mode {
        EstimateMode::Sampled => (mean * (1.0 - mean) / n).max(0.0).sqrt(),
        EstimateMode::Exact => {
            let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0).max(1.0);
            (var / n).sqrt()
        }
    };
    let oracle = oracle_for(scenario);
    let z = oracle.as_ref().and_then(|o| {
        let d = mean - o.value;
        if d.abs() < 1e-12 {
            Some(0.0)
        } else if std_error > 0.0 {
            Some(d / std_error)
        } else {
            None
        }
    });
    Ok(Estimate {
        quantity: scenario.quantity,
        mode: scenario.mode,
        theta: match scenario.config.theta_mode {
            crate::protocol::ThetaMode::Fixed(t) => Some(t),
            crate::protocol::ThetaMode::Random => None,
        },
        mean,
        std_error,
        ci_low: mean - 1.96 * std_error,
        ci_high: mean + 1.96 * std_error,
        trials: scenario.trials,
        oracle,
        z,
    })
}

/// One estimate per angle in `grid`, each at fixed `θ`. Point `i` uses
/// master seed `split(seed, i)`.
pub fn sweep(scenario: &Scenario, grid: &[f64], seed: u64) -> Result<Vec<Estimate>> {
    grid.iter()
        .enumerate()
        .map(|(i, t)| run(&scenario.at_theta(*t), rng::split(seed, i as u64)))
        .collect()
}

fn trial(scenario: &Scenario, seed: u64) -> Result<f64> {
    let config = scenario.config.clone().with_seed(seed);
    let mode = match scenario.mode {
        EstimateMode::Exact => RoundMode::Postselected,
        EstimateMode::Sampled => RoundMode::Sampled,
    };
    let run = attack_round(&config, scenario.strategy.as_ref(), mode)?;
    let first = || {
        run.round
            .records
            .first()
            .ok_or_else(|| ProtocolError::InvalidConfig("the attacked round issued no challenge".into()))
    };
    let pass = |r: &crate::protocol::ChallengeRecord| match r.outcome {
        Some(o) => f64::from(u8::from(o == Outcome::Pass)),
        None => r.prob_pass,
    };
    Ok(match scenario.quantity {
        Quantity::Acceptance => match scenario.mode {
            EstimateMode::Exact => run.round.analytic_acceptance,
            EstimateMode::Sampled => f64::from(u8::from(run.round.accepted())),
        },
        Quantity::ChallengePass => pass(first()?),
        Quantity::Detection => 1.0 - pass(first()?),
        Quantity::KeyFidelity => run
            .eve
            .as_ref()
            .and_then(|e| e.accumulated_key.first())
            .map(|(_, f)| *f)
            .ok_or_else(|| ProtocolError::InvalidConfig("the strategy records no stolen key".into()))?,
    })
}
