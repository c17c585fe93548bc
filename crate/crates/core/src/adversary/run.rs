use std::f64::consts::FRAC_PI_2;

use serde::Serialize;

use crate::protocol::{Adversary, EveState, Result, RoundMode, RoundResult, Session, SessionConfig, ThetaMode};

use super::strategy::EveStrategy;

/// Rounds played against one strategy on a fresh pair of keys.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AttackRun {
    /// Rounds the strategy used to set itself up.
    pub preparation: Vec<RoundResult>,
    /// The attacked round.
    pub round: RoundResult,
    pub eve: Option<EveState>,
    /// For strategies that rely on a particular angle, whether the keys
    /// actually use it.
    pub precondition_met: Option<bool>,
}

/// Plays the preparation rounds sampled, then the attacked round in `mode`.
pub fn attack_round(config: &SessionConfig, strategy: Option<&EveStrategy>, mode: RoundMode) -> Result<AttackRun> {
    let mut session = Session::new(config.clone())?;
    let mut adversary = strategy.map(|s| s.build()).transpose()?;
    let mut preparation = Vec::new();
    for _ in 0..strategy.map_or(0, |s| s.preparation_rounds()) {
        let r = session.run_round(RoundMode::Sampled, adversary.as_mut().map(|a| a.as_mut() as &mut dyn Adversary))?;
        let accepted = r.accepted();
        preparation.push(r);
        if !accepted {
            let round = preparation.pop().expect("just pushed");
            return Ok(AttackRun {
                preparation,
                round,
                eve: adversary.map(|a| a.eve_state()),
                precondition_met: strategy.and_then(|s| precondition(s, config)),
            });
        }
    }
    let round = session.run_round(mode, adversary.as_mut().map(|a| a.as_mut() as &mut dyn Adversary))?;
    Ok(AttackRun {
        preparation,
        round,
        eve: adversary.map(|a| a.eve_state()),
        precondition_met: strategy.and_then(|s| precondition(s, config)),
    })
}

/// A sampled run together with the exact acceptance probability of the
/// attacked round under the same keys, challenges and Eve randomness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SessionTranscript {
    pub config: SessionConfig,
    pub strategy: Option<EveStrategy>,
    #[serde(flatten)]
    pub run: AttackRun,
    pub analytic_acceptance: f64,
}

pub fn run_transcript(config: &SessionConfig, strategy: Option<&EveStrategy>) -> Result<SessionTranscript> {
    let run = attack_round(config, strategy, RoundMode::Sampled)?;
    let exact = attack_round(config, strategy, RoundMode::Postselected)?;
    Ok(SessionTranscript {
        config: config.clone(),
        strategy: strategy.cloned(),
        run,
        analytic_acceptance: exact.round.analytic_acceptance,
    })
}

fn precondition(strategy: &EveStrategy, config: &SessionConfig) -> Option<bool> {
    let wanted = match strategy {
        EveStrategy::QuarterPiKeySteal => None,
        EveStrategy::FixedAngleImpersonate { theta } | EveStrategy::FixedAngleKeySteal { theta, .. } => Some(*theta),
        _ => return None,
    };
    Some(match (config.theta_mode, wanted) {
        (ThetaMode::Random, _) => false,
        (ThetaMode::Fixed(t), None) => ((t / FRAC_PI_2).rem_euclid(1.0) - 0.5).abs() < 1e-9,
        (ThetaMode::Fixed(t), Some(w)) => (t - w).abs() < 1e-12,
    })
}
