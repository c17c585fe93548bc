use serde::Serialize;

use crate::adversary::EveStrategy;
use crate::analysis::{detection_bound, ghz_detection, p1, p2};
use crate::protocol::ThetaMode;

use super::scenario::{Quantity, Scenario};

/// A closed-form expectation and where it comes from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Oracle {
    pub value: f64,
    pub formula: &'static str,
}

/// The closed-form value the analysis predicts for `scenario`, if any.
///
/// Averages over a random angle assume `θ` uniform on `[0, 2π)`.
pub fn oracle_for(scenario: &Scenario) -> Option<Oracle> {
    let k_prime = scenario.config.k_prime as u32;
    let theta = match scenario.config.theta_mode {
        ThetaMode::Fixed(t) => Some(t),
        ThetaMode::Random => None,
    };
    let o = |value, formula| Some(Oracle { value, formula });
    // pass probability of a single challenge and where it comes from
    let (pass, formula): (f64, &'static str) = match (&scenario.strategy, scenario.quantity) {
        (_, Quantity::KeyFidelity) => {
            return match (&scenario.strategy, theta) {
                (Some(EveStrategy::QuarterPiKeySteal), Some(t)) if (p2(t) - 1.0).abs() < 1e-12 => o(1.0, "P2(pi/4) = 1"),
                (Some(EveStrategy::FixedAngleKeySteal { theta: known, phi1: None, phi2: None }), Some(t))
                    if (known - t).abs() < 1e-12 =>
                {
                    o(p2(t), "P2 = (|cos t| + |sin t|)^2 / 2")
                }
                _ => None,
            }
        }
        (None, _) => (1.0, "honest round passes"),
        (Some(EveStrategy::RandomImpersonation { .. }), _) => (0.5, "mean F = 1/2"),
        (Some(EveStrategy::GhzInject), _) => match theta {
            Some(t) => (1.0 - ghz_detection(t), "1 - sin^2(t)/2"),
            None => (0.75, "1 - 1/4"),
        },
        (Some(EveStrategy::FixedAngleImpersonate { theta: known }), _) => match theta {
            Some(t) if (known - t).abs() < 1e-12 => (p1(t), "P1 = max{1 - sin^2/2, 1 - cos^2/2}"),
            _ => return None,
        },
        _ => return None,
    };
    match scenario.quantity {
        Quantity::ChallengePass => o(pass, formula),
        Quantity::Detection => o(1.0 - pass, formula),
        Quantity::Acceptance => match &scenario.strategy {
            Some(EveStrategy::RandomImpersonation { .. }) => o(detection_bound(k_prime), "(1/2)^K'"),
            None => o(1.0, formula),
            _ => o(pass.powi(k_prime as i32), "per-challenge pass ^ K'"),
        },
        Quantity::KeyFidelity => unreachable!(),
    }
}
