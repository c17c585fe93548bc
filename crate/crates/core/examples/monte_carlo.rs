//! Seeded Monte Carlo estimates next to their closed forms, and a sweep
//! over the fixed angle.

use std::f64::consts::FRAC_PI_2;

use epr_auth::adversary::EveStrategy;
use epr_auth::montecarlo::{run, sweep, Quantity, Scenario};
use epr_auth::protocol::{ChallengeEnsemble, SessionConfig, ThetaMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = SessionConfig::new(1, 1, ThetaMode::Random, 0).with_ensemble(ChallengeEnsemble::RealGreatCircle);
    let s = Scenario::new(config.clone(), Some(EveStrategy::GhzInject), Quantity::Detection, 50_000);
    let e = run(&s, 1)?;
    println!("GHZ detection: {:.4} [{:.4}, {:.4}], oracle {:?}, z {:?}", e.mean, e.ci_low, e.ci_high, e.oracle, e.z);

    let s = Scenario::new(config, Some(EveStrategy::FixedAngleImpersonate { theta: 0.0 }), Quantity::ChallengePass, 5_000)
        .sampled();
    let grid: Vec<f64> = (0..=4).map(|i| FRAC_PI_2 * i as f64 / 4.0).collect();
    for e in sweep(&s, &grid, 2)? {
        let oracle = e.oracle.map_or(f64::NAN, |o| o.value);
        println!("theta {:.4}: pass {:.4} +/- {:.4}, P1 {oracle:.4}", e.theta.unwrap_or(f64::NAN), e.mean, e.std_error);
    }
    Ok(())
}
