//! At theta = pi/4 Eve turns her GHZ share into Alice's half of the key,
//! then answers Bob's challenges perfectly.

use std::f64::consts::FRAC_PI_4;

use epr_auth::adversary::{attack_round, quarter_pi_key_steal, EveStrategy};
use epr_auth::protocol::{RoundMode, SessionConfig, ThetaMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for t in [0.0, 0.5, FRAC_PI_4] {
        let s = quarter_pi_key_steal(t)?;
        println!("theta {t:.4}: stolen fidelity {:.6} (designed for this angle: {})", s.fidelity, s.precondition_met);
    }
    let config = SessionConfig::new(2, 2, ThetaMode::Fixed(FRAC_PI_4), 11);
    let run = attack_round(&config, Some(&EveStrategy::QuarterPiKeySteal), RoundMode::Sampled)?;
    println!("attacked round: {:?}", run.round.verdict);
    for (pair, f) in run.eve.map(|e| e.accumulated_key).unwrap_or_default() {
        println!("  pair {pair}: Eve shares |Phi+> with fidelity {f:.12}");
    }
    Ok(())
}
