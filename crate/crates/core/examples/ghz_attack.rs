//! Eve slips her own qubit into the GHZ state during one round and uses it
//! to answer Bob in the next. The bilateral rotation exposes her, more so
//! for Haar-random challenges than for real ones.

use std::f64::consts::PI;

use epr_auth::adversary::{ghz_detection_exact, theta_average};
use epr_auth::analysis::ghz_detection;
use epr_auth::protocol::ChallengeEnsemble;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>8} {:>12} {:>12} {:>12}", "theta", "sin^2/2", "real", "Haar");
    for k in 0..=8 {
        let t = k as f64 * PI / 16.0;
        println!(
            "{t:>8.4} {:>12.6} {:>12.6} {:>12.6}",
            ghz_detection(t),
            ghz_detection_exact(t, ChallengeEnsemble::RealGreatCircle)?,
            ghz_detection_exact(t, ChallengeEnsemble::Haar)?
        );
    }
    for e in [ChallengeEnsemble::RealGreatCircle, ChallengeEnsemble::Haar] {
        println!("average over theta, {e:?}: {:.6}", theta_average(|t| ghz_detection_exact(t, e))?);
    }
    Ok(())
}
