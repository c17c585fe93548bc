//! Eve impersonates an absent Alice with random states. Each challenge
//! passes with probability about one half, so a round of K' challenges
//! survives with probability about 2^-K'.

use epr_auth::adversary::{run_transcript, EveStrategy, ResponseEnsemble};
use epr_auth::analysis::detection_bound;
use epr_auth::protocol::{SessionConfig, ThetaMode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let strategy = EveStrategy::RandomImpersonation { ensemble: ResponseEnsemble::Random { components: 2 } };
    for k_prime in [1, 4, 8] {
        let config = SessionConfig::new(k_prime, k_prime, ThetaMode::Random, 3);
        let t = run_transcript(&config, Some(&strategy))?;
        println!(
            "K'={k_prime}: sampled verdict {:?}; exact acceptance of these challenges {:.3e} (2^-K' = {:.3e})",
            t.run.round.verdict,
            t.analytic_acceptance,
            detection_bound(k_prime as u32)
        );
    }
    Ok(())
}
