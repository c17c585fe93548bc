//! A slightly corrupted key still authenticates: one honest challenge on
//! (1 - eps)|Phi+><Phi+| + eps rho1 fails with probability at most eps.

use epr_auth::analysis::{random_density, robustness_bounds};
use epr_auth::protocol::{make_challenge, ChallengeEnsemble};
use epr_auth::quantum::QubitLabel;
use rand::SeedableRng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    let labels = vec![QubitLabel::alice(1), QubitLabel::bob(1)];
    for eps in [0.01, 0.1, 0.25] {
        let rho1 = random_density(&mut rng, labels.clone())?;
        let psi = make_challenge(&mut rng, 1, ChallengeEnsemble::Haar).state;
        let r = robustness_bounds(eps, &rho1, &psi, 0.8)?;
        println!(
            "eps {eps}: failure {:.4} <= {eps}, distance {:.4} <= {:.4}, fidelity {:.4} -> {:.4} >= {:.4}",
            r.failure_probability, r.trace_distance, r.distance_bound, r.fidelity_before, r.fidelity_after, r.fidelity_bound
        );
    }
    Ok(())
}
