//! The closed-form pass probability for a random-state impersonator,
//! checked against direct evolution of the protocol.

use epr_auth::adversary::response_pass_probability;
use epr_auth::analysis::{fidelity_cross_check, impersonation_fidelity, self_response_fidelity};
use epr_auth::protocol::ChallengeEnsemble;
use epr_auth::quantum::SingleQubit;
use rand::SeedableRng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let r = fidelity_cross_check(&mut rng, 20_000, ChallengeEnsemble::Haar)?;
    println!("{} samples, max |formula - evolution| = {:.2e}", r.samples, r.max_abs_diff);
    println!("mean pass probability {:.4} +/- {:.4}", r.mean_direct, r.std_error);
    // returning a copy of the challenge does not pass with certainty
    let psi = SingleQubit::normalized(0.6.into(), 0.8.into())?;
    println!(
        "answering with the challenge itself: formula {:.4}, evolution {:.4}, (1 + |<psi|X|psi>|^2)/2 = {:.4}",
        impersonation_fidelity(&psi, &[(1.0, psi)]),
        response_pass_probability(&psi, &[(1.0, psi)])?,
        self_response_fidelity(&psi)
    );
    Ok(())
}
