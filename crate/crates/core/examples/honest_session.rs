//! Alice and Bob authenticate each other over three rounds with the same
//! keys, then check that every EPR pair survived.

use epr_auth::protocol::{RoundMode, Session, SessionConfig, ThetaMode};
use epr_auth::quantum::{fidelity, PureState, QubitLabel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut session = Session::new(SessionConfig::new(3, 2, ThetaMode::Random, 7))?;
    for _ in 0..3 {
        let round = session.run_round(RoundMode::Sampled, None)?;
        println!("round {}: {:?}, challenges {:?}", round.session, round.verdict, round.announced_indices);
        for r in &round.records {
            println!("  pair {} verified by {:?}: pass probability {}", r.index, r.verifier, r.prob_pass);
        }
    }
    for i in 1..=6 {
        let (a, b) = (QubitLabel::alice(i), QubitLabel::bob(i));
        let f = fidelity(&PureState::phi_plus(a, b)?, &session.joint().reduced(&[a, b])?)?;
        println!("pair {i} fidelity with |Phi+>: {f:.12}");
    }
    Ok(())
}
