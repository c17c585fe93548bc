//! Tampering with a challenge on its way out, or entangling with it on its
//! way back, both leave a trace in Bob's measurement.

use epr_auth::adversary::{intercept_forward_detection, intercept_return_detection, theta_average, Tamper};
use epr_auth::protocol::ChallengeEnsemble;
use epr_auth::quantum::{gate, SingleQubit};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let tampers = [
        ("identity", Tamper::Identity),
        ("X", Tamper::PauliX),
        ("R(pi/8)", Tamper::Rotation { theta: std::f64::consts::FRAC_PI_8 }),
        ("measure Z", Tamper::Measure { basis: SingleQubit::zero() }),
    ];
    for (name, t) in &tampers {
        let d = theta_average(|th| ChallengeEnsemble::Haar.exact_average(|q| intercept_forward_detection(th, q, t)))?;
        println!("forward {name:>10}: detection {d:.4}");
    }
    for (name, u) in [("identity", gate::identity2()), ("C-NOT", gate::cnot_matrix()), ("swap", gate::swap_matrix())] {
        let r = intercept_return_detection(0.7, &SingleQubit::plus(), &u)?;
        println!("return {name:>10}: detection {:.4}, Eve's fidelity with Bob's key {:.4}", r.detection, r.eve_fidelity);
    }
    Ok(())
}
