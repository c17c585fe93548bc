//! When every pair uses one fixed angle Eve can tune her attack to it.
//! Prints her impersonation and key-theft success against the angle, and
//! the angle that minimizes the better of the two.

use std::f64::consts::FRAC_PI_2;

use epr_auth::adversary::{fixed_angle_impersonate, optimize_key_steal};
use epr_auth::analysis::{optimal_fixed_angle, p1, p2};
use epr_auth::protocol::ChallengeEnsemble;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>8} {:>10} {:>10} {:>10} {:>10}", "theta", "P1", "real", "P2", "searched");
    for k in 0..=8 {
        let t = FRAC_PI_2 * k as f64 / 8.0;
        let imp = fixed_angle_impersonate(t, ChallengeEnsemble::RealGreatCircle)?;
        let steal = optimize_key_steal(t)?;
        println!("{t:>8.4} {:>10.6} {:>10.6} {:>10.6} {:>10.6}", p1(t), imp.pass_probability, p2(t), steal.fidelity);
    }
    let o = optimal_fixed_angle();
    println!("P1 = P2 at |cos theta| = {:.6} and {:.6}, where both equal {:.6}", o.cos_values[0], o.cos_values[1], o.p);
    Ok(())
}
