use rand::Rng;
use serde::Serialize;

use crate::adversary::response_pass_probability;
use crate::protocol::{make_challenge, ChallengeEnsemble, Result};
use crate::quantum::SingleQubit;

use super::closed::impersonation_fidelity;

/// A closed-form value next to an independent numeric one.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub quantity: String,
    pub closed_form: f64,
    pub numeric: f64,
    pub abs_diff: f64,
}

impl OracleReport {
    pub fn new(quantity: impl Into<String>, closed_form: f64, numeric: f64) -> Self {
        Self { quantity: quantity.into(), closed_form, numeric, abs_diff: (closed_form - numeric).abs() }
    }
}

/// The literal fidelity formula against protocol evolution on random
/// challenges and random two-state response ensembles.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FidelityReport {
    pub samples: usize,
    pub max_abs_diff: f64,
    pub mean_literal: f64,
    pub mean_direct: f64,
    /// Standard error of `mean_direct`.
    pub std_error: f64,
    /// Literal and direct value when the response is the challenge itself.
    pub self_response: OracleReport,
}

pub fn fidelity_cross_check<R: Rng + ?Sized>(rng: &mut R, samples: usize, ensemble: ChallengeEnsemble) -> Result<FidelityReport> {
    let mut max_abs_diff: f64 = 0.0;
    let (mut lit, mut dir, mut dir2) = (0.0, 0.0, 0.0);
    for _ in 0..samples {
        let psi = make_challenge(rng, 1, ensemble).state;
        let p = rng.random::<f64>();
        let parts = [
            (p, make_challenge(rng, 1, ChallengeEnsemble::Haar).state),
            (1.0 - p, make_challenge(rng, 1, ChallengeEnsemble::Haar).state),
        ];
        let l = impersonation_fidelity(&psi, &parts);
        let d = response_pass_probability(&psi, &parts)?;
        max_abs_diff = max_abs_diff.max((l - d).abs());
        lit += l;
        dir += d;
        dir2 += d * d;
    }
    let n = samples as f64;
    let mean_direct = dir / n;
    let var = (dir2 / n - mean_direct * mean_direct).max(0.0);
    let probe = make_challenge(rng, 1, ensemble).state;
    let own = [(1.0, probe)];
    Ok(FidelityReport {
        samples,
        max_abs_diff,
        mean_literal: lit / n,
        mean_direct,
        std_error: (var / n).sqrt(),
        self_response: OracleReport::new(
            "F with the challenge as response",
            impersonation_fidelity(&probe, &own),
            response_pass_probability(&probe, &own)?,
        ),
    })
}

/// `½ (1 + |⟨ψ|X|ψ⟩|²)`: what the fidelity formula gives when Eve returns
/// the challenge state itself.
pub fn self_response_fidelity(psi: &SingleQubit) -> f64 {
    let flipped = SingleQubit { a: psi.b, b: psi.a };
    0.5 * (1.0 + psi.inner(&flipped).norm_sqr())
}
