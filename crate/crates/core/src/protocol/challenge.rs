use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use super::config::ChallengeEnsemble;
use crate::quantum::{re, QubitLabel, SingleQubit, C64};

/// The verifier's secret state for pair `index`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Challenge {
    pub index: usize,
    pub state: SingleQubit,
}

impl Challenge {
    pub fn new(index: usize, state: SingleQubit) -> Self {
        Self { index, state }
    }

    /// Label of the physical challenge qubit.
    pub fn label(&self) -> QubitLabel {
        QubitLabel::challenge(self.index)
    }
}

/// Draws a challenge from `ensemble`.
///
/// Haar states come from two independent standard complex Gaussians,
/// normalized.
pub fn make_challenge<R: Rng + ?Sized>(rng: &mut R, index: usize, ensemble: ChallengeEnsemble) -> Challenge {
    let state = match ensemble {
        ChallengeEnsemble::Haar => loop {
            let g: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
            if let Ok(q) = SingleQubit::normalized(C64::new(g[0], g[1]), C64::new(g[2], g[3])) {
                break q;
            }
        },
        ChallengeEnsemble::RealGreatCircle => {
            let (s, c) = (rng.random::<f64>() * TAU).sin_cos();
            SingleQubit { a: re(c), b: re(s) }
        }
    };
    Challenge { index, state }
}

impl ChallengeEnsemble {
    /// Weighted nodes whose average equals the ensemble average of any
    /// quantity quadratic in `|ψ⟩⟨ψ|`, such as a pass probability.
    ///
    /// Haar uses the six Pauli eigenstates (a qubit 3-design); the real
    /// ensemble uses twelve equally spaced angles.
    pub fn design(&self) -> Vec<(f64, SingleQubit)> {
        match self {
            ChallengeEnsemble::Haar => {
                let h = FRAC_1_SQRT_2;
                let states = [
                    (re(1.0), re(0.0)),
                    (re(0.0), re(1.0)),
                    (re(h), re(h)),
                    (re(h), re(-h)),
                    (re(h), C64::new(0.0, h)),
                    (re(h), C64::new(0.0, -h)),
                ];
                states
                    .into_iter()
                    .map(|(a, b)| (1.0 / 6.0, SingleQubit { a, b }))
                    .collect()
            }
            ChallengeEnsemble::RealGreatCircle => (0..12)
                .map(|k| {
                    let (s, c) = (TAU * k as f64 / 12.0).sin_cos();
                    (1.0 / 12.0, SingleQubit { a: re(c), b: re(s) })
                })
                .collect(),
        }
    }

    /// Exact ensemble average of `f`, which must be quadratic in `|ψ⟩⟨ψ|`.
    /// The nodes carry equal weight, so the values are summed before a
    /// single division.
    pub fn exact_average<E>(&self, mut f: impl FnMut(&SingleQubit) -> Result<f64, E>) -> Result<f64, E> {
        let nodes = self.design();
        let mut total = 0.0;
        for (_, q) in &nodes {
            total += f(q)?;
        }
        Ok(total / nodes.len() as f64)
    }
}
