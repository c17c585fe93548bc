use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quantum::{Party, QuantumError, QubitLabel};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProtocolError {
    #[error(transparent)]
    Quantum(#[from] QuantumError),
    #[error("invalid session config: {0}")]
    InvalidConfig(String),
    #[error("pair index {index} is outside 1..={pairs}")]
    PairOutOfRange { index: usize, pairs: usize },
    #[error("parties hold different angles for pair {0}")]
    ThetaMismatch(usize),
    #[error("keys were discarded after an aborted round")]
    KeysDiscarded,
    #[error("eavesdropper may not touch {0}")]
    AccessDenied(QubitLabel),
    #[error("strategy error: {0}")]
    Strategy(String),
}

pub type Result<T, E = ProtocolError> = std::result::Result<T, E>;

/// How the shared rotation angles are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaMode {
    /// Independent angle per pair, uniform on `[0, 2π)`.
    Random,
    /// The same angle for every pair.
    Fixed(f64),
}

/// Distribution of the verifier's secret challenge states.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChallengeEnsemble {
    /// Uniform on the Bloch sphere.
    #[default]
    Haar,
    /// `cos α|0⟩ + sin α|1⟩` with α uniform; real amplitudes only.
    RealGreatCircle,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionConfig {
    /// Pairs per direction; the key holds `2k` pairs.
    pub k: usize,
    /// Challenges per direction.
    pub k_prime: usize,
    pub theta_mode: ThetaMode,
    pub seed: u64,
    #[serde(default)]
    pub ensemble: ChallengeEnsemble,
}

impl SessionConfig {
    pub fn new(k: usize, k_prime: usize, theta_mode: ThetaMode, seed: u64) -> Self {
        Self { k, k_prime, theta_mode, seed, ensemble: ChallengeEnsemble::Haar }
    }

    pub fn with_ensemble(mut self, ensemble: ChallengeEnsemble) -> Self {
        self.ensemble = ensemble;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(ProtocolError::InvalidConfig("K must be at least 1".into()));
        }
        if self.k_prime == 0 || self.k_prime > self.k {
            return Err(ProtocolError::InvalidConfig(format!(
                "K' must satisfy 1 <= K' <= K (K = {}, K' = {})",
                self.k, self.k_prime
            )));
        }
        if let ThetaMode::Fixed(t) = self.theta_mode {
            if !t.is_finite() {
                return Err(ProtocolError::InvalidConfig("fixed angle must be finite".into()));
            }
        }
        Ok(())
    }

    pub fn pair_count(&self) -> usize {
        2 * self.k
    }
}

/// Pair indices a verifier spends on its challenges: odd indices for Bob,
/// even for Alice, in increasing order.
pub fn verifier_indices(verifier: Party, k_prime: usize) -> Vec<usize> {
    let first = match verifier {
        Party::Bob => 1,
        _ => 2,
    };
    (0..k_prime).map(|n| first + 2 * n).collect()
}

/// The identifier for pair `index`: Alice on odd pairs, Bob on even ones.
pub fn identifier_for(index: usize) -> Party {
    if index % 2 == 1 {
        Party::Alice
    } else {
        Party::Bob
    }
}

pub fn verifier_for(index: usize) -> Party {
    other(identifier_for(index))
}

pub fn other(party: Party) -> Party {
    match party {
        Party::Alice => Party::Bob,
        Party::Bob => Party::Alice,
        p => p,
    }
}
