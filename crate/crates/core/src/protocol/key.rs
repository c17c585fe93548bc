use std::f64::consts::TAU;
use std::sync::atomic::{AtomicUsize, Ordering};

use rand::Rng;

use super::config::{ProtocolError, Result, SessionConfig, ThetaMode};
use super::joint::JointState;
use crate::quantum::{Party, PureState, QubitLabel};
use crate::rng;

/// One side of a shared EPR pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairHandle {
    pub index: usize,
    pub own: QubitLabel,
    pub partner: QubitLabel,
}

/// One party's half of the `2K` shared pairs plus the shared angles.
///
/// Angle lookups go through [`AuthKey::theta`], which counts reads so tests
/// can check that nothing outside the honest parties consulted them.
#[derive(Debug)]
pub struct AuthKey {
    owner: Party,
    partner: Party,
    thetas: Vec<f64>,
    sessions_completed: u64,
    discarded: bool,
    theta_reads: AtomicUsize,
}

impl Clone for AuthKey {
    fn clone(&self) -> Self {
        Self {
            owner: self.owner,
            partner: self.partner,
            thetas: self.thetas.clone(),
            sessions_completed: self.sessions_completed,
            discarded: self.discarded,
            theta_reads: AtomicUsize::new(self.theta_reads.load(Ordering::Relaxed)),
        }
    }
}

impl AuthKey {
    /// Key for `owner` with explicit angles, one per pair.
    pub fn with_thetas(owner: Party, thetas: Vec<f64>) -> Result<Self> {
        let partner = match owner {
            Party::Alice => Party::Bob,
            Party::Bob => Party::Alice,
            p => return Err(ProtocolError::InvalidConfig(format!("{p:?} cannot hold a key"))),
        };
        if thetas.is_empty() || !thetas.len().is_multiple_of(2) {
            return Err(ProtocolError::InvalidConfig("a key holds an even, non-zero number of pairs".into()));
        }
        Ok(Self { owner, partner, thetas, sessions_completed: 0, discarded: false, theta_reads: AtomicUsize::new(0) })
    }

    pub fn owner(&self) -> Party {
        self.owner
    }

    /// `2K`.
    pub fn pair_count(&self) -> usize {
        self.thetas.len()
    }

    pub fn pairs(&self) -> impl Iterator<Item = PairHandle> + '_ {
        (1..=self.pair_count()).map(|i| self.pair(i).expect("index in range"))
    }

    pub fn pair(&self, index: usize) -> Result<PairHandle> {
        self.check_index(index)?;
        Ok(PairHandle {
            index,
            own: QubitLabel::new(self.owner, index),
            partner: QubitLabel::new(self.partner, index),
        })
    }

    pub fn theta(&self, index: usize) -> Result<f64> {
        self.check_index(index)?;
        self.theta_reads.fetch_add(1, Ordering::Relaxed);
        Ok(self.thetas[index - 1])
    }

    pub fn theta_reads(&self) -> usize {
        self.theta_reads.load(Ordering::Relaxed)
    }

    pub fn sessions_completed(&self) -> u64 {
        self.sessions_completed
    }

    pub fn is_discarded(&self) -> bool {
        self.discarded
    }

    pub(crate) fn mark_completed(&mut self) {
        self.sessions_completed += 1;
    }

    pub(crate) fn discard(&mut self) {
        self.discarded = true;
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index == 0 || index > self.thetas.len() {
            return Err(ProtocolError::PairOutOfRange { index, pairs: self.thetas.len() });
        }
        Ok(())
    }
}

/// Shares `2K` pairs in `|Φ⁺⟩` between Alice and Bob and draws the angles.
pub fn setup_keys(config: &SessionConfig) -> Result<(AuthKey, AuthKey, JointState)> {
    if config.k == 0 {
        return Err(ProtocolError::InvalidConfig("K must be at least 1".into()));
    }
    let n = config.pair_count();
    let thetas: Vec<f64> = match config.theta_mode {
        ThetaMode::Fixed(t) => vec![t; n],
        ThetaMode::Random => {
            let mut r = rng::stream(config.seed, rng::THETAS);
            (0..n).map(|_| r.random::<f64>() * TAU).collect()
        }
    };
    let mut joint = JointState::new();
    for i in 1..=n {
        joint.insert(PureState::phi_plus(QubitLabel::alice(i), QubitLabel::bob(i))?)?;
    }
    Ok((AuthKey::with_thetas(Party::Alice, thetas.clone())?, AuthKey::with_thetas(Party::Bob, thetas)?, joint))
}
