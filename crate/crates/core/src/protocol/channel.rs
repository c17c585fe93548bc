use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::config::{ProtocolError, Result};
use super::joint::JointState;
use crate::quantum::{fidelity, Gate1, Gate2, MixedState, Outcome, Party, PureState, QubitLabel, SingleQubit, State};

/// What an eavesdropper has learned or built up during a session.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct EveState {
    pub eve_qubits: Vec<QubitLabel>,
    /// `(pair index, fidelity of the shared state with |Φ⁺⟩)`.
    pub accumulated_key: Vec<(usize, f64)>,
}

impl EveState {
    pub fn hold(&mut self, label: QubitLabel) {
        if !self.eve_qubits.contains(&label) {
            self.eve_qubits.push(label);
        }
    }

    pub fn release(&mut self, label: QubitLabel) {
        self.eve_qubits.retain(|l| *l != label);
    }

    pub fn record(&mut self, index: usize, fidelity: f64) {
        self.accumulated_key.push((index, fidelity));
    }
}

/// Interception policy for the quantum channel.
///
/// Every hook receives a [`Link`] scoped to one challenge. The defaults
/// describe a passive channel.
pub trait Adversary {
    /// Called at the start of every round; `round` is 1 for the first
    /// round on fresh keys.
    fn begin_round(&mut self, _round: u64) {}

    /// A party Eve stands in for. The direction in which that party would
    /// verify is skipped, and Eve answers the other party's challenges.
    fn absent_party(&self) -> Option<Party> {
        None
    }

    /// Called as the challenge leaves the verifier. Returns the qubit that
    /// reaches the identifier.
    fn on_forward(&mut self, link: &mut Link<'_>) -> Result<QubitLabel> {
        Ok(link.in_flight())
    }

    /// Called as `returned` travels back to the verifier. Returns the qubit
    /// the verifier receives.
    fn on_return(&mut self, _link: &mut Link<'_>, returned: QubitLabel) -> Result<QubitLabel> {
        Ok(returned)
    }

    /// Answer to a challenge addressed to the absent party.
    fn respond(&mut self, link: &mut Link<'_>) -> Result<QubitLabel> {
        Ok(link.in_flight())
    }

    /// Return requests sent to `identifier` beyond the legitimate ones.
    fn extra_requests(&mut self, _identifier: Party) -> usize {
        0
    }

    /// Called once the verifier has measured. `outcome` is `None` when the
    /// round is postselected rather than sampled.
    fn after_challenge(&mut self, _link: &mut Link<'_>, _outcome: Option<Outcome>) -> Result<()> {
        Ok(())
    }

    fn eve_state(&self) -> EveState {
        EveState::default()
    }
}

/// The channel as seen by the eavesdropper during one challenge.
///
/// Eve may act on her own qubits and on challenge qubits in transit; any
/// attempt to touch a key qubit is refused.
pub struct Link<'a> {
    joint: &'a mut JointState,
    rng: &'a mut ChaCha8Rng,
    session: u64,
    pair_index: usize,
    verifier: Party,
    identifier: Party,
    in_flight: QubitLabel,
}

impl<'a> Link<'a> {
    pub(crate) fn new(
        joint: &'a mut JointState,
        rng: &'a mut ChaCha8Rng,
        session: u64,
        pair_index: usize,
        verifier: Party,
        identifier: Party,
        in_flight: QubitLabel,
    ) -> Self {
        Self { joint, rng, session, pair_index, verifier, identifier, in_flight }
    }

    /// Sessions completed before this one on the current keys.
    pub fn session(&self) -> u64 {
        self.session
    }

    /// Publicly announced pair index.
    pub fn pair_index(&self) -> usize {
        self.pair_index
    }

    pub fn verifier(&self) -> Party {
        self.verifier
    }

    pub fn identifier(&self) -> Party {
        self.identifier
    }

    /// The challenge qubit the verifier sent.
    pub fn in_flight(&self) -> QubitLabel {
        self.in_flight
    }

    /// Eve's qubit associated with the current pair.
    pub fn eve_qubit(&self) -> QubitLabel {
        QubitLabel::eve(self.pair_index)
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        self.rng
    }

    pub fn holds(&self, label: QubitLabel) -> bool {
        self.joint.contains(label)
    }

    /// Brings a fresh qubit of Eve's into existence.
    pub fn prepare(&mut self, state: impl Into<State>) -> Result<()> {
        let state = state.into();
        for l in state.labels() {
            if l.owner != Party::Eve {
                return Err(ProtocolError::AccessDenied(*l));
            }
        }
        self.joint.insert(state)
    }

    pub fn prepare_pure(&mut self, label: QubitLabel, q: &SingleQubit) -> Result<()> {
        self.prepare(q.to_state(label))
    }

    pub fn prepare_mixed(&mut self, state: MixedState) -> Result<()> {
        self.prepare(state)
    }

    pub fn apply_single(&mut self, qubit: QubitLabel, m: &Gate1) -> Result<()> {
        self.check(qubit)?;
        self.joint.apply_single(qubit, m)
    }

    pub fn apply_rotation(&mut self, qubit: QubitLabel, theta: f64) -> Result<()> {
        self.check(qubit)?;
        self.joint.apply_rotation(qubit, theta)
    }

    pub fn apply_not(&mut self, qubit: QubitLabel) -> Result<()> {
        self.check(qubit)?;
        self.joint.apply_not(qubit)
    }

    pub fn apply_cnot(&mut self, control: QubitLabel, target: QubitLabel) -> Result<()> {
        self.check(control)?;
        self.check(target)?;
        self.joint.apply_cnot(control, target)
    }

    pub fn apply_two_qubit(&mut self, first: QubitLabel, second: QubitLabel, m: &Gate2) -> Result<()> {
        self.check(first)?;
        self.check(second)?;
        self.joint.apply_two_qubit(first, second, m)
    }

    /// Non-selective measurement: Eve measures and forgets the outcome.
    pub fn dephase(&mut self, qubit: QubitLabel, basis: &SingleQubit) -> Result<()> {
        self.check(qubit)?;
        self.joint.dephase(qubit, basis)
    }

    pub fn discard(&mut self, qubit: QubitLabel) -> Result<()> {
        self.check(qubit)?;
        self.joint.discard(qubit, None)
    }

    /// Fidelity with `|Φ⁺⟩` of Eve's `qubit` together with the verifier's
    /// key qubit of the current pair. This is bookkeeping for reports, not
    /// something Eve could measure.
    pub fn key_fidelity(&self, qubit: QubitLabel) -> Result<f64> {
        self.check(qubit)?;
        let key = QubitLabel::new(self.verifier, self.pair_index);
        let rho = self.joint.reduced(&[key, qubit])?;
        Ok(fidelity(&PureState::phi_plus(key, qubit)?, &rho)?)
    }

    fn check(&self, label: QubitLabel) -> Result<()> {
        match label.owner {
            Party::Eve | Party::Challenge => Ok(()),
            _ => Err(ProtocolError::AccessDenied(label)),
        }
    }
}
