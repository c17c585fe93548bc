use crate::protocol::{Adversary, EveState, Link, Result};
use crate::quantum::{Gate2, Outcome, Party, QubitLabel};

use super::ops;
use super::strategy::{ResponseEnsemble, Tamper};

pub(crate) struct RandomImpersonationPolicy {
    ensemble: ResponseEnsemble,
    state: EveState,
}

impl RandomImpersonationPolicy {
    pub fn new(ensemble: ResponseEnsemble) -> Self {
        Self { ensemble, state: EveState::default() }
    }
}

impl Adversary for RandomImpersonationPolicy {
    fn absent_party(&self) -> Option<Party> {
        Some(Party::Alice)
    }

    fn respond(&mut self, link: &mut Link<'_>) -> Result<QubitLabel> {
        let label = link.eve_qubit();
        let index = link.pair_index();
        let rho = ops::random_impersonation_respond(link.rng(), index, &self.ensemble)?;
        link.prepare_mixed(rho)?;
        link.discard(link.in_flight())?;
        Ok(label)
    }

    fn eve_state(&self) -> EveState {
        self.state.clone()
    }
}

pub(crate) struct InterceptForwardPolicy {
    tamper: Tamper,
}

impl InterceptForwardPolicy {
    pub fn new(tamper: Tamper) -> Self {
        Self { tamper }
    }
}

impl Adversary for InterceptForwardPolicy {
    fn on_forward(&mut self, link: &mut Link<'_>) -> Result<QubitLabel> {
        let q = link.in_flight();
        ops::intercept_forward(link, q, &self.tamper)?;
        Ok(q)
    }
}

pub(crate) struct InterceptReturnPolicy {
    unitary: Gate2,
    state: EveState,
}

impl InterceptReturnPolicy {
    pub fn new(unitary: Gate2) -> Self {
        Self { unitary, state: EveState::default() }
    }
}

impl Adversary for InterceptReturnPolicy {
    fn on_return(&mut self, link: &mut Link<'_>, returned: QubitLabel) -> Result<QubitLabel> {
        let ancilla = link.eve_qubit();
        ops::intercept_return_entangle(link, returned, ancilla, &self.unitary)?;
        self.state.hold(ancilla);
        Ok(returned)
    }

    fn after_challenge(&mut self, link: &mut Link<'_>, _outcome: Option<Outcome>) -> Result<()> {
        let ancilla = link.eve_qubit();
        self.state.record(link.pair_index(), link.key_fidelity(ancilla)?);
        link.discard(ancilla)?;
        self.state.release(ancilla);
        Ok(())
    }

    fn eve_state(&self) -> EveState {
        self.state.clone()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) enum GhzMode {
    /// Answer Bob in Alice's place with the GHZ share, flipping it first
    /// when `flip` is set.
    Impersonate { flip: bool },
    /// Rotate the share by `phi1`, route it through the identifier's C-NOT,
    /// rotate by `phi2`, then use it to answer the real challenge.
    Steal { phi1: f64, phi2: f64 },
}

/// GHZ injection in the first round, then the attack in later rounds.
pub(crate) struct GhzPolicy {
    mode: GhzMode,
    round: u64,
    state: EveState,
}

impl GhzPolicy {
    pub fn new(mode: GhzMode) -> Self {
        Self { mode, round: 0, state: EveState::default() }
    }

    fn preparing(&self) -> bool {
        self.round <= 1
    }
}

impl Adversary for GhzPolicy {
    fn begin_round(&mut self, round: u64) {
        self.round = round;
    }

    fn absent_party(&self) -> Option<Party> {
        match self.mode {
            GhzMode::Impersonate { .. } if !self.preparing() => Some(Party::Alice),
            _ => None,
        }
    }

    fn on_forward(&mut self, link: &mut Link<'_>) -> Result<QubitLabel> {
        let share = link.eve_qubit();
        if self.preparing() {
            if !link.holds(share) {
                link.prepare_pure(share, &crate::quantum::SingleQubit::zero())?;
            }
            self.state.hold(share);
        } else if let GhzMode::Steal { phi1, .. } = self.mode {
            link.apply_rotation(share, phi1)?;
        } else {
            return Ok(link.in_flight());
        }
        Ok(share)
    }

    fn on_return(&mut self, link: &mut Link<'_>, returned: QubitLabel) -> Result<QubitLabel> {
        let share = link.eve_qubit();
        if returned != share {
            return Ok(returned);
        }
        if let (false, GhzMode::Steal { phi2, .. }) = (self.preparing(), self.mode) {
            link.apply_rotation(share, phi2)?;
            self.state.record(link.pair_index(), link.key_fidelity(share)?);
        }
        let challenge = link.in_flight();
        link.apply_cnot(share, challenge)?;
        Ok(challenge)
    }

    fn respond(&mut self, link: &mut Link<'_>) -> Result<QubitLabel> {
        let flip = matches!(self.mode, GhzMode::Impersonate { flip: true });
        ops::impersonate_with_share(link, link.eve_qubit(), flip)
    }

    fn eve_state(&self) -> EveState {
        self.state.clone()
    }
}
