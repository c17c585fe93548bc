use super::error::Result;
use super::gate::{Gate1, Gate2};
use super::measure::{Measurement, SingleQubit};
use super::{MixedState, PureState, QubitLabel, Register};

/// Either representation; gates keep a pure state pure.
#[derive(Debug, Clone, PartialEq)]
pub enum State {
    Pure(PureState),
    Mixed(MixedState),
}

impl From<PureState> for State {
    fn from(s: PureState) -> Self {
        State::Pure(s)
    }
}

impl From<MixedState> for State {
    fn from(s: MixedState) -> Self {
        State::Mixed(s)
    }
}

macro_rules! dispatch {
    ($self:expr, $s:ident => $e:expr) => {
        match $self {
            State::Pure($s) => State::Pure($e?),
            State::Mixed($s) => State::Mixed($e?),
        }
    };
}

impl State {
    pub fn register(&self) -> &Register {
        match self {
            State::Pure(s) => s.register(),
            State::Mixed(s) => s.register(),
        }
    }

    pub fn labels(&self) -> &[QubitLabel] {
        self.register().labels()
    }

    pub fn is_pure(&self) -> bool {
        matches!(self, State::Pure(_))
    }

    pub fn to_density(&self) -> MixedState {
        match self {
            State::Pure(s) => s.to_density(),
            State::Mixed(s) => s.clone(),
        }
    }

    pub fn tensor(&self, other: &State) -> Result<State> {
        Ok(match (self, other) {
            (State::Pure(a), State::Pure(b)) => State::Pure(a.tensor(b)?),
            _ => State::Mixed(self.to_density().tensor(&other.to_density())?),
        })
    }

    pub fn apply_single(&self, qubit: QubitLabel, m: &Gate1) -> Result<State> {
        Ok(dispatch!(self, s => s.apply_single(qubit, m)))
    }

    pub fn apply_rotation(&self, qubit: QubitLabel, theta: f64) -> Result<State> {
        Ok(dispatch!(self, s => s.apply_rotation(qubit, theta)))
    }

    pub fn apply_not(&self, qubit: QubitLabel) -> Result<State> {
        Ok(dispatch!(self, s => s.apply_not(qubit)))
    }

    pub fn apply_cnot(&self, control: QubitLabel, target: QubitLabel) -> Result<State> {
        Ok(dispatch!(self, s => s.apply_cnot(control, target)))
    }

    pub fn apply_two_qubit(&self, first: QubitLabel, second: QubitLabel, m: &Gate2) -> Result<State> {
        Ok(dispatch!(self, s => s.apply_two_qubit(first, second, m)))
    }

    pub fn measure_in_basis(&self, qubit: QubitLabel, basis: &SingleQubit) -> Result<Measurement<State>> {
        Ok(match self {
            State::Pure(s) => s.measure_in_basis(qubit, basis)?.map(State::Pure),
            State::Mixed(s) => s.measure_in_basis(qubit, basis)?.map(State::Mixed),
        })
    }

    pub fn dephase(&self, qubit: QubitLabel, basis: &SingleQubit) -> Result<State> {
        Ok(State::Mixed(self.to_density().dephase(qubit, basis)?))
    }

    pub fn partial_trace(&self, keep: &[QubitLabel]) -> Result<MixedState> {
        match self {
            State::Pure(s) => s.partial_trace(keep),
            State::Mixed(s) => s.partial_trace(keep),
        }
    }

    /// Drops `qubit`. A pure state stays pure when the qubit is in the
    /// product state `hint`; otherwise the result is the reduced state.
    pub fn remove(&self, qubit: QubitLabel, hint: Option<&SingleQubit>) -> Result<Option<State>> {
        let rest: Vec<QubitLabel> = self.labels().iter().copied().filter(|l| *l != qubit).collect();
        self.register().position(qubit)?;
        if rest.is_empty() {
            return Ok(None);
        }
        if let (State::Pure(s), Some(h)) = (self, hint) {
            if let Ok(p) = s.detach(qubit, h) {
                return Ok(Some(State::Pure(p)));
            }
        }
        Ok(Some(State::Mixed(self.partial_trace(&rest)?)))
    }
}

/// Borrowed view used by the metric functions.
#[derive(Debug, Clone, Copy)]
pub enum StateRef<'a> {
    Pure(&'a PureState),
    Mixed(&'a MixedState),
}

pub trait AsStateRef {
    fn as_state_ref(&self) -> StateRef<'_>;
}

impl AsStateRef for PureState {
    fn as_state_ref(&self) -> StateRef<'_> {
        StateRef::Pure(self)
    }
}

impl AsStateRef for MixedState {
    fn as_state_ref(&self) -> StateRef<'_> {
        StateRef::Mixed(self)
    }
}

impl AsStateRef for State {
    fn as_state_ref(&self) -> StateRef<'_> {
        match self {
            State::Pure(s) => StateRef::Pure(s),
            State::Mixed(s) => StateRef::Mixed(s),
        }
    }
}

impl StateRef<'_> {
    pub(crate) fn register(&self) -> &Register {
        match self {
            StateRef::Pure(s) => s.register(),
            StateRef::Mixed(s) => s.register(),
        }
    }

    pub(crate) fn density(&self) -> MixedState {
        match self {
            StateRef::Pure(s) => s.to_density(),
            StateRef::Mixed(s) => (*s).clone(),
        }
    }
}
