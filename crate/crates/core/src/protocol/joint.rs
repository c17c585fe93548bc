use super::config::Result;
use crate::quantum::{
    Gate1, Gate2, Measurement, MixedState, PureState, QuantumError, QubitLabel, SingleQubit, State,
};

/// The global state as a product of independent blocks.
///
/// Each key pair starts as its own block. A two-qubit gate across blocks
/// merges them, so the representation is exact while staying small: a block
/// never holds more than the handful of qubits one pair interacts with.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct JointState {
    blocks: Vec<State>,
}

impl JointState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_blocks(blocks: Vec<State>) -> Result<Self> {
        let mut joint = Self::new();
        for b in blocks {
            joint.insert(b)?;
        }
        Ok(joint)
    }

    pub fn blocks(&self) -> &[State] {
        &self.blocks
    }

    pub fn labels(&self) -> Vec<QubitLabel> {
        self.blocks.iter().flat_map(|b| b.labels().iter().copied()).collect()
    }

    pub fn contains(&self, label: QubitLabel) -> bool {
        self.blocks.iter().any(|b| b.register().contains(label))
    }

    /// Adds an independent subsystem.
    pub fn insert(&mut self, state: impl Into<State>) -> Result<()> {
        let state = state.into();
        if let Some(l) = state.labels().iter().find(|l| self.contains(**l)) {
            return Err(QuantumError::OverlappingLabels(*l).into());
        }
        self.blocks.push(state);
        Ok(())
    }

    /// The block holding `label`.
    pub fn block(&self, label: QubitLabel) -> Result<&State> {
        Ok(&self.blocks[self.locate(label)?])
    }

    pub fn apply_single(&mut self, qubit: QubitLabel, m: &Gate1) -> Result<()> {
        let i = self.locate(qubit)?;
        self.blocks[i] = self.blocks[i].apply_single(qubit, m)?;
        Ok(())
    }

    pub fn apply_rotation(&mut self, qubit: QubitLabel, theta: f64) -> Result<()> {
        let i = self.locate(qubit)?;
        self.blocks[i] = self.blocks[i].apply_rotation(qubit, theta)?;
        Ok(())
    }

    pub fn apply_not(&mut self, qubit: QubitLabel) -> Result<()> {
        let i = self.locate(qubit)?;
        self.blocks[i] = self.blocks[i].apply_not(qubit)?;
        Ok(())
    }

    pub fn apply_cnot(&mut self, control: QubitLabel, target: QubitLabel) -> Result<()> {
        if control == target {
            return Err(QuantumError::SameQubit(control).into());
        }
        let i = self.join(control, target)?;
        self.blocks[i] = self.blocks[i].apply_cnot(control, target)?;
        Ok(())
    }

    pub fn apply_two_qubit(&mut self, first: QubitLabel, second: QubitLabel, m: &Gate2) -> Result<()> {
        if first == second {
            return Err(QuantumError::SameQubit(first).into());
        }
        let i = self.join(first, second)?;
        self.blocks[i] = self.blocks[i].apply_two_qubit(first, second, m)?;
        Ok(())
    }

    /// Measurement of `qubit` without committing to an outcome. The branch
    /// states cover the whole block that holds `qubit`.
    pub fn measure(&self, qubit: QubitLabel, basis: &SingleQubit) -> Result<Measurement<State>> {
        Ok(self.block(qubit)?.measure_in_basis(qubit, basis)?)
    }

    /// Replaces the block holding `qubit` with a post-measurement `state`
    /// over the same labels.
    pub fn commit(&mut self, qubit: QubitLabel, state: State) -> Result<()> {
        let i = self.locate(qubit)?;
        if !self.blocks[i].register().same_set(state.register()) {
            return Err(QuantumError::RegisterMismatch.into());
        }
        self.blocks[i] = state;
        Ok(())
    }

    pub fn dephase(&mut self, qubit: QubitLabel, basis: &SingleQubit) -> Result<()> {
        let i = self.locate(qubit)?;
        self.blocks[i] = self.blocks[i].dephase(qubit, basis)?;
        Ok(())
    }

    /// Removes `qubit` from the system. `hint` names its state when it is
    /// known to be unentangled, which keeps a pure block pure.
    pub fn discard(&mut self, qubit: QubitLabel, hint: Option<&SingleQubit>) -> Result<()> {
        let i = self.locate(qubit)?;
        match self.blocks[i].remove(qubit, hint)? {
            Some(rest) => self.blocks[i] = rest,
            None => {
                self.blocks.remove(i);
            }
        }
        Ok(())
    }

    /// Reduced density matrix of `keep`, in that order.
    pub fn reduced(&self, keep: &[QubitLabel]) -> Result<MixedState> {
        if keep.is_empty() {
            return Err(QuantumError::EmptyKeep.into());
        }
        let mut parts: Vec<(usize, Vec<QubitLabel>)> = Vec::new();
        for l in keep {
            let b = self.locate(*l)?;
            match parts.iter_mut().find(|(i, _)| *i == b) {
                Some((_, ls)) => {
                    if ls.contains(l) {
                        return Err(QuantumError::DuplicateLabel(*l).into());
                    }
                    ls.push(*l)
                }
                None => parts.push((b, vec![*l])),
            }
        }
        let mut acc: Option<MixedState> = None;
        for (b, ls) in parts {
            let r = self.blocks[b].partial_trace(&ls)?;
            acc = Some(match acc {
                None => r,
                Some(a) => a.tensor(&r)?,
            });
        }
        Ok(acc.expect("keep is non-empty").permuted(keep)?)
    }

    /// Reduced state as a pure vector, if the kept labels form whole pure
    /// blocks.
    pub fn pure_part(&self, keep: &[QubitLabel]) -> Option<PureState> {
        let mut acc: Option<PureState> = None;
        let mut covered = 0;
        for b in &self.blocks {
            if b.labels().iter().any(|l| keep.contains(l)) {
                let State::Pure(p) = b else { return None };
                if !b.labels().iter().all(|l| keep.contains(l)) {
                    return None;
                }
                covered += b.labels().len();
                acc = Some(match acc {
                    None => p.clone(),
                    Some(a) => a.tensor(p).ok()?,
                });
            }
        }
        if covered != keep.len() {
            return None;
        }
        acc?.permuted(keep).ok()
    }

    fn locate(&self, label: QubitLabel) -> Result<usize> {
        self.blocks
            .iter()
            .position(|b| b.register().contains(label))
            .ok_or_else(|| QuantumError::UnknownLabel(label).into())
    }

    /// Makes sure `a` and `b` share a block and returns its position.
    fn join(&mut self, a: QubitLabel, b: QubitLabel) -> Result<usize> {
        let (i, j) = (self.locate(a)?, self.locate(b)?);
        if i == j {
            return Ok(i);
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let second = self.blocks.remove(hi);
        self.blocks[lo] = self.blocks[lo].tensor(&second)?;
        Ok(lo)
    }
}
