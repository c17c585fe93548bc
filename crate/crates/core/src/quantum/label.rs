use std::fmt;

use serde::{Deserialize, Serialize};

use super::error::{QuantumError, Result};

/// Who holds a qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Party {
    Alice,
    Bob,
    Eve,
    Challenge,
}

impl Party {
    fn tag(self) -> char {
        match self {
            Party::Alice => 'A',
            Party::Bob => 'B',
            Party::Eve => 'E',
            Party::Challenge => 'C',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QubitLabel {
    pub owner: Party,
    pub index: usize,
}

impl QubitLabel {
    pub const fn new(owner: Party, index: usize) -> Self {
        Self { owner, index }
    }

    pub const fn alice(index: usize) -> Self {
        Self::new(Party::Alice, index)
    }

    pub const fn bob(index: usize) -> Self {
        Self::new(Party::Bob, index)
    }

    pub const fn eve(index: usize) -> Self {
        Self::new(Party::Eve, index)
    }

    pub const fn challenge(index: usize) -> Self {
        Self::new(Party::Challenge, index)
    }
}

impl fmt::Display for QubitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.owner.tag(), self.index)
    }
}

/// Ordered list of unique qubit labels.
///
/// Basis indices are little-endian over this order: the label at position
/// `k` is bit `k` of the amplitude index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Register(Vec<QubitLabel>);

impl Register {
    pub fn new(labels: Vec<QubitLabel>) -> Result<Self> {
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(QuantumError::DuplicateLabel(*l));
            }
        }
        Ok(Self(labels))
    }

    pub fn labels(&self) -> &[QubitLabel] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Hilbert space dimension, `2^len`.
    pub fn dim(&self) -> usize {
        1 << self.0.len()
    }

    pub fn contains(&self, label: QubitLabel) -> bool {
        self.0.contains(&label)
    }

    pub fn position(&self, label: QubitLabel) -> Result<usize> {
        self.0
            .iter()
            .position(|l| *l == label)
            .ok_or(QuantumError::UnknownLabel(label))
    }

    pub fn concat(&self, other: &Register) -> Result<Register> {
        if let Some(l) = other.0.iter().find(|l| self.contains(**l)) {
            return Err(QuantumError::OverlappingLabels(*l));
        }
        let mut labels = self.0.clone();
        labels.extend_from_slice(&other.0);
        Ok(Register(labels))
    }

    pub fn same_set(&self, other: &Register) -> bool {
        self.len() == other.len() && other.0.iter().all(|l| self.contains(*l))
    }

    /// Positions in `self` of each label in `subset`, in `subset` order.
    pub(crate) fn positions(&self, subset: &[QubitLabel]) -> Result<Vec<usize>> {
        subset.iter().map(|l| self.position(*l)).collect()
    }
}

/// Maps a compact index over `positions.len()` bits onto the full register
/// index with those bits scattered to `positions`.
pub(crate) fn scatter(compact: usize, positions: &[usize]) -> usize {
    positions
        .iter()
        .enumerate()
        .fold(0, |acc, (k, p)| acc | (((compact >> k) & 1) << p))
}
