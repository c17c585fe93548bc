use thiserror::Error;

use super::QubitLabel;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuantumError {
    #[error("expected {expected} amplitudes or matrix dimension, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state vector has zero norm")]
    ZeroVector,
    #[error("label {0} appears twice in the register")]
    DuplicateLabel(QubitLabel),
    #[error("label {0} is present in both operands")]
    OverlappingLabels(QubitLabel),
    #[error("label {0} is not in the register")]
    UnknownLabel(QubitLabel),
    #[error("gate needs two distinct qubits, got {0} twice")]
    SameQubit(QubitLabel),
    #[error("measurement basis is not normalized (norm² = {0})")]
    UnnormalizedBasis(f64),
    #[error("partial trace needs at least one qubit to keep")]
    EmptyKeep,
    #[error("operands are defined over different registers")]
    RegisterMismatch,
    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("matrix is not a density matrix: {0}")]
    InvalidDensity(String),
    #[error("qubit {0} is entangled with the rest of the register")]
    NotSeparable(QubitLabel),
}

pub type Result<T, E = QuantumError> = std::result::Result<T, E>;
