//! Exact few-qubit linear algebra: labeled pure and mixed states, the gates
//! the protocol needs, basis measurement, partial trace and state metrics.

mod error;
pub mod gate;
mod label;
mod measure;
mod metrics;
mod mixed;
mod pure;
mod state;

pub use error::{QuantumError, Result};
pub use gate::{Gate1, Gate2};
pub use label::{Party, QubitLabel, Register};
pub use measure::{Measurement, Outcome, SingleQubit};
pub use metrics::{fidelity, trace_distance};
pub use mixed::{MixedState, DENSITY_TOL};
pub use pure::PureState;
pub use state::{AsStateRef, State, StateRef};

pub type C64 = num_complex::Complex64;

/// Convenience constructor for real amplitudes.
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

#[cfg(test)]
mod tests;
