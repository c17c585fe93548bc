//! Simulation and analysis of quantum authentication with shared EPR pairs.
//!
//! Alice and Bob hold `2K` pairs in `|Φ⁺⟩` plus secret rotation angles. In
//! each round the verifier sends a random qubit, the identifier entangles it
//! with its half of a pair by a C-NOT, and the verifier undoes the C-NOT with
//! its own half and checks that the qubit came back unchanged.

pub mod adversary;
pub mod analysis;
pub mod cli;
pub mod montecarlo;
pub mod protocol;
pub mod quantum;
pub mod rng;
