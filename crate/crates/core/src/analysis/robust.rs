use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::protocol::{identifier_encode, verifier_decode_and_test, Challenge, JointState, Result};
use crate::quantum::{fidelity, trace_distance, MixedState, PureState, QubitLabel, SingleQubit, C64};

const A: QubitLabel = QubitLabel::alice(1);
const B: QubitLabel = QubitLabel::bob(1);
const G: QubitLabel = QubitLabel::challenge(1);

/// `ρ = (1 − ε)|Φ⁺⟩⟨Φ⁺| + ε ρ₁` on pair 1.
pub fn corrupted_key(epsilon: f64, rho1: &MixedState) -> Result<MixedState> {
    let phi = PureState::phi_plus(A, B)?.to_density();
    let rho1 = rho1.permuted(&[A, B])?;
    Ok(MixedState::mixture(&[(1.0 - epsilon, &phi), (epsilon, &rho1)])?)
}

/// A random density matrix on `labels` from the Ginibre ensemble.
pub fn random_density<R: Rng + ?Sized>(rng: &mut R, labels: Vec<QubitLabel>) -> Result<MixedState> {
    let d = 1usize << labels.len();
    let g = DMatrix::<C64>::from_fn(d, d, |_, _| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    let mut m = m / C64::new(tr, 0.0);
    // remove rounding asymmetry
    let sym = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    m.copy_from(&sym);
    Ok(MixedState::new(labels, m)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RobustnessReport {
    pub epsilon: f64,
    pub failure_probability: f64,
    pub failure_bound: f64,
    /// `T(|Φ⁺⟩⟨Φ⁺|, ρ)`.
    pub trace_distance: f64,
    /// `T(|Φ⁺⟩⟨Φ⁺|, ρ′)` for the key after the round, outcome averaged.
    pub trace_distance_after: f64,
    pub distance_bound: f64,
    pub fidelity_before: f64,
    pub fidelity_after: f64,
    pub fidelity_bound: f64,
}

/// One honest challenge on the corrupted key `ρ`, evolved as a density
/// matrix, compared with the bounds `ε`, `2√ε` and `1 − ε`.
pub fn robustness_bounds(epsilon: f64, rho1: &MixedState, challenge: &SingleQubit, theta: f64) -> Result<RobustnessReport> {
    let rho = corrupted_key(epsilon, rho1)?;
    let phi = PureState::phi_plus(A, B)?;
    let mut joint = JointState::from_blocks(vec![rho.clone().into()])?;
    joint.apply_rotation(A, theta)?;
    joint.apply_rotation(B, theta)?;
    joint.insert(challenge.to_state(G))?;
    identifier_encode(&mut joint, A, G)?;
    let m = verifier_decode_and_test(&mut joint, B, G, &Challenge::new(1, *challenge))?;
    let failure_probability = m.prob_fail();
    joint.dephase(G, challenge)?;
    let after = joint.reduced(&[A, B])?;
    Ok(RobustnessReport {
        epsilon,
        failure_probability,
        failure_bound: epsilon,
        trace_distance: trace_distance(&phi, &rho)?,
        trace_distance_after: trace_distance(&phi, &after)?,
        distance_bound: 2.0 * epsilon.sqrt(),
        fidelity_before: fidelity(&phi, &rho)?,
        fidelity_after: fidelity(&phi, &after)?,
        fidelity_bound: 1.0 - epsilon,
    })
}
