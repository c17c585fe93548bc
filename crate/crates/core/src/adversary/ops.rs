//! The individual attack steps, usable inside a session through a [`Link`]
//! or standalone on a single key pair.

use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use serde::Serialize;

use crate::protocol::{
    identifier_encode, make_challenge, verifier_decode_and_test, Challenge, ChallengeEnsemble, JointState, Link,
    Result,
};
use crate::quantum::{fidelity, Gate2, MixedState, Party, PureState, QubitLabel, SingleQubit};

use super::strategy::{flip_first, ResponseEnsemble, Tamper};

const A: QubitLabel = QubitLabel::alice(1);
const B: QubitLabel = QubitLabel::bob(1);
const E: QubitLabel = QubitLabel::eve(1);
const G: QubitLabel = QubitLabel::challenge(1);

/// Eve's reply `ρ = Σ p_k |ψ′_k⟩⟨ψ′_k|` to challenge `challenge_index`,
/// carried on her qubit for that pair.
pub fn random_impersonation_respond<R: Rng + ?Sized>(
    rng: &mut R,
    challenge_index: usize,
    ensemble: &ResponseEnsemble,
) -> Result<MixedState> {
    ensemble.validate()?;
    let label = QubitLabel::eve(challenge_index);
    let parts: Vec<(f64, SingleQubit)> = match ensemble {
        ResponseEnsemble::Fixed { components } => components.iter().map(|c| (c.p, c.state)).collect(),
        ResponseEnsemble::Random { components } => {
            let raw: Vec<(f64, SingleQubit)> = (0..*components)
                .map(|_| {
                    let w = rng.random::<f64>();
                    (w, make_challenge(rng, challenge_index, ChallengeEnsemble::Haar).state)
                })
                .collect();
            let total: f64 = raw.iter().map(|(w, _)| w).sum();
            raw.into_iter().map(|(w, q)| (w / total, q)).collect()
        }
    };
    response_density(label, &parts)
}

/// `Σ p_k |ψ′_k⟩⟨ψ′_k|` on `label`.
pub fn response_density(label: QubitLabel, parts: &[(f64, SingleQubit)]) -> Result<MixedState> {
    let dens: Vec<(f64, MixedState)> = parts.iter().map(|(p, q)| (*p, q.to_state(label).to_density())).collect();
    let refs: Vec<(f64, &MixedState)> = dens.iter().map(|(p, m)| (*p, m)).collect();
    Ok(MixedState::mixture(&refs)?)
}

/// Strategy I: Eve applies `tamper` to `qubit` on its way to the identifier.
/// A measurement is non-selective; Eve keeps no record of it.
pub fn intercept_forward(link: &mut Link<'_>, qubit: QubitLabel, tamper: &Tamper) -> Result<()> {
    match tamper {
        Tamper::Measure { basis } => link.dephase(qubit, &SingleQubit::normalized(basis.a, basis.b)?),
        _ => {
            let u = tamper.unitary()?.expect("unitary tamper");
            link.apply_single(qubit, &u)
        }
    }
}

/// Strategy II: Eve lets `unitary` act on `(returned, ancilla)`, creating
/// the ancilla in `|0⟩` if she does not hold it yet.
pub fn intercept_return_entangle(
    link: &mut Link<'_>,
    returned: QubitLabel,
    ancilla: QubitLabel,
    unitary: &Gate2,
) -> Result<()> {
    if !link.holds(ancilla) {
        link.prepare_pure(ancilla, &SingleQubit::zero())?;
    }
    link.apply_two_qubit(returned, ancilla, unitary)
}

/// Eve answers a challenge with her GHZ share: an optional NOT on the
/// share, then a C-NOT from the share onto the challenge.
pub fn impersonate_with_share(link: &mut Link<'_>, share: QubitLabel, flip: bool) -> Result<QubitLabel> {
    if flip {
        link.apply_not(share)?;
    }
    let challenge = link.in_flight();
    link.apply_cnot(share, challenge)?;
    Ok(challenge)
}

/// Strategy III set-up: Eve's `|0⟩` stands in for the challenge, so the
/// identifier's C-NOT ties it into a GHZ state with pair `pair_index`.
/// Returns Eve's qubit.
pub fn ghz_inject(joint: &mut JointState, pair_index: usize, identifier: Party) -> Result<QubitLabel> {
    let eve = QubitLabel::eve(pair_index);
    joint.insert(SingleQubit::zero().to_state(eve))?;
    identifier_encode(joint, QubitLabel::new(identifier, pair_index), eve)?;
    Ok(eve)
}

/// Pair 1 after GHZ injection, with Alice's and Bob's halves rotated by
/// `theta` as in the round that follows.
pub fn ghz_after_rotation(theta: f64) -> Result<JointState> {
    let mut joint = JointState::from_blocks(vec![PureState::phi_plus(A, B)?.into()])?;
    ghz_inject(&mut joint, 1, Party::Alice)?;
    joint.apply_rotation(A, theta)?;
    joint.apply_rotation(B, theta)?;
    Ok(joint)
}

/// Bob's pass probability when Eve impersonates Alice using her GHZ share
/// on `challenge`.
pub fn impersonation_pass_probability(theta: f64, challenge: &SingleQubit, flip: bool) -> Result<f64> {
    let mut joint = ghz_after_rotation(theta)?;
    joint.insert(challenge.to_state(G))?;
    if flip {
        joint.apply_not(E)?;
    }
    joint.apply_cnot(E, G)?;
    Ok(verifier_decode_and_test(&mut joint, B, G, &Challenge::new(1, *challenge))?.prob_pass)
}

/// Probability that Bob catches the GHZ-share impersonation at angle
/// `theta`, averaged exactly over `ensemble`.
pub fn ghz_detection_exact(theta: f64, ensemble: ChallengeEnsemble) -> Result<f64> {
    Ok(1.0 - ensemble.exact_average(|q| impersonation_pass_probability(theta, q, false))?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Impersonation {
    /// Whether Eve flips her share before answering.
    pub flip: bool,
    pub pass_probability: f64,
}

/// Eve knows the fixed angle and picks her branch accordingly. The pass
/// probability is averaged exactly over `ensemble`.
pub fn fixed_angle_impersonate(theta: f64, ensemble: ChallengeEnsemble) -> Result<Impersonation> {
    let flip = flip_first(theta);
    let pass_probability = ensemble.exact_average(|q| impersonation_pass_probability(theta, q, flip))?;
    Ok(Impersonation { flip, pass_probability })
}

/// `(A, B, E)` after GHZ injection, rotation by `theta`, Eve's `R(φ₁)`,
/// Alice's C-NOT onto Eve's qubit and Eve's `R(φ₂)`.
pub fn key_steal_state(theta: f64, phi1: f64, phi2: f64) -> Result<JointState> {
    let mut joint = ghz_after_rotation(theta)?;
    joint.apply_rotation(E, phi1)?;
    identifier_encode(&mut joint, A, E)?;
    joint.apply_rotation(E, phi2)?;
    Ok(joint)
}

/// Fidelity with `|Φ⁺⟩` of Bob's and Eve's qubits after the key-steal
/// sequence.
pub fn fixed_angle_key_steal(theta: f64, phi1: f64, phi2: f64) -> Result<f64> {
    stolen_fidelity(&key_steal_state(theta, phi1, phi2)?)
}

pub(crate) fn stolen_fidelity(joint: &JointState) -> Result<f64> {
    let rho = joint.reduced(&[B, E])?;
    Ok(fidelity(&PureState::phi_plus(B, E)?, &rho)?)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KeySteal {
    /// Fidelity of Bob's and Eve's qubits with `|Φ⁺⟩`.
    pub fidelity: f64,
    /// Whether `theta` is an odd multiple of `π/4`, the case the attack is
    /// designed for.
    pub precondition_met: bool,
}

/// The `π/4` theft: Eve rotates her GHZ share by `π/4` and routes it through
/// Alice's C-NOT. At `θ = π/4` this leaves Bob and Eve in `|Φ⁺⟩`.
pub fn quarter_pi_key_steal(theta: f64) -> Result<KeySteal> {
    let fidelity = fixed_angle_key_steal(theta, std::f64::consts::FRAC_PI_4, 0.0)?;
    let r = (theta / FRAC_PI_2).rem_euclid(1.0);
    Ok(KeySteal { fidelity, precondition_met: (r - 0.5).abs() < 1e-9 })
}

/// After the key-steal sequence, Eve answers Bob's `challenge` with a C-NOT
/// from her qubit. Returns Bob's pass probability.
pub fn steal_then_answer(theta: f64, phi1: f64, phi2: f64, challenge: &SingleQubit) -> Result<f64> {
    let mut joint = key_steal_state(theta, phi1, phi2)?;
    joint.insert(challenge.to_state(G))?;
    joint.apply_cnot(E, G)?;
    Ok(verifier_decode_and_test(&mut joint, B, G, &Challenge::new(1, *challenge))?.prob_pass)
}

/// Bob's pass probability when Eve answers an absent Alice with `rho`,
/// evolved through the protocol on a fresh pair.
pub fn response_pass_probability(challenge: &SingleQubit, parts: &[(f64, SingleQubit)]) -> Result<f64> {
    let mut joint = JointState::from_blocks(vec![PureState::phi_plus(A, B)?.into()])?;
    joint.insert(response_density(E, parts)?)?;
    Ok(verifier_decode_and_test(&mut joint, B, E, &Challenge::new(1, *challenge))?.prob_pass)
}

/// Detection probability of strategy I on one challenge at angle `theta`.
pub fn intercept_forward_detection(theta: f64, challenge: &SingleQubit, tamper: &Tamper) -> Result<f64> {
    let mut joint = JointState::from_blocks(vec![PureState::phi_plus(A, B)?.into()])?;
    joint.apply_rotation(A, theta)?;
    joint.apply_rotation(B, theta)?;
    joint.insert(challenge.to_state(G))?;
    match tamper {
        Tamper::Measure { basis } => joint.dephase(G, &SingleQubit::normalized(basis.a, basis.b)?)?,
        _ => joint.apply_single(G, &tamper.unitary()?.expect("unitary tamper"))?,
    }
    identifier_encode(&mut joint, A, G)?;
    Ok(1.0 - verifier_decode_and_test(&mut joint, B, G, &Challenge::new(1, *challenge))?.prob_pass)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReturnAttack {
    pub detection: f64,
    /// Fidelity with `|Φ⁺⟩` of Bob's key qubit and Eve's ancilla after
    /// Bob's measurement passes.
    pub eve_fidelity: f64,
}

/// Strategy II on one challenge at angle `theta`, ancilla starting in `|0⟩`.
pub fn intercept_return_detection(theta: f64, challenge: &SingleQubit, unitary: &Gate2) -> Result<ReturnAttack> {
    let mut joint = JointState::from_blocks(vec![PureState::phi_plus(A, B)?.into()])?;
    joint.apply_rotation(A, theta)?;
    joint.apply_rotation(B, theta)?;
    joint.insert(challenge.to_state(G))?;
    identifier_encode(&mut joint, A, G)?;
    joint.insert(SingleQubit::zero().to_state(E))?;
    joint.apply_two_qubit(G, E, unitary)?;
    let m = verifier_decode_and_test(&mut joint, B, G, &Challenge::new(1, *challenge))?;
    let detection = m.prob_fail();
    let Some(post) = m.into_branch(crate::quantum::Outcome::Pass) else {
        return Ok(ReturnAttack { detection, eve_fidelity: 0.0 });
    };
    joint.commit(G, post)?;
    let rho = joint.reduced(&[B, E])?;
    let eve_fidelity = fidelity(&PureState::phi_plus(B, E)?, &rho)?;
    Ok(ReturnAttack { detection, eve_fidelity })
}

/// Averages `f(θ)` over `θ` uniform on `[0, 2π)`. Exact for trigonometric
/// polynomials of degree below 16, which covers every quantity here.
pub fn theta_average(mut f: impl FnMut(f64) -> Result<f64>) -> Result<f64> {
    const N: usize = 16;
    let mut total = 0.0;
    for k in 0..N {
        total += f(std::f64::consts::TAU * k as f64 / N as f64)?;
    }
    Ok(total / N as f64)
}

