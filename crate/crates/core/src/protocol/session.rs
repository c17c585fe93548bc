use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::challenge::{make_challenge, Challenge};
use super::channel::{Adversary, Link};
use super::config::{identifier_for, verifier_indices, ProtocolError, Result, SessionConfig};
use super::joint::JointState;
use super::key::{setup_keys, AuthKey};
use crate::quantum::{Measurement, Outcome, Party, QubitLabel, State};
use crate::rng;

/// How the verifier's measurement result is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RoundMode {
    /// Outcomes are drawn with their Born probabilities.
    Sampled,
    /// Every measurement is conditioned on passing, so the product of the
    /// recorded probabilities is the exact acceptance probability.
    Postselected,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum AbortReason {
    FailedMeasurement { index: usize },
    TooManyRequests { party: Party },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Accepted,
    Aborted(AbortReason),
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, Verdict::Accepted)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChallengeRecord {
    pub index: usize,
    pub verifier: Party,
    pub prob_pass: f64,
    pub outcome: Option<Outcome>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RoundResult {
    /// 1 for the first round on fresh keys.
    pub session: u64,
    pub mode: RoundMode,
    pub records: Vec<ChallengeRecord>,
    pub verdict: Verdict,
    pub keys_retained: bool,
    /// Pair indices announced on the classical channel, in order.
    pub announced_indices: Vec<usize>,
    /// Product of the recorded pass probabilities.
    pub analytic_acceptance: f64,
}

impl RoundResult {
    pub fn accepted(&self) -> bool {
        self.verdict.is_accepted()
    }
}

/// A pair of keys and the shared physical state, carried across rounds.
#[derive(Debug, Clone)]
pub struct Session {
    config: SessionConfig,
    alice: AuthKey,
    bob: AuthKey,
    joint: JointState,
    rounds: u64,
    challenges: ChaCha8Rng,
    outcomes: ChaCha8Rng,
    eve: ChaCha8Rng,
}

impl Session {
    pub fn new(config: SessionConfig) -> Result<Self> {
        config.validate()?;
        let (alice, bob, joint) = setup_keys(&config)?;
        Ok(Self {
            alice,
            bob,
            joint,
            rounds: 0,
            challenges: rng::stream(config.seed, rng::CHALLENGES),
            outcomes: rng::stream(config.seed, rng::OUTCOMES),
            eve: rng::stream(config.seed, rng::EVE),
            config,
        })
    }

    pub fn config(&self) -> &SessionConfig {
        &self.config
    }

    pub fn alice(&self) -> &AuthKey {
        &self.alice
    }

    pub fn bob(&self) -> &AuthKey {
        &self.bob
    }

    pub fn joint(&self) -> &JointState {
        &self.joint
    }

    /// Mutable access for test harnesses that need to corrupt the state.
    pub fn joint_mut(&mut self) -> &mut JointState {
        &mut self.joint
    }

    pub fn rounds(&self) -> u64 {
        self.rounds
    }

    /// Runs one authentication round: bilateral rotation of every pair,
    /// then Bob verifies Alice on odd pairs and Alice verifies Bob on even
    /// pairs.
    pub fn run_round(&mut self, mode: RoundMode, adversary: Option<&mut dyn Adversary>) -> Result<RoundResult> {
        self.run_round_with(mode, adversary, |_, _| Ok(()))
    }

    /// As [`Session::run_round`], with `tamper` applied to each challenge
    /// qubit right before the verifier decodes it.
    pub fn run_round_with(
        &mut self,
        mode: RoundMode,
        mut adversary: Option<&mut dyn Adversary>,
        mut tamper: impl FnMut(&mut JointState, QubitLabel) -> Result<()>,
    ) -> Result<RoundResult> {
        if self.alice.is_discarded() || self.bob.is_discarded() {
            return Err(ProtocolError::KeysDiscarded);
        }
        self.rounds += 1;
        for i in 1..=self.config.pair_count() {
            bilateral_rotate(&mut self.joint, i, &self.alice, &self.bob)?;
        }
        if let Some(adv) = adversary.as_deref_mut() {
            adv.begin_round(self.rounds);
        }
        let absent = adversary.as_ref().and_then(|a| a.absent_party());
        let mut records = Vec::new();
        let mut announced = Vec::new();
        let mut verdict = Verdict::Accepted;

        'directions: for verifier in [Party::Bob, Party::Alice] {
            if absent == Some(verifier) {
                continue;
            }
            let identifier = super::config::other(verifier);
            for index in verifier_indices(verifier, self.config.k_prime) {
                debug_assert_eq!(identifier_for(index), identifier);
                let challenge = make_challenge(&mut self.challenges, index, self.config.ensemble);
                announced.push(index);
                let sent = challenge.label();
                self.joint.insert(challenge.state.to_state(sent))?;

                let mut link =
                    Link::new(&mut self.joint, &mut self.eve, self.rounds - 1, index, verifier, identifier, sent);
                let returned = match adversary.as_deref_mut() {
                    Some(adv) if absent == Some(identifier) => adv.respond(&mut link)?,
                    Some(adv) => {
                        let delivered = adv.on_forward(&mut link)?;
                        identifier_encode(&mut self.joint, QubitLabel::new(identifier, index), delivered)?;
                        let mut link = Link::new(
                            &mut self.joint,
                            &mut self.eve,
                            self.rounds - 1,
                            index,
                            verifier,
                            identifier,
                            sent,
                        );
                        adv.on_return(&mut link, delivered)?
                    }
                    None => {
                        identifier_encode(&mut self.joint, QubitLabel::new(identifier, index), sent)?;
                        sent
                    }
                };
                tamper(&mut self.joint, returned)?;

                let key = QubitLabel::new(verifier, index);
                let m = verifier_decode_and_test(&mut self.joint, key, returned, &challenge)?;
                let prob_pass = m.prob_pass;
                let (outcome, post) = match mode {
                    RoundMode::Sampled => {
                        let (o, s) = m.sample(&mut self.outcomes);
                        (Some(o), Some(s))
                    }
                    RoundMode::Postselected => (None, m.into_branch(Outcome::Pass)),
                };
                let passed = post.is_some() && outcome != Some(Outcome::Fail);
                if let Some(post) = post {
                    self.joint.commit(returned, post)?;
                    let hint = if passed { challenge.state } else { challenge.state.orthogonal() };
                    self.joint.discard(returned, Some(&hint))?;
                }
                if let Some(adv) = adversary.as_deref_mut() {
                    let mut link = Link::new(
                        &mut self.joint,
                        &mut self.eve,
                        self.rounds - 1,
                        index,
                        verifier,
                        identifier,
                        sent,
                    );
                    adv.after_challenge(&mut link, outcome)?;
                }
                // whatever Eve still holds of the challenge leaves the system
                if sent != returned && self.joint.contains(sent) {
                    self.joint.discard(sent, None)?;
                }
                records.push(ChallengeRecord { index, verifier, prob_pass, outcome });
                if !passed {
                    verdict = Verdict::Aborted(AbortReason::FailedMeasurement { index });
                    break 'directions;
                }
            }
            if absent != Some(identifier) {
                if let Some(adv) = adversary.as_deref_mut() {
                    if adv.extra_requests(identifier) > 0 {
                        verdict = Verdict::Aborted(AbortReason::TooManyRequests { party: identifier });
                        break 'directions;
                    }
                }
            }
        }

        let keys_retained = verdict.is_accepted();
        if keys_retained {
            self.alice.mark_completed();
            self.bob.mark_completed();
        } else {
            self.alice.discard();
            self.bob.discard();
        }
        let analytic_acceptance = records.iter().map(|r| r.prob_pass).product();
        Ok(RoundResult {
            session: self.rounds,
            mode,
            records,
            verdict,
            keys_retained,
            announced_indices: announced,
            analytic_acceptance,
        })
    }
}

/// Both parties rotate their half of pair `index` by the shared angle.
pub fn bilateral_rotate(joint: &mut JointState, index: usize, alice: &AuthKey, bob: &AuthKey) -> Result<()> {
    let (ta, tb) = (alice.theta(index)?, bob.theta(index)?);
    if ta != tb {
        return Err(ProtocolError::ThetaMismatch(index));
    }
    let (a, b) = (alice.pair(index)?, bob.pair(index)?);
    joint.apply_rotation(a.own, ta)?;
    joint.apply_rotation(b.own, tb)
}

/// The identifier's C-NOT from its key qubit onto the received qubit.
pub fn identifier_encode(joint: &mut JointState, key: QubitLabel, received: QubitLabel) -> Result<()> {
    joint.apply_cnot(key, received)
}

/// The verifier's C-NOT from its key qubit onto the returned qubit,
/// followed by the measurement in the challenge basis. Nothing is committed.
pub fn verifier_decode_and_test(
    joint: &mut JointState,
    key: QubitLabel,
    returned: QubitLabel,
    challenge: &Challenge,
) -> Result<Measurement<State>> {
    joint.apply_cnot(key, returned)?;
    joint.measure(returned, &challenge.state)
}

/// One round on fresh keys, sampled, with an optional eavesdropper.
pub fn run_session(config: &SessionConfig, adversary: Option<&mut dyn Adversary>) -> Result<RoundResult> {
    Session::new(config.clone())?.run_round(RoundMode::Sampled, adversary)
}
