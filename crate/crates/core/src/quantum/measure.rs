use rand::Rng;
use serde::{Deserialize, Serialize};

use super::error::{QuantumError, Result};
use super::gate::Gate1;
use super::{PureState, QubitLabel, C64};

const NORM_TOL: f64 = 1e-12;
const BRANCH_SNAP: f64 = 1e-14;

/// A normalized single-qubit pure state `a|0⟩ + b|1⟩`.
///
/// Used both as challenge states and as measurement bases.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingleQubit {
    pub a: C64,
    pub b: C64,
}

impl SingleQubit {
    /// Accepts `(a, b)` only if `|a|² + |b|² = 1` within 1e-12.
    pub fn new(a: C64, b: C64) -> Result<Self> {
        let n = a.norm_sqr() + b.norm_sqr();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(QuantumError::UnnormalizedBasis(n));
        }
        Ok(Self { a, b })
    }

    pub fn normalized(a: C64, b: C64) -> Result<Self> {
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if n == 0.0 || !n.is_finite() {
            return Err(QuantumError::ZeroVector);
        }
        Ok(Self { a: a / n, b: b / n })
    }

    pub fn zero() -> Self {
        Self { a: C64::new(1.0, 0.0), b: C64::new(0.0, 0.0) }
    }

    pub fn one() -> Self {
        Self { a: C64::new(0.0, 0.0), b: C64::new(1.0, 0.0) }
    }

    pub fn plus() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self { a: h.into(), b: h.into() }
    }

    /// `b*|0⟩ − a*|1⟩`, the fixed orthogonal complement.
    pub fn orthogonal(&self) -> Self {
        Self { a: self.b.conj(), b: -self.a.conj() }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &SingleQubit) -> C64 {
        self.a.conj() * other.a + self.b.conj() * other.b
    }

    pub fn apply(&self, gate: &Gate1) -> Self {
        Self {
            a: gate[(0, 0)] * self.a + gate[(0, 1)] * self.b,
            b: gate[(1, 0)] * self.a + gate[(1, 1)] * self.b,
        }
    }

    pub fn to_state(&self, label: QubitLabel) -> PureState {
        PureState::from_parts(vec![label], vec![self.a, self.b])
    }

    /// `|self⟩⟨self|` as a 2×2 matrix.
    pub fn projector(&self) -> Gate1 {
        Gate1::new(
            self.a * self.a.conj(),
            self.a * self.b.conj(),
            self.b * self.a.conj(),
            self.b * self.b.conj(),
        )
    }

    pub(crate) fn check_basis(&self) -> Result<()> {
        let n = self.norm_sqr();
        if (n - 1.0).abs() > NORM_TOL {
            return Err(QuantumError::UnnormalizedBasis(n));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
}

/// Result of a projective measurement onto `{|ψ⟩, |ψ⊥⟩}`.
///
/// Holds both branches so callers can either sample or postselect.
#[derive(Debug, Clone)]
pub struct Measurement<S> {
    pub prob_pass: f64,
    pass_state: Option<S>,
    fail_state: Option<S>,
}

impl<S> Measurement<S> {
    /// Branch weights within `BRANCH_SNAP` of 0 or 1 are snapped so that a
    /// zero-weight branch is never sampled.
    pub(crate) fn new(prob_pass: f64, pass_state: Option<S>, fail_state: Option<S>) -> Self {
        let p = if prob_pass < BRANCH_SNAP {
            0.0
        } else if prob_pass > 1.0 - BRANCH_SNAP {
            1.0
        } else {
            prob_pass
        };
        Self {
            prob_pass: p,
            pass_state: if p > 0.0 { pass_state } else { None },
            fail_state: if p < 1.0 { fail_state } else { None },
        }
    }

    pub fn prob_fail(&self) -> f64 {
        1.0 - self.prob_pass
    }

    /// Post-measurement state for the pass branch; `None` if it has zero weight.
    pub fn pass_state(&self) -> Option<&S> {
        self.pass_state.as_ref()
    }

    pub fn fail_state(&self) -> Option<&S> {
        self.fail_state.as_ref()
    }

    pub fn into_branch(self, outcome: Outcome) -> Option<S> {
        match outcome {
            Outcome::Pass => self.pass_state,
            Outcome::Fail => self.fail_state,
        }
    }

    pub fn map<T>(self, mut f: impl FnMut(S) -> T) -> Measurement<T> {
        Measurement {
            prob_pass: self.prob_pass,
            pass_state: self.pass_state.map(&mut f),
            fail_state: self.fail_state.map(&mut f),
        }
    }

    pub fn sample_outcome<R: Rng + ?Sized>(&self, rng: &mut R) -> Outcome {
        if rng.random::<f64>() < self.prob_pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    /// Draws an outcome and returns it with the renormalized post-state.
    pub fn sample<R: Rng + ?Sized>(self, rng: &mut R) -> (Outcome, S) {
        let outcome = self.sample_outcome(rng);
        let state = match outcome {
            Outcome::Pass => self.pass_state,
            Outcome::Fail => self.fail_state,
        };
        // a branch with zero weight is never drawn
        (outcome, state.expect("sampled branch has positive probability"))
    }
}
