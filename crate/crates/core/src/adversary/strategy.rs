use std::f64::consts::FRAC_PI_4;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::protocol::{Adversary, ProtocolError, Result};
use crate::quantum::{gate, Gate1, Gate2, SingleQubit, C64};

use super::optimize::optimize_key_steal;
use super::policy::{GhzMode, GhzPolicy, InterceptForwardPolicy, InterceptReturnPolicy, RandomImpersonationPolicy};

const NORM_TOL: f64 = 1e-9;

/// An eavesdropping strategy and its parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum EveStrategy {
    /// Eve answers challenges meant for an absent Alice with states drawn
    /// from `ensemble`, without touching any key.
    RandomImpersonation {
        #[serde(default)]
        ensemble: ResponseEnsemble,
    },
    /// Strategy I: tamper with the challenge before the identifier sees it.
    InterceptForward { tamper: Tamper },
    /// Strategy II: entangle an ancilla with the returning challenge.
    InterceptReturn { unitary: JointUnitary },
    /// Strategy III: become part of a GHZ state with the key pairs in one
    /// round, then impersonate Alice with that share in the next.
    GhzInject,
    /// Steals the key at `θ = π/4` by rotating her share and routing it
    /// through the identifier's C-NOT.
    QuarterPiKeySteal,
    /// GHZ share plus knowledge of the fixed angle; flips her share first
    /// when `sin²θ > cos²θ`.
    FixedAngleImpersonate { theta: f64 },
    /// Key theft with rotations `φ₁` before and `φ₂` after the identifier's
    /// C-NOT. Missing angles are chosen by maximizing the stolen fidelity
    /// for `theta`.
    FixedAngleKeySteal {
        theta: f64,
        #[serde(default)]
        phi1: Option<f64>,
        #[serde(default)]
        phi2: Option<f64>,
    },
}

impl EveStrategy {
    /// Builds a strategy from a name and a parameter object, as used by
    /// scenario files.
    pub fn from_name_params(name: &str, params: &Value) -> Result<Self> {
        let mut obj = match params {
            Value::Null => serde_json::Map::new(),
            Value::Object(m) => m.clone(),
            _ => return Err(ProtocolError::Strategy("strategy_params must be an object".into())),
        };
        obj.insert("kind".into(), Value::String(name.to_string()));
        let s: EveStrategy =
            serde_json::from_value(Value::Object(obj)).map_err(|e| ProtocolError::Strategy(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn name(&self) -> &'static str {
        match self {
            EveStrategy::RandomImpersonation { .. } => "random_impersonation",
            EveStrategy::InterceptForward { .. } => "intercept_forward",
            EveStrategy::InterceptReturn { .. } => "intercept_return",
            EveStrategy::GhzInject => "ghz_inject",
            EveStrategy::QuarterPiKeySteal => "quarter_pi_key_steal",
            EveStrategy::FixedAngleImpersonate { .. } => "fixed_angle_impersonate",
            EveStrategy::FixedAngleKeySteal { .. } => "fixed_angle_key_steal",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            EveStrategy::RandomImpersonation { ensemble } => ensemble.validate(),
            EveStrategy::InterceptForward { tamper } => tamper.validate(),
            EveStrategy::InterceptReturn { unitary } => unitary.validate(),
            EveStrategy::FixedAngleImpersonate { theta } => finite(*theta, "theta"),
            EveStrategy::FixedAngleKeySteal { theta, phi1, phi2 } => {
                finite(*theta, "theta")?;
                phi1.map_or(Ok(()), |p| finite(p, "phi1"))?;
                phi2.map_or(Ok(()), |p| finite(p, "phi2"))
            }
            EveStrategy::GhzInject | EveStrategy::QuarterPiKeySteal => Ok(()),
        }
    }

    /// Rounds the strategy spends setting up before the attacked round.
    pub fn preparation_rounds(&self) -> u64 {
        match self {
            EveStrategy::GhzInject
            | EveStrategy::QuarterPiKeySteal
            | EveStrategy::FixedAngleImpersonate { .. }
            | EveStrategy::FixedAngleKeySteal { .. } => 1,
            _ => 0,
        }
    }

    /// The channel policy for one run of the protocol.
    pub fn build(&self) -> Result<Box<dyn Adversary>> {
        self.validate()?;
        Ok(match self {
            EveStrategy::RandomImpersonation { ensemble } => Box::new(RandomImpersonationPolicy::new(ensemble.clone())),
            EveStrategy::InterceptForward { tamper } => Box::new(InterceptForwardPolicy::new(tamper.clone())),
            EveStrategy::InterceptReturn { unitary } => Box::new(InterceptReturnPolicy::new(unitary.to_gate()?)),
            EveStrategy::GhzInject => Box::new(GhzPolicy::new(GhzMode::Impersonate { flip: false })),
            EveStrategy::FixedAngleImpersonate { theta } => {
                Box::new(GhzPolicy::new(GhzMode::Impersonate { flip: flip_first(*theta) }))
            }
            EveStrategy::QuarterPiKeySteal => Box::new(GhzPolicy::new(GhzMode::Steal { phi1: FRAC_PI_4, phi2: 0.0 })),
            EveStrategy::FixedAngleKeySteal { .. } => {
                let (phi1, phi2) = self.steal_angles()?.expect("key-steal strategy");
                Box::new(GhzPolicy::new(GhzMode::Steal { phi1, phi2 }))
            }
        })
    }

    /// The `(φ₁, φ₂)` a key-steal strategy will use.
    pub fn steal_angles(&self) -> Result<Option<(f64, f64)>> {
        Ok(match self {
            EveStrategy::QuarterPiKeySteal => Some((FRAC_PI_4, 0.0)),
            EveStrategy::FixedAngleKeySteal { theta, phi1, phi2 } => match (phi1, phi2) {
                (Some(a), Some(b)) => Some((*a, *b)),
                _ => {
                    let best = optimize_key_steal(*theta)?;
                    Some((phi1.unwrap_or(best.phi1), phi2.unwrap_or(best.phi2)))
                }
            },
            _ => None,
        })
    }
}

/// Whether Eve should flip her share before answering, given the angle.
pub fn flip_first(theta: f64) -> bool {
    let (s, c) = theta.sin_cos();
    s * s > c * c
}

fn finite(x: f64, name: &str) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(ProtocolError::Strategy(format!("{name} must be finite")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResponseComponent {
    pub p: f64,
    pub state: SingleQubit,
}

/// The ensemble `{p_k, |ψ′_k⟩}` Eve's response is drawn from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ResponseEnsemble {
    /// Fresh random weights and Haar-random states for every challenge.
    Random { components: usize },
    Fixed { components: Vec<ResponseComponent> },
}

impl Default for ResponseEnsemble {
    fn default() -> Self {
        ResponseEnsemble::Random { components: 2 }
    }
}

impl ResponseEnsemble {
    pub fn validate(&self) -> Result<()> {
        match self {
            ResponseEnsemble::Random { components } if *components == 0 => {
                Err(ProtocolError::Strategy("a response ensemble needs at least one component".into()))
            }
            ResponseEnsemble::Random { .. } => Ok(()),
            ResponseEnsemble::Fixed { components } => {
                if components.is_empty() {
                    return Err(ProtocolError::Strategy("a response ensemble needs at least one component".into()));
                }
                if components.iter().any(|c| c.p.is_nan() || c.p < 0.0) {
                    return Err(ProtocolError::Strategy("ensemble weights must be non-negative".into()));
                }
                let total: f64 = components.iter().map(|c| c.p).sum();
                if (total - 1.0).abs() > NORM_TOL {
                    return Err(ProtocolError::Strategy(format!("ensemble weights sum to {total}, not 1")));
                }
                for c in components {
                    if (c.state.norm_sqr() - 1.0).abs() > NORM_TOL {
                        return Err(ProtocolError::Strategy("ensemble states must be normalized".into()));
                    }
                }
                Ok(())
            }
        }
    }
}

/// Complex matrix entries as `[re, im]` pairs, row by row.
pub type MatrixSpec<const N: usize> = [[C64; N]; N];

/// Single-qubit tampering for strategy I.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum Tamper {
    Identity,
    PauliX,
    Rotation { theta: f64 },
    Unitary { matrix: MatrixSpec<2> },
    /// Measure in `{basis, basis⊥}` and forward the collapsed qubit.
    Measure { basis: SingleQubit },
}

impl Tamper {
    pub fn validate(&self) -> Result<()> {
        match self {
            Tamper::Unitary { .. } => self.unitary().map(|_| ()),
            Tamper::Measure { basis } => SingleQubit::new(basis.a, basis.b).map(|_| ()).map_err(Into::into),
            Tamper::Rotation { theta } => finite(*theta, "theta"),
            _ => Ok(()),
        }
    }

    /// The gate, when the tampering is unitary.
    pub fn unitary(&self) -> Result<Option<Gate1>> {
        Ok(match self {
            Tamper::Identity => Some(gate::identity1()),
            Tamper::PauliX => Some(gate::pauli_x()),
            Tamper::Rotation { theta } => Some(gate::rotation(*theta)),
            Tamper::Unitary { matrix } => {
                let m = Gate1::from_fn(|r, c| matrix[r][c]);
                check_unitary(gate::unitarity_defect(&m))?;
                Some(m)
            }
            Tamper::Measure { .. } => None,
        })
    }
}

/// Two-qubit interaction for strategy II, on `(returned, ancilla)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum JointUnitary {
    Identity,
    Swap,
    /// C-NOT with the returned qubit as control.
    Cnot,
    Unitary { matrix: Box<MatrixSpec<4>> },
}

impl JointUnitary {
    pub fn validate(&self) -> Result<()> {
        self.to_gate().map(|_| ())
    }

    pub fn to_gate(&self) -> Result<Gate2> {
        Ok(match self {
            JointUnitary::Identity => gate::identity2(),
            JointUnitary::Swap => gate::swap_matrix(),
            JointUnitary::Cnot => gate::cnot_matrix(),
            JointUnitary::Unitary { matrix } => {
                let m = Gate2::from_fn(|r, c| matrix[r][c]);
                check_unitary(gate::unitarity_defect(&m))?;
                m
            }
        })
    }
}

fn check_unitary(defect: f64) -> Result<()> {
    if defect > NORM_TOL {
        return Err(ProtocolError::Strategy(format!("matrix is not unitary (defect {defect:e})")));
    }
    Ok(())
}
