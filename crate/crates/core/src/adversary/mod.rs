//! Eavesdropping strategies: channel policies for the session runner plus
//! the individual attack steps evaluated on a single pair.

mod ops;
mod optimize;
mod policy;
mod run;
mod strategy;

pub use ops::{
    fixed_angle_impersonate, fixed_angle_key_steal, ghz_after_rotation, ghz_detection_exact, ghz_inject,
    impersonate_with_share, impersonation_pass_probability, intercept_forward, intercept_forward_detection,
    intercept_return_detection, intercept_return_entangle, key_steal_state, quarter_pi_key_steal,
    random_impersonation_respond, response_density, response_pass_probability, steal_then_answer, theta_average,
    Impersonation, KeySteal, ReturnAttack,
};
pub use optimize::{optimize_blind_key_steal, optimize_key_steal, KeyStealOptimum, GRID};
pub use strategy::{flip_first, EveStrategy, JointUnitary, MatrixSpec, ResponseComponent, ResponseEnsemble, Tamper};
pub use run::{attack_round, run_transcript, AttackRun, SessionTranscript};
