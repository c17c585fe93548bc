//! The authentication protocol as a state machine over a simulated channel.

mod challenge;
mod channel;
mod config;
mod joint;
mod key;
mod session;

pub use challenge::{make_challenge, Challenge};
pub use channel::{Adversary, EveState, Link};
pub use config::{
    identifier_for, other, verifier_for, verifier_indices, ChallengeEnsemble, ProtocolError, Result, SessionConfig,
    ThetaMode,
};
pub use joint::JointState;
pub use key::{setup_keys, AuthKey, PairHandle};
pub use session::{
    bilateral_rotate, identifier_encode, verifier_decode_and_test, AbortReason, ChallengeRecord, RoundMode,
    RoundResult, Session, Verdict, run_session,
};
