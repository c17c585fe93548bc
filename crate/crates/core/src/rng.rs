//! Seed handling. Every random draw in the crate comes from a ChaCha8
//! stream selected by `(seed, stream id)`, so results never depend on
//! scheduling.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const THETAS: u64 = 0;
pub const CHALLENGES: u64 = 1;
pub const OUTCOMES: u64 = 2;
pub const EVE: u64 = 3;

pub fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// Child seed number `counter` of `master`.
pub fn split(master: u64, counter: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master ^ 0x9e37_79b9_7f4a_7c15);
    rng.set_stream(counter);
    rng.next_u64()
}
