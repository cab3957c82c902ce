//! Reproducible random streams.
//!
//! Every realization draws from its own ChaCha8 stream keyed by
//! `(seed, index)`, so Monte Carlo results do not depend on how realizations
//! are distributed across worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Stream = ChaCha8Rng;

pub fn stream(seed: u64, index: u64) -> Stream {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
