//! Seeded random streams.
//!
//! All simulation randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`),
//! keyed with `SeedableRng::seed_from_u64(seed)`. Independent parts of one
//! simulation draw from distinct ChaCha stream ids so that, for example, the
//! jump ledger of a path does not depend on the Brownian grid step.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

/// Stream carrying jump times and jump marks.
pub const STREAM_JUMPS: u64 = 0;
/// Stream carrying Gaussian increments.
pub const STREAM_DIFFUSION: u64 = 1;
/// Stream used by discrete-time step sampling and Haar draws.
pub const STREAM_STEPS: u64 = 2;

pub fn stream_rng(seed: u64, stream: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Seed of replica `index` in a sweep based at `seed`.
pub fn replica_seed(seed: u64, index: u64) -> u64 {
    seed.wrapping_add(index)
}
