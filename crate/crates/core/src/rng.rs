//! Seeded randomness.
//!
//! Every stochastic operation takes its own generator built from a `u64`
//! seed. ChaCha8 is used because its output stream is fixed across platforms
//! and crate versions, which the CSV determinism guarantee depends on.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type SimRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Same key as [`seeded`] but an independent output stream, so two
/// consumers of one replicate seed never share draws.
pub fn seeded_stream(seed: u64, stream: u64) -> SimRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Draws a fresh seed for a child computation.
pub fn sub_seed<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    rng.gen()
}
