//! Seed derivation for reproducible, independently-streamed randomness.
//!
//! Parallel experiments (grid cells, seed batches) each get their own
//! substream derived from `(seed, index)`, so results do not depend on how
//! work is scheduled across threads.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer; scrambles a 64-bit value into a well-mixed one.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Deterministic generator for substream `index` of the experiment `seed`.
pub fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let derived = splitmix64(seed ^ splitmix64(index));
    ChaCha8Rng::seed_from_u64(derived)
}
