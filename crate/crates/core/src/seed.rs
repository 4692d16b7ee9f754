//! Seed derivation for reproducible, independent random streams.
//!
//! Every worker owns its stream. Trial `i` of an experiment with master seed
//! `m` uses `mix64(m, i)`; the mixing function is the SplitMix64 finalizer,
//! which is a bijection on `u64`, so distinct trial indices never collide
//! under a fixed master seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Random stream used throughout the crate.
pub type Rng = ChaCha8Rng;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output function.
#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives a child seed from a master seed and a stream index.
///
/// `mix64(m, i) = splitmix64(m ^ splitmix64(i + GOLDEN_GAMMA))`. For a fixed
/// `m` this is injective in `i`.
#[inline]
pub fn mix64(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index.wrapping_add(GOLDEN_GAMMA)))
}

pub fn rng_from_seed(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
