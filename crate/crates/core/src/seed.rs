//! Seed handling.
//!
//! Every random stream in the crate is a `ChaCha8Rng` (a counter-based
//! 64-bit-seeded generator) built with `seed_from_u64`. Uniform reals are
//! drawn with `Rng::gen::<f64>()` (53 random bits in `[0, 1)`), and a
//! Bernoulli(p) trial is the comparison `u < p`. Derived seeds mix a master
//! seed with a sequence of integer coordinates through SplitMix64, so a
//! trial's stream depends only on its coordinates and never on execution
//! order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type GcgtRng = ChaCha8Rng;

/// Identifier of the seed-derivation rule recorded in run manifests.
pub const DERIVATION_RULE: &str = "splitmix64-chain/v1";

pub fn rng(seed: u64) -> GcgtRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[inline]
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stable 64-bit hash of `(master, coords...)`.
pub fn derive(master: u64, coords: &[u64]) -> u64 {
    coords
        .iter()
        .fold(splitmix64(master), |acc, &c| splitmix64(acc ^ splitmix64(c)))
}

/// FNV-1a over bytes, used to turn experiment names into seed coordinates.
pub fn name_hash(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}
