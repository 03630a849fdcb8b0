//! Counter-based randomness.
//!
//! Every random decision in the crate is keyed by `(seed, counter)`: the
//! Bernoulli draw for line `id`, the labels of line `id`, the subset drawn in
//! trial `t`. Results therefore do not depend on iteration order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Key for item `counter` of the stream `seed`.
pub fn keyed(seed: u64, counter: u64) -> u64 {
    mix64(seed ^ mix64(counter.wrapping_mul(0xD1B5_4A32_D192_ED03)))
}

/// Uniform draw in `[0, 1)` for item `counter` of stream `seed`.
pub fn unit(seed: u64, counter: u64) -> f64 {
    (keyed(seed, counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Independent Bernoulli(p) draw for item `counter`. Draws for the same
/// `(seed, counter)` are coupled across `p`: raising `p` never flips a success
/// into a failure.
pub fn bernoulli(seed: u64, counter: u64, p: f64) -> bool {
    unit(seed, counter) < p
}

/// A full generator for item `counter`, for when one item needs many draws.
pub fn item_rng(seed: u64, counter: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(keyed(seed, counter))
}

/// Stage seed from a master seed and a stage tag (FNV-1a of the tag, then
/// mixed with the master seed).
pub fn derive_seed(master: u64, tag: &str) -> u64 {
    let mut h: u64 = 0xCBF2_9CE4_8422_2325;
    for b in tag.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01B3);
    }
    mix64(master ^ mix64(h))
}
