//! Seeding rules shared by every sampler.
//!
//! A run is identified by a single 64-bit seed. Work is cut into fixed-size
//! shards and shard `k` draws from `ChaCha8Rng::seed_from_u64(mix(seed, k))`,
//! so results do not depend on how many worker threads execute the shards.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Number of trials per shard.
pub const SHARD_SIZE: u64 = 1 << 14;

/// SplitMix64 finaliser applied to `seed + (k + 1) * golden gamma`.
pub fn mix(seed: u64, k: u64) -> u64 {
    let mut z = seed.wrapping_add(k.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn rng_for(seed: u64) -> Rng {
    Rng::seed_from_u64(seed)
}

pub fn shard_rng(seed: u64, shard: u64) -> Rng {
    Rng::seed_from_u64(mix(seed, shard))
}

/// Splits `total` trials into `(shard index, trials in shard)` pairs.
pub fn shards(total: u64) -> impl Iterator<Item = (u64, u64)> {
    let count = total.div_ceil(SHARD_SIZE);
    (0..count).map(move |k| {
        let start = k * SHARD_SIZE;
        (k, SHARD_SIZE.min(total - start))
    })
}
