//! Deterministic seeded randomness. Every sampling site derives its own
//! stream from (base seed, stream tags), so parallel sweeps stay reproducible
//! regardless of scheduling.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// splitmix64 finalizer; good enough to decorrelate derived streams.
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Derive a child seed from a base seed and a list of stream tags.
pub fn derive_seed(base: u64, tags: &[u64]) -> u64 {
    let mut s = mix(base);
    for &t in tags {
        s = mix(s ^ t.wrapping_mul(0x2545f4914f6cdd1d));
    }
    s
}

/// The generator used by every sampler in the crate.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(-1.0..1.0)
}

pub fn complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(uniform(rng), uniform(rng))
}
