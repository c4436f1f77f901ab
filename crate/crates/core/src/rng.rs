//! Deterministic per-work-unit random streams.
//!
//! Every path (or QMC replicate) gets its own ChaCha8 stream selected by the
//! pair `(seed, index)`; the ChaCha block counter makes the streams
//! non-overlapping, so results never depend on how work is scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type PathRng = ChaCha8Rng;

pub fn stream(seed: u64, index: u64) -> PathRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform on the open interval `(0, 1)`: `(k + 1/2)/2⁵³` for a random
/// 53-bit integer `k`.
pub fn open01<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let k = rng.next_u64() >> 11;
    (k as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
}
