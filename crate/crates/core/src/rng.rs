//! Random-stream helpers shared by the samplers.

use rand::distr::Open01;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The generator used wherever a seed is turned into a stream.
pub type StreamRng = ChaCha8Rng;

/// Uniform variate on the open interval (0, 1).
#[inline]
pub fn open_uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(Open01)
}

/// Standard exponential variate, `-ln U` with `U` on (0, 1).
#[inline]
pub fn std_exponential<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    -open_uniform(rng).ln()
}

/// Stream seeded from `seed`.
pub fn stream(seed: u64) -> StreamRng {
    StreamRng::seed_from_u64(seed)
}

/// Independent sub-stream `index` of `seed`; used to give each experiment
/// cell its own stream regardless of execution order.
pub fn substream(seed: u64, index: u64) -> StreamRng {
    let mut rng = StreamRng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}
