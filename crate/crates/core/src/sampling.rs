//! Seeded pseudorandom rational samples.
//!
//! Sample `i` of a run with seed `s` is drawn from a ChaCha8 stream seeded
//! with `s` on stream `i`, so samples can be produced independently and in
//! any order. Each coordinate is `p / q` with `p` uniform in `[-9, 9]` and
//! `q` uniform in `[1, 9]`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::Scalar;

pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn sample_rational(rng: &mut impl Rng) -> Scalar {
    let p: i64 = rng.gen_range(-9..=9);
    let q: i64 = rng.gen_range(1..=9);
    Scalar::ratio(p, q).expect("nonzero denominator")
}

pub fn sample_vector(seed: u64, index: u64, len: usize) -> Vec<Scalar> {
    let mut rng = sample_rng(seed, index);
    (0..len).map(|_| sample_rational(&mut rng)).collect()
}
