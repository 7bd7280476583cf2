//! Seeded inputs shared by the benchmarks.

use mprod::{Complex64, Tensor3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Uniform entries in `[-1, 1)` drawn from a fixed seed.
pub fn random_tensor(seed: u64, m: usize, n: usize, p: usize) -> Tensor3 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Tensor3::from_fn(m, n, p, |_, _, _| Complex64::new(rng.gen_range(-1.0..1.0), 0.0))
}

/// `A * B` of an `m x r` and an `r x n` random tensor under the identity
/// transform, so every frontal slice has rank at most `r`.
pub fn low_rank_tensor(seed: u64, m: usize, n: usize, p: usize, r: usize) -> Tensor3 {
    let a = random_tensor(seed, m, r, p);
    let b = random_tensor(seed.wrapping_add(1), r, n, p);
    a.facewise_product(&b).expect("inner dimensions agree")
}
