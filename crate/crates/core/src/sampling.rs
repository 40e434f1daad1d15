//! Seeded random sampling used by the multistart solvers and test corpora.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::C64;

pub type SolverRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SolverRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Centered complex Gaussian with `E|z|² = sigma²`.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R, sigma: f64) -> C64 {
    let s = sigma / std::f64::consts::SQRT_2;
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    C64::new(s * re, s * im)
}

pub fn complex_gaussian_array<R: Rng + ?Sized, const N: usize>(rng: &mut R, sigma: f64) -> [C64; N] {
    std::array::from_fn(|_| complex_gaussian(rng, sigma))
}
