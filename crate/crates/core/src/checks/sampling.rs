//! Seeded random inputs for randomized checks.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::params::SystemParams;
use crate::radial::{PairProfile, RadialGrid, RadialProfile};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Positive sum of one to three Gaussians in `ln r`, centred in
/// `[-4, 4]` with widths in `[0.2, 1]`. All weighted integrals used by the
/// checks are finite and their tails negligible on the default grid.
pub fn random_bump(grid: &Arc<RadialGrid>, rng: &mut impl Rng) -> Result<RadialProfile> {
    let k = rng.random_range(1..=3);
    let bumps: Vec<(f64, f64, f64)> = (0..k)
        .map(|_| {
            (
                rng.random_range(0.2..2.0),
                rng.random_range(-4.0..4.0),
                rng.random_range(0.2..1.0),
            )
        })
        .collect();
    RadialProfile::from_fn(grid.clone(), |r| {
        let x = r.ln();
        bumps
            .iter()
            .map(|&(a, m, w)| a * (-(x - m).powi(2) / (2.0 * w * w)).exp())
            .sum()
    })
}

pub fn random_pair(grid: &Arc<RadialGrid>, rng: &mut impl Rng) -> Result<PairProfile> {
    PairProfile::new(random_bump(grid, rng)?, random_bump(grid, rng)?)
}

/// Valid equal-weight parameters with `N ∈ {3, 4, 5}`, `s ∈ (0.1, 1.9)`,
/// `α ∈ (1, p-1)`, `λ, μ ∈ (0.1, 10)` and `κ ∈ kappa_range`.
pub fn random_params(rng: &mut impl Rng, kappa_range: (f64, f64)) -> SystemParams {
    let n = rng.random_range(3..=5u32);
    let s = rng.random_range(0.1..1.9);
    let p = 2.0 * (n as f64 - s) / (n as f64 - 2.0);
    let alpha = rng.random_range(1.0 + 1e-3..p - 1.0 - 1e-3);
    let lambda = 10f64.powf(rng.random_range(-1.0..1.0));
    let mu = 10f64.powf(rng.random_range(-1.0..1.0));
    let kappa = if kappa_range.0 == kappa_range.1 {
        kappa_range.0
    } else {
        rng.random_range(kappa_range.0..kappa_range.1)
    };
    SystemParams::equal_weights(n, s, alpha, lambda, mu, kappa)
}
