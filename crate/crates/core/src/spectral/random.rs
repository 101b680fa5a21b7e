//! Seeded band-limited random fields.
//!
//! The generator is ChaCha8 seeded from a single `u64`. Wavevectors in the
//! upper half-plane (k₁ > 0, or k₁ = 0 and k₂ > 0) with 0 < |k| ≤ k_max are
//! visited in lexicographic (k₁, k₂) order; each receives a complex
//! coefficient whose real and imaginary parts are independent standard
//! normals, and its mirror -k receives the conjugate. The mean is zero.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{Grid, SpectralField};
use crate::error::{GmhdError, Result};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draws one Gaussian band-limited scalar field from `rng`.
pub fn band_limited(grid: &Grid, k_max: usize, rng: &mut ChaCha8Rng) -> Result<SpectralField> {
    let kmax = k_max as i64;
    if kmax > grid.dealias_cutoff() {
        return Err(GmhdError::param(format!(
            "k_max = {k_max} exceeds the retained band {} of n = {}",
            grid.dealias_cutoff(),
            grid.n()
        )));
    }
    let mut f = SpectralField::zeros(grid);
    for k1 in 0..=kmax {
        for k2 in -kmax..=kmax {
            if k1 == 0 && k2 <= 0 {
                continue;
            }
            if k1 * k1 + k2 * k2 > kmax * kmax {
                continue;
            }
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            f.set_coeff(k1, k2, Complex64::new(re, im));
        }
    }
    Ok(f)
}

/// Band-limited field from a fresh generator, scaled to unit L² norm over
/// the torus (zero if k_max = 0).
pub fn unit_band_limited(grid: &Grid, k_max: usize, seed: u64) -> Result<SpectralField> {
    let f = band_limited(grid, k_max, &mut seeded_rng(seed))?;
    let norm = f.l2_norm();
    Ok(if norm > 0.0 { &f * (1.0 / norm) } else { f })
}
