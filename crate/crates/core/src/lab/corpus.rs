use rayon::prelude::*;

use crate::error::Result;
use crate::spectral::random::unit_band_limited;
use crate::spectral::{Grid, SpectralField};

pub const DEFAULT_CORPUS_SIZE: usize = 200;

/// Seeded family of zero-mean, unit-L² Gaussian fields with |k| ≤ k_max.
/// Field `i` uses seed `first_seed + i`.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub grid: Grid,
    pub k_max: usize,
    pub first_seed: u64,
    pub size: usize,
}

impl Corpus {
    pub fn new(n: usize, k_max: usize, size: usize) -> Result<Self> {
        Ok(Corpus {
            grid: Grid::new(n)?,
            k_max,
            first_seed: 1,
            size,
        })
    }

    /// k_max = n/8, seeds 1..=200.
    pub fn default_for(n: usize) -> Result<Self> {
        Corpus::new(n, n / 8, DEFAULT_CORPUS_SIZE)
    }

    pub fn seeds(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.size as u64).map(move |i| self.first_seed + i)
    }

    pub fn field(&self, seed: u64) -> Result<SpectralField> {
        unit_band_limited(&self.grid, self.k_max, seed)
    }

    /// Applies `f` to every member in parallel; results keep seed order.
    pub fn map<T: Send>(&self, f: impl Fn(u64, &SpectralField) -> Result<T> + Sync) -> Result<Vec<T>> {
        let seeds: Vec<u64> = self.seeds().collect();
        seeds
            .par_iter()
            .map(|&s| f(s, &self.field(s)?))
            .collect()
    }
}
