use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use ndarray::{Array2, Zip};
use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{GmhdError, Result};

/// Square collocation grid on the periodic box [0, 2π)².
///
/// Array index `m` along either axis maps to the signed wavenumber `m` for
/// `m < n/2` and `m - n` otherwise, so the wavenumbers run over
/// `-n/2 ..= n/2 - 1`. Row index is the x₁ direction, column index x₂.
///
/// Cloning is cheap; the FFT plans and wavenumber tables are shared.
#[derive(Clone)]
pub struct Grid {
    inner: Arc<GridInner>,
}

struct GridInner {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
    wavenumbers: Vec<i64>,
    k_sq: Array2<f64>,
    cutoff: i64,
}

impl Grid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 8 || !n.is_multiple_of(2) {
            return Err(GmhdError::param(format!(
                "grid size must be even and >= 8, got {n}"
            )));
        }
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        let wavenumbers: Vec<i64> = (0..n)
            .map(|m| if m < n / 2 { m as i64 } else { m as i64 - n as i64 })
            .collect();
        let k_sq = Array2::from_shape_fn((n, n), |(i, j)| {
            let (k1, k2) = (wavenumbers[i] as f64, wavenumbers[j] as f64);
            k1 * k1 + k2 * k2
        });
        // Largest K with 3K < n: products of two modes with |k_i| <= K alias
        // only onto modes outside the retained band.
        let cutoff = ((n - 1) / 3) as i64;
        Ok(Grid {
            inner: Arc::new(GridInner {
                n,
                forward,
                inverse,
                wavenumbers,
                k_sq,
                cutoff,
            }),
        })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.inner.n
    }

    /// Domain period, fixed at 2π.
    pub fn length(&self) -> f64 {
        2.0 * PI
    }

    pub fn dx(&self) -> f64 {
        self.length() / self.n() as f64
    }

    /// Area element of the collocation quadrature, (2π/n)².
    pub fn cell_area(&self) -> f64 {
        self.dx() * self.dx()
    }

    /// Total area (2π)².
    pub fn area(&self) -> f64 {
        self.length() * self.length()
    }

    pub fn coordinate(&self, index: usize) -> f64 {
        self.dx() * index as f64
    }

    #[inline]
    pub fn wavenumber(&self, index: usize) -> i64 {
        self.inner.wavenumbers[index]
    }

    pub fn wavenumbers(&self) -> &[i64] {
        &self.inner.wavenumbers
    }

    /// |k|² for every array position.
    pub fn k_squared(&self) -> &Array2<f64> {
        &self.inner.k_sq
    }

    /// Array index holding the wavenumber `k` (taken modulo n).
    pub fn index_of(&self, k: i64) -> usize {
        k.rem_euclid(self.n() as i64) as usize
    }

    /// Index of `-k` for the mode stored at `index`.
    #[inline]
    pub fn mirror(&self, index: usize) -> usize {
        (self.n() - index) % self.n()
    }

    /// Retained band of the 2/3 rule: modes with max(|k₁|,|k₂|) ≤ cutoff.
    pub fn dealias_cutoff(&self) -> i64 {
        self.inner.cutoff
    }

    #[inline]
    pub fn is_retained(&self, i: usize, j: usize) -> bool {
        let c = self.inner.cutoff;
        self.wavenumber(i).abs() <= c && self.wavenumber(j).abs() <= c
    }

    pub(crate) fn check_same(&self, other: &Grid) -> Result<()> {
        if self.n() != other.n() {
            return Err(GmhdError::GridMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(())
    }

    /// Unnormalized 2D forward transform in place.
    pub(crate) fn fft_forward(&self, data: &mut Array2<Complex64>) {
        self.fft2(data, &self.inner.forward);
    }

    /// Unnormalized 2D inverse transform in place.
    pub(crate) fn fft_inverse(&self, data: &mut Array2<Complex64>) {
        self.fft2(data, &self.inner.inverse);
    }

    fn fft2(&self, data: &mut Array2<Complex64>, plan: &Arc<dyn Fft<f64>>) {
        let n = self.n();
        debug_assert_eq!(data.dim(), (n, n));
        let mut scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
        {
            let rows = data
                .as_slice_mut()
                .expect("spectral arrays are kept in standard layout");
            plan.process_with_scratch(rows, &mut scratch);
        }
        let mut t = data.t().as_standard_layout().into_owned();
        plan.process_with_scratch(
            t.as_slice_mut().expect("standard layout"),
            &mut scratch,
        );
        Zip::from(data).and(t.t()).for_each(|d, &s| *d = s);
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n()
    }
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid").field("n", &self.n()).finish()
    }
}
