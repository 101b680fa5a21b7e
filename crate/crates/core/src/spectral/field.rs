use std::ops::{Add, Mul, Neg, Sub};

use ndarray::{Array2, Zip};
use num_complex::Complex64;

use super::Grid;
use crate::error::Result;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Fourier coefficients of a real field, normalized so that
/// `f(x) = Σ_k coeffs(k) e^{i k·x}`.
#[derive(Clone, Debug)]
pub struct SpectralField {
    grid: Grid,
    coeffs: Array2<Complex64>,
}

/// Real samples on the collocation lattice x_ij = (2πi/n, 2πj/n).
#[derive(Clone, Debug)]
pub struct PhysicalField {
    grid: Grid,
    values: Array2<f64>,
}

impl SpectralField {
    pub fn zeros(grid: &Grid) -> Self {
        let n = grid.n();
        SpectralField {
            grid: grid.clone(),
            coeffs: Array2::from_elem((n, n), ZERO),
        }
    }

    /// Builds a field from coefficients, enforcing Hermitian symmetry.
    pub fn from_coeffs(grid: &Grid, coeffs: Array2<Complex64>) -> Self {
        assert_eq!(coeffs.dim(), (grid.n(), grid.n()), "coefficient shape");
        let mut f = SpectralField {
            grid: grid.clone(),
            coeffs: coeffs.as_standard_layout().into_owned(),
        };
        f.symmetrize();
        f
    }

    /// Builds a field by evaluating `g(k1, k2)` at every wavevector, then
    /// symmetrizing.
    pub fn from_wavevector_fn(grid: &Grid, mut g: impl FnMut(i64, i64) -> Complex64) -> Self {
        let n = grid.n();
        let coeffs = Array2::from_shape_fn((n, n), |(i, j)| {
            g(grid.wavenumber(i), grid.wavenumber(j))
        });
        Self::from_coeffs(grid, coeffs)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn coeffs(&self) -> &Array2<Complex64> {
        &self.coeffs
    }

    /// Coefficient at wavevector (k1, k2).
    pub fn coeff(&self, k1: i64, k2: i64) -> Complex64 {
        self.coeffs[[self.grid.index_of(k1), self.grid.index_of(k2)]]
    }

    pub fn set_coeff(&mut self, k1: i64, k2: i64, value: Complex64) {
        let (i, j) = (self.grid.index_of(k1), self.grid.index_of(k2));
        self.coeffs[[i, j]] = value;
        let (mi, mj) = (self.grid.mirror(i), self.grid.mirror(j));
        if (mi, mj) == (i, j) {
            self.coeffs[[i, j]].im = 0.0;
        } else {
            self.coeffs[[mi, mj]] = value.conj();
        }
    }

    pub fn mean(&self) -> f64 {
        self.coeffs[[0, 0]].re
    }

    pub fn remove_mean(&mut self) {
        self.coeffs[[0, 0]] = ZERO;
    }

    /// Replaces each conjugate pair by its Hermitian average, so that
    /// `coeffs(-k) == conj(coeffs(k))` holds bit for bit.
    pub fn symmetrize(&mut self) {
        let n = self.grid.n();
        for i in 0..n {
            let mi = self.grid.mirror(i);
            for j in 0..n {
                let mj = self.grid.mirror(j);
                let (a, b) = (i * n + j, mi * n + mj);
                if a > b {
                    continue;
                }
                if a == b {
                    self.coeffs[[i, j]].im = 0.0;
                    continue;
                }
                let avg = (self.coeffs[[i, j]] + self.coeffs[[mi, mj]].conj()) * 0.5;
                self.coeffs[[i, j]] = avg;
                self.coeffs[[mi, mj]] = avg.conj();
            }
        }
    }

    /// Whether `coeffs(-k) == conj(coeffs(k))` exactly.
    pub fn is_hermitian(&self) -> bool {
        let n = self.grid.n();
        (0..n).all(|i| {
            let mi = self.grid.mirror(i);
            (0..n).all(|j| {
                let mj = self.grid.mirror(j);
                self.coeffs[[mi, mj]] == self.coeffs[[i, j]].conj()
            })
        })
    }

    /// Zeroes every mode outside the 2/3-rule band.
    pub fn dealias(&mut self) {
        let grid = self.grid.clone();
        for ((i, j), c) in self.coeffs.indexed_iter_mut() {
            if !grid.is_retained(i, j) {
                *c = ZERO;
            }
        }
    }

    pub fn dealiased(mut self) -> Self {
        self.dealias();
        self
    }

    /// Multiplies every coefficient by a real multiplier m(k1, k2). The
    /// multiplier must be even in k for the result to stay real.
    pub fn map_real_multiplier(&self, m: impl Fn(i64, i64) -> f64) -> Self {
        let g = &self.grid;
        let mut out = self.clone();
        for ((i, j), c) in out.coeffs.indexed_iter_mut() {
            *c *= m(g.wavenumber(i), g.wavenumber(j));
        }
        out
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut Array2<Complex64> {
        &mut self.coeffs
    }

    pub(crate) fn from_raw(grid: &Grid, coeffs: Array2<Complex64>) -> Self {
        SpectralField {
            grid: grid.clone(),
            coeffs,
        }
    }

    /// ∫|f|² over the torus by Parseval.
    pub fn l2_norm_sq(&self) -> f64 {
        self.grid.area() * self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>()
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sq().sqrt()
    }

    /// ∫ f g over the torus by Parseval.
    pub fn inner(&self, other: &SpectralField) -> f64 {
        let s: f64 = Zip::from(&self.coeffs)
            .and(&other.coeffs)
            .fold(0.0, |acc, a, b| acc + (a * b.conj()).re);
        self.grid.area() * s
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// Largest coefficient magnitude among modes with max(|k₁|,|k₂|) > band.
    pub fn tail_max(&self, band: i64) -> f64 {
        let g = &self.grid;
        self.coeffs
            .indexed_iter()
            .filter(|((i, j), _)| g.wavenumber(*i).abs().max(g.wavenumber(*j).abs()) > band)
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max)
    }

    pub fn to_physical(&self) -> PhysicalField {
        let mut data = self.coeffs.clone();
        self.grid.fft_inverse(&mut data);
        PhysicalField {
            grid: self.grid.clone(),
            values: data.mapv(|c| c.re),
        }
    }

    /// Inverse-transforms two fields with a single complex FFT.
    pub fn to_physical_pair(a: &SpectralField, b: &SpectralField) -> (PhysicalField, PhysicalField) {
        let i = Complex64::new(0.0, 1.0);
        let mut data = Zip::from(&a.coeffs)
            .and(&b.coeffs)
            .map_collect(|&x, &y| x + i * y);
        a.grid.fft_inverse(&mut data);
        (
            PhysicalField {
                grid: a.grid.clone(),
                values: data.mapv(|c| c.re),
            },
            PhysicalField {
                grid: a.grid.clone(),
                values: data.mapv(|c| c.im),
            },
        )
    }

    fn zip_with(&self, other: &SpectralField, f: impl Fn(Complex64, Complex64) -> Complex64) -> SpectralField {
        assert_eq!(self.grid, other.grid, "grid mismatch in field arithmetic");
        SpectralField {
            grid: self.grid.clone(),
            coeffs: Zip::from(&self.coeffs)
                .and(&other.coeffs)
                .map_collect(|&a, &b| f(a, b)),
        }
    }
}

impl Add for &SpectralField {
    type Output = SpectralField;
    fn add(self, rhs: &SpectralField) -> SpectralField {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;
    fn sub(self, rhs: &SpectralField) -> SpectralField {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;
    fn mul(self, rhs: f64) -> SpectralField {
        SpectralField {
            grid: self.grid.clone(),
            coeffs: self.coeffs.mapv(|c| c * rhs),
        }
    }
}

impl Neg for &SpectralField {
    type Output = SpectralField;
    fn neg(self) -> SpectralField {
        self * -1.0
    }
}

impl PhysicalField {
    pub fn zeros(grid: &Grid) -> Self {
        PhysicalField {
            grid: grid.clone(),
            values: Array2::zeros((grid.n(), grid.n())),
        }
    }

    pub fn from_values(grid: &Grid, values: Array2<f64>) -> Result<Self> {
        if values.dim() != (grid.n(), grid.n()) {
            return Err(crate::error::GmhdError::param(format!(
                "value array {:?} does not match grid n = {}",
                values.dim(),
                grid.n()
            )));
        }
        Ok(PhysicalField {
            grid: grid.clone(),
            values: values.as_standard_layout().into_owned(),
        })
    }

    /// Samples `f(x1, x2)` on the collocation lattice.
    pub fn from_fn(grid: &Grid, f: impl Fn(f64, f64) -> f64) -> Self {
        let n = grid.n();
        PhysicalField {
            grid: grid.clone(),
            values: Array2::from_shape_fn((n, n), |(i, j)| {
                f(grid.coordinate(i), grid.coordinate(j))
            }),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn into_values(self) -> Array2<f64> {
        self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Forward transform; the result is exactly Hermitian.
    pub fn to_spectral(&self) -> SpectralField {
        let mut data = self.values.mapv(|v| Complex64::new(v, 0.0));
        self.grid.fft_forward(&mut data);
        let scale = 1.0 / (self.grid.n() * self.grid.n()) as f64;
        data.mapv_inplace(|c| c * scale);
        let mut f = SpectralField::from_raw(&self.grid, data);
        f.symmetrize();
        f
    }

    /// Forward-transforms two real fields with a single complex FFT.
    pub fn to_spectral_pair(a: &PhysicalField, b: &PhysicalField) -> (SpectralField, SpectralField) {
        let grid = &a.grid;
        let n = grid.n();
        let mut h = Zip::from(&a.values)
            .and(&b.values)
            .map_collect(|&x, &y| Complex64::new(x, y));
        grid.fft_forward(&mut h);
        let scale = 1.0 / (n * n) as f64;
        let mut fa = Array2::from_elem((n, n), ZERO);
        let mut fb = Array2::from_elem((n, n), ZERO);
        for i in 0..n {
            let mi = grid.mirror(i);
            for j in 0..n {
                let mj = grid.mirror(j);
                let hk = h[[i, j]] * scale;
                let hm = h[[mi, mj]].conj() * scale;
                fa[[i, j]] = (hk + hm) * 0.5;
                let d = (hk - hm) * 0.5;
                // d / i
                fb[[i, j]] = Complex64::new(d.im, -d.re);
            }
        }
        (SpectralField::from_raw(grid, fa), SpectralField::from_raw(grid, fb))
    }

    /// Pointwise product (no dealiasing).
    pub fn pointwise_mul(&self, other: &PhysicalField) -> PhysicalField {
        assert_eq!(self.grid, other.grid, "grid mismatch");
        PhysicalField {
            grid: self.grid.clone(),
            values: &self.values * &other.values,
        }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> PhysicalField {
        PhysicalField {
            grid: self.grid.clone(),
            values: self.values.mapv(f),
        }
    }

    /// Collocation quadrature of the field over the torus.
    pub fn integrate(&self) -> f64 {
        self.values.sum() * self.grid.cell_area()
    }
}

impl Add for &PhysicalField {
    type Output = PhysicalField;
    fn add(self, rhs: &PhysicalField) -> PhysicalField {
        PhysicalField {
            grid: self.grid.clone(),
            values: &self.values + &rhs.values,
        }
    }
}

impl Sub for &PhysicalField {
    type Output = PhysicalField;
    fn sub(self, rhs: &PhysicalField) -> PhysicalField {
        PhysicalField {
            grid: self.grid.clone(),
            values: &self.values - &rhs.values,
        }
    }
}

impl Mul<f64> for &PhysicalField {
    type Output = PhysicalField;
    fn mul(self, rhs: f64) -> PhysicalField {
        PhysicalField {
            grid: self.grid.clone(),
            values: &self.values * rhs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn grid(n: usize) -> Grid {
        Grid::new(n).unwrap()
    }

    #[test]
    fn cosine_has_two_half_coefficients() {
        let g = grid(16);
        let f = PhysicalField::from_fn(&g, |x, _| (3.0 * x).cos()).to_spectral();
        assert!((f.coeff(3, 0).re - 0.5).abs() < 1e-15);
        assert!((f.coeff(-3, 0).re - 0.5).abs() < 1e-15);
        assert!(f.coeff(2, 0).norm() < 1e-15);
        assert!(f.is_hermitian());
    }

    #[test]
    fn round_trip_is_tight() {
        let g = grid(32);
        let p = PhysicalField::from_fn(&g, |x, y| (x + 2.0 * y).sin() * (3.0 * x).cos() + 0.3 * y.cos());
        let back = p.to_spectral().to_physical();
        let err = (&back - &p).max_abs();
        assert!(err < 1e-12 * p.max_abs(), "err {err}");
    }

    #[test]
    fn pair_transforms_match_single_ones() {
        let g = grid(16);
        let a = PhysicalField::from_fn(&g, |x, y| (x - y).sin() + 0.2);
        let b = PhysicalField::from_fn(&g, |x, y| (2.0 * x).cos() * y.sin());
        let (sa, sb) = PhysicalField::to_spectral_pair(&a, &b);
        assert!(sa.is_hermitian() && sb.is_hermitian());
        let d = &sa - &a.to_spectral();
        assert!(d.max_abs_coeff() < 1e-15);
        let (pa, pb) = SpectralField::to_physical_pair(&sa, &sb);
        assert!((&pa - &a).max_abs() < 1e-14);
        assert!((&pb - &b).max_abs() < 1e-14);
    }

    #[test]
    fn parseval_matches_quadrature() {
        let g = grid(32);
        let p = PhysicalField::from_fn(&g, |x, y| x.sin() * (2.0 * y).cos() + 0.5);
        let quad = p.pointwise_mul(&p).integrate();
        let spec = p.to_spectral().l2_norm_sq();
        assert!((quad - spec).abs() < 1e-12 * quad);
        // sin²x cos²2y averages to 1/4, plus 0.25 from the constant.
        assert!((quad - 4.0 * PI * PI * 0.5).abs() < 1e-11);
    }

    #[test]
    fn set_coeff_keeps_symmetry() {
        let g = grid(8);
        let mut f = SpectralField::zeros(&g);
        f.set_coeff(1, -2, Complex64::new(0.3, 0.7));
        assert!(f.is_hermitian());
        assert_eq!(f.coeff(-1, 2), Complex64::new(0.3, -0.7));
    }
}
