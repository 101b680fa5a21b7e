use num_complex::Complex64;

use crate::error::{GmhdError, Result};
use crate::spectral::random::{band_limited, seeded_rng};
use crate::spectral::{Grid, SpectralField};

/// Vorticity ω̂ and magnetic potential â at time `t`.
///
/// Both fields are kept zero-mean, exactly Hermitian and inside the 2/3
/// band; [`GmhdState::new`] enforces this.
#[derive(Clone, Debug)]
pub struct GmhdState {
    pub omega_hat: SpectralField,
    pub a_hat: SpectralField,
    pub t: f64,
}

impl GmhdState {
    pub fn new(mut omega_hat: SpectralField, mut a_hat: SpectralField, t: f64) -> Result<Self> {
        omega_hat.grid().check_same(a_hat.grid())?;
        for f in [&mut omega_hat, &mut a_hat] {
            f.dealias();
            f.symmetrize();
            f.remove_mean();
        }
        Ok(GmhdState { omega_hat, a_hat, t })
    }

    pub fn zero(grid: &Grid) -> Self {
        GmhdState {
            omega_hat: SpectralField::zeros(grid),
            a_hat: SpectralField::zeros(grid),
            t: 0.0,
        }
    }

    pub fn grid(&self) -> &Grid {
        self.omega_hat.grid()
    }

    pub fn is_finite(&self) -> bool {
        self.omega_hat.is_finite() && self.a_hat.is_finite() && self.t.is_finite()
    }

    /// Largest coefficient outside the inner half of the retained band,
    /// relative to the largest coefficient overall (0 for the zero state).
    pub fn spectral_tail_ratio(&self) -> f64 {
        let band = self.grid().dealias_cutoff() / 2;
        let peak = self.omega_hat.max_abs_coeff().max(self.a_hat.max_abs_coeff());
        if peak == 0.0 {
            return 0.0;
        }
        self.omega_hat.tail_max(band).max(self.a_hat.tail_max(band)) / peak
    }
}

/// Initial data families.
#[derive(Clone, Debug, PartialEq)]
pub enum InitialKind {
    /// u₀ = (-sin y, sin x), b₀ = (-sin y, sin 2x).
    OrszagTang,
    /// Independent Gaussian ω and a with |k| ≤ k_max, scaled so that the
    /// RMS of u and of b both equal `amplitude`.
    RandomBandLimited { k_max: usize, amplitude: f64 },
    /// u = (-sin y, 0), b = 0.
    Shear,
    /// ω = cos(k₁x + k₂y), b = 0.
    SingleMode { k1: i64, k2: i64 },
}

/// Builds the initial state at t = 0. `seed` only affects random kinds.
pub fn initial_condition(kind: &InitialKind, grid: &Grid, seed: u64) -> Result<GmhdState> {
    let zero = SpectralField::zeros(grid);
    match *kind {
        InitialKind::OrszagTang => {
            // ω = Δψ with ψ = -(cos x + cos y); a = -cos y - cos(2x)/2.
            let mut omega = zero.clone();
            for (k1, k2) in [(1, 0), (0, 1)] {
                omega.set_coeff(k1, k2, Complex64::new(0.5, 0.0));
            }
            let mut a = zero;
            a.set_coeff(0, 1, Complex64::new(-0.5, 0.0));
            a.set_coeff(2, 0, Complex64::new(-0.25, 0.0));
            GmhdState::new(omega, a, 0.0)
        }
        InitialKind::Shear => {
            let mut omega = zero.clone();
            omega.set_coeff(0, 1, Complex64::new(0.5, 0.0));
            GmhdState::new(omega, zero, 0.0)
        }
        InitialKind::SingleMode { k1, k2 } => {
            let c = grid.dealias_cutoff();
            if (k1, k2) == (0, 0) || k1.abs() > c || k2.abs() > c {
                return Err(GmhdError::param(format!(
                    "single mode ({k1}, {k2}) must be nonzero and inside the retained band"
                )));
            }
            let mut omega = zero.clone();
            omega.set_coeff(k1, k2, Complex64::new(0.5, 0.0));
            GmhdState::new(omega, zero, 0.0)
        }
        InitialKind::RandomBandLimited { k_max, amplitude } => {
            if !amplitude.is_finite() || amplitude < 0.0 {
                return Err(GmhdError::param(format!("amplitude must be >= 0, got {amplitude}")));
            }
            let mut rng = seeded_rng(seed);
            let omega = band_limited(grid, k_max, &mut rng)?;
            let a = band_limited(grid, k_max, &mut rng)?;
            let target = amplitude * grid.length();
            let omega = scale_to(&omega, velocity_norm(&omega), target);
            let a = scale_to(&a, potential_field_norm(&a), target);
            GmhdState::new(omega, a, 0.0)
        }
    }
}

fn scale_to(f: &SpectralField, norm: f64, target: f64) -> SpectralField {
    if norm == 0.0 || target == 0.0 {
        SpectralField::zeros(f.grid())
    } else {
        f * (target / norm)
    }
}

/// ‖u‖_{L²} for u = ∇⊥Δ^{-1}ω.
fn velocity_norm(omega: &SpectralField) -> f64 {
    let ksq = omega.grid().k_squared();
    let s: f64 = omega
        .coeffs()
        .iter()
        .zip(ksq.iter())
        .filter(|(_, &k2)| k2 > 0.0)
        .map(|(c, &k2)| c.norm_sqr() / k2)
        .sum();
    (omega.grid().area() * s).sqrt()
}

/// ‖b‖_{L²} for b = ∇⊥a.
fn potential_field_norm(a: &SpectralField) -> f64 {
    let ksq = a.grid().k_squared();
    let s: f64 = a
        .coeffs()
        .iter()
        .zip(ksq.iter())
        .map(|(c, &k2)| c.norm_sqr() * k2)
        .sum();
    (a.grid().area() * s).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{biot_savart, divergence, field_from_potential, PhysicalField};
    use std::f64::consts::PI;

    #[test]
    fn orszag_tang_fields() {
        let g = Grid::new(32).unwrap();
        let s = initial_condition(&InitialKind::OrszagTang, &g, 0).unwrap();
        let u = biot_savart(&s.omega_hat);
        let m = field_from_potential(&s.a_hat);
        let expect = |f: &SpectralField, e: fn(f64, f64) -> f64| {
            let d = &f.to_physical() - &PhysicalField::from_fn(&g, e);
            assert!(d.max_abs() < 1e-14, "{}", d.max_abs());
        };
        expect(&u.u1, |_, y| -y.sin());
        expect(&u.u2, |x, _| x.sin());
        expect(&m.b1, |_, y| -y.sin());
        expect(&m.b2, |x, _| (2.0 * x).sin());
        assert_eq!(divergence(&u.u1, &u.u2).max_abs_coeff(), 0.0);
        assert_eq!(divergence(&m.b1, &m.b2).max_abs_coeff(), 0.0);
        let u_sq = u.u1.l2_norm_sq() + u.u2.l2_norm_sq();
        assert!((u_sq - 4.0 * PI * PI).abs() < 1e-12);
    }

    #[test]
    fn random_state_is_reproducible_and_scaled() {
        let g = Grid::new(32).unwrap();
        let kind = InitialKind::RandomBandLimited {
            k_max: 6,
            amplitude: 0.5,
        };
        let s1 = initial_condition(&kind, &g, 42).unwrap();
        let s2 = initial_condition(&kind, &g, 42).unwrap();
        assert_eq!(s1.omega_hat.coeffs(), s2.omega_hat.coeffs());
        assert_eq!(s1.a_hat.coeffs(), s2.a_hat.coeffs());
        let u = biot_savart(&s1.omega_hat);
        let rms = ((u.u1.l2_norm_sq() + u.u2.l2_norm_sq()) / g.area()).sqrt();
        assert!((rms - 0.5).abs() < 1e-13);
    }

    #[test]
    fn zero_amplitude_gives_zero_state() {
        let g = Grid::new(32).unwrap();
        let kind = InitialKind::RandomBandLimited {
            k_max: 4,
            amplitude: 0.0,
        };
        let s = initial_condition(&kind, &g, 7).unwrap();
        assert_eq!(s.omega_hat.max_abs_coeff() + s.a_hat.max_abs_coeff(), 0.0);
    }

    #[test]
    fn k_max_beyond_band_is_rejected() {
        let g = Grid::new(32).unwrap();
        let kind = InitialKind::RandomBandLimited {
            k_max: 11,
            amplitude: 1.0,
        };
        assert!(initial_condition(&kind, &g, 1).is_err());
    }
}
