//! Fourier-multiplier operators and dealiased products.

use num_complex::Complex64;

use super::{PhysicalField, SpectralField};
use crate::error::{GmhdError, Result};

/// Coordinate direction of a partial derivative.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X1,
    X2,
}

/// Velocity recovered from vorticity.
#[derive(Clone, Debug)]
pub struct BiotSavart {
    pub u1: SpectralField,
    pub u2: SpectralField,
    /// Set when the input carried a nonzero mean that was projected out.
    pub mean_removed: bool,
}

/// Magnetic field and current recovered from the potential.
#[derive(Clone, Debug)]
pub struct MagneticField {
    pub b1: SpectralField,
    pub b2: SpectralField,
    pub j: SpectralField,
}

/// Applies Λ^s = (-Δ)^{s/2}: coefficient k is multiplied by |k|^s.
///
/// The mean mode is annihilated for s > 0 and kept for s = 0.
pub fn fractional_power(f: &SpectralField, s: f64) -> Result<SpectralField> {
    if !s.is_finite() || s < 0.0 {
        return Err(GmhdError::param(format!(
            "fractional power exponent must be finite and >= 0, got {s}"
        )));
    }
    if s == 0.0 {
        return Ok(f.clone());
    }
    let half = 0.5 * s;
    Ok(multiply_by_ksq(f, |k2| if k2 == 0.0 { 0.0 } else { k2.powf(half) }))
}

fn multiply_by_ksq(f: &SpectralField, m: impl Fn(f64) -> f64) -> SpectralField {
    let ksq = f.grid().k_squared().clone();
    let mut out = f.clone();
    ndarray::Zip::from(out.coeffs_mut())
        .and(&ksq)
        .for_each(|c, &k2| *c *= m(k2));
    out
}

/// Spectral partial derivative. The unpaired Nyquist wavenumber -n/2 is
/// treated as zero so the output stays exactly Hermitian.
pub fn derivative(f: &SpectralField, axis: Axis) -> SpectralField {
    let grid = f.grid().clone();
    let nyq = -(grid.n() as i64) / 2;
    let mut out = f.clone();
    for ((i, j), c) in out.coeffs_mut().indexed_iter_mut() {
        let k = match axis {
            Axis::X1 => grid.wavenumber(i),
            Axis::X2 => grid.wavenumber(j),
        };
        let k = if k == nyq { 0.0 } else { k as f64 };
        // i·k·c
        *c = Complex64::new(-k * c.im, k * c.re);
    }
    out
}

/// Δf, multiplier -|k|².
pub fn laplacian(f: &SpectralField) -> SpectralField {
    multiply_by_ksq(f, |k2| -k2)
}

/// (-Δ)^{-1} f with the mean mode set to zero.
pub fn inverse_laplacian(f: &SpectralField) -> SpectralField {
    multiply_by_ksq(f, |k2| if k2 == 0.0 { 0.0 } else { 1.0 / k2 })
}

/// ∇⊥ψ = (-∂₂ψ, ∂₁ψ).
pub fn perp_gradient(psi: &SpectralField) -> (SpectralField, SpectralField) {
    (-&derivative(psi, Axis::X2), derivative(psi, Axis::X1))
}

/// ∇⊥·v = -∂₂v₁ + ∂₁v₂.
pub fn perp_divergence(v1: &SpectralField, v2: &SpectralField) -> SpectralField {
    &derivative(v2, Axis::X1) - &derivative(v1, Axis::X2)
}

/// ∇·v = ∂₁v₁ + ∂₂v₂.
pub fn divergence(v1: &SpectralField, v2: &SpectralField) -> SpectralField {
    &derivative(v1, Axis::X1) + &derivative(v2, Axis::X2)
}

/// Divergence-free velocity with ∇⊥·u = ω, via the stream function
/// ψ = Δ^{-1}ω and u = ∇⊥ψ.
pub fn biot_savart(omega: &SpectralField) -> BiotSavart {
    let mean_removed = omega.coeffs()[[0, 0]] != Complex64::new(0.0, 0.0);
    let psi = -&inverse_laplacian(omega);
    let (u1, u2) = perp_gradient(&psi);
    BiotSavart {
        u1,
        u2,
        mean_removed,
    }
}

/// b = ∇⊥a and j = ∇⊥·b = Δa.
pub fn field_from_potential(a: &SpectralField) -> MagneticField {
    let (b1, b2) = perp_gradient(a);
    MagneticField {
        b1,
        b2,
        j: laplacian(a),
    }
}

/// Product of two fields under the 2/3 rule: both factors are truncated to
/// the retained band, multiplied on the collocation grid, and the result is
/// truncated again. For band-limited inputs this equals the exact product
/// restricted to the retained band.
pub fn dealiased_product(f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    f.grid().check_same(g.grid())?;
    let (pf, pg) = SpectralField::to_physical_pair(&f.clone().dealiased(), &g.clone().dealiased());
    Ok(pf.pointwise_mul(&pg).to_spectral().dealiased())
}

/// As [`dealiased_product`] for samples on the collocation grid.
pub fn dealiased_product_physical(f: &PhysicalField, g: &PhysicalField) -> Result<SpectralField> {
    f.grid().check_same(g.grid())?;
    let (sf, sg) = PhysicalField::to_spectral_pair(f, g);
    dealiased_product(&sf, &sg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::Grid;

    fn grid(n: usize) -> Grid {
        Grid::new(n).unwrap()
    }

    fn phys(g: &Grid, f: impl Fn(f64, f64) -> f64) -> SpectralField {
        PhysicalField::from_fn(g, f).to_spectral()
    }

    fn max_diff(a: &SpectralField, b: &SpectralField) -> f64 {
        (a - b).max_abs_coeff()
    }

    #[test]
    fn lambda_on_cosine() {
        let g = grid(32);
        let f = phys(&g, |x, _| (3.0 * x).cos());
        let out = fractional_power(&f, 1.0).unwrap();
        assert!(max_diff(&out, &phys(&g, |x, _| 3.0 * (3.0 * x).cos())) < 1e-14);
    }

    #[test]
    fn lambda_kills_constants_but_s_zero_keeps_them() {
        let g = grid(16);
        let c = phys(&g, |_, _| 2.5);
        assert_eq!(fractional_power(&c, 0.7).unwrap().max_abs_coeff(), 0.0);
        assert_eq!(fractional_power(&c, 0.0).unwrap().mean(), 2.5);
    }

    #[test]
    fn lambda_rejects_bad_exponents() {
        let g = grid(8);
        let f = SpectralField::zeros(&g);
        assert!(fractional_power(&f, -0.1).is_err());
        assert!(fractional_power(&f, f64::NAN).is_err());
        assert!(fractional_power(&f, f64::INFINITY).is_err());
    }

    #[test]
    fn derivative_of_sine_and_constant() {
        let g = grid(16);
        let d = derivative(&phys(&g, |x, _| x.sin()), Axis::X1);
        assert!(max_diff(&d, &phys(&g, |x, _| x.cos())) < 1e-15);
        let c = phys(&g, |_, _| 1.0);
        assert_eq!(derivative(&c, Axis::X1).max_abs_coeff(), 0.0);
        assert_eq!(derivative(&c, Axis::X2).max_abs_coeff(), 0.0);
    }

    #[test]
    fn inverse_laplacian_eigenmode_and_gauge() {
        let g = grid(16);
        let f = phys(&g, |_, y| (2.0 * y).sin());
        let out = inverse_laplacian(&f);
        assert!(max_diff(&out, &phys(&g, |_, y| 0.25 * (2.0 * y).sin())) < 1e-15);
        assert_eq!(inverse_laplacian(&phys(&g, |_, _| 4.0)).max_abs_coeff(), 0.0);
    }

    #[test]
    fn biot_savart_eigenmode() {
        let g = grid(16);
        let mut omega = phys(&g, |x, y| -2.0 * x.sin() * y.sin());
        omega.remove_mean();
        let bs = biot_savart(&omega);
        assert!(!bs.mean_removed);
        assert!(max_diff(&bs.u1, &phys(&g, |x, y| -x.sin() * y.cos())) < 1e-15);
        assert!(max_diff(&bs.u2, &phys(&g, |x, y| x.cos() * y.sin())) < 1e-15);
        let zero = biot_savart(&SpectralField::zeros(&g));
        assert_eq!(zero.u1.max_abs_coeff() + zero.u2.max_abs_coeff(), 0.0);
    }

    #[test]
    fn biot_savart_flags_mean() {
        let g = grid(8);
        let bs = biot_savart(&phys(&g, |x, _| 1.0 + x.cos()));
        assert!(bs.mean_removed);
        let back = perp_divergence(&bs.u1, &bs.u2);
        assert!((back.mean()).abs() == 0.0);
    }

    #[test]
    fn field_from_potential_eigenmode() {
        let g = grid(16);
        let a = phys(&g, |x, y| x.sin() * y.sin());
        let m = field_from_potential(&a);
        assert!(max_diff(&m.b1, &phys(&g, |x, y| -x.sin() * y.cos())) < 1e-15);
        assert!(max_diff(&m.b2, &phys(&g, |x, y| x.cos() * y.sin())) < 1e-15);
        assert!(max_diff(&m.j, &phys(&g, |x, y| -2.0 * x.sin() * y.sin())) < 1e-14);
        let c = field_from_potential(&phys(&g, |_, _| 3.0));
        assert_eq!(c.b1.max_abs_coeff() + c.b2.max_abs_coeff() + c.j.max_abs_coeff(), 0.0);
    }

    #[test]
    fn products_of_simple_modes() {
        let g = grid(32);
        let s = phys(&g, |x, _| x.sin());
        let p = dealiased_product(&s, &s).unwrap();
        assert!(max_diff(&p, &phys(&g, |x, _| 0.5 * (1.0 - (2.0 * x).cos()))) < 1e-15);
        let one = phys(&g, |_, _| 1.0);
        let h = phys(&g, |x, y| (4.0 * x - y).cos());
        assert!(max_diff(&dealiased_product(&one, &h).unwrap(), &h) < 1e-15);
    }

    #[test]
    fn products_reject_mixed_grids() {
        let a = SpectralField::zeros(&grid(8));
        let b = SpectralField::zeros(&grid(16));
        assert!(matches!(
            dealiased_product(&a, &b),
            Err(GmhdError::GridMismatch { .. })
        ));
    }

    #[test]
    fn dealias_zeroes_outer_band() {
        let g = grid(16);
        // n = 16 keeps max(|k₁|, |k₂|) ≤ 5.
        let mut f = phys(&g, |x, y| (7.0 * x).cos() + (6.0 * y).sin() + x.cos());
        f.dealias();
        assert!(f.coeff(7, 0).norm() == 0.0 && f.coeff(0, 6).norm() == 0.0);
        assert!((f.coeff(1, 0).re - 0.5).abs() < 1e-15);
    }
}
