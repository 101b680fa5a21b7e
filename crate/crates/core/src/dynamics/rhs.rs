use ndarray::{Array2, Zip};

use super::{GmhdState, Params};
use crate::spectral::{
    biot_savart, derivative, field_from_potential, Axis, Grid, PhysicalField, SpectralField,
};

/// Time derivative of (ω̂, â).
#[derive(Clone, Debug)]
pub struct Tendency {
    pub d_omega: SpectralField,
    pub d_a: SpectralField,
}

/// Diagonal decay rates of the stiff linear part: the linear tendency of
/// mode k is `-rate(k) · coeff(k)`.
#[derive(Clone, Debug)]
pub struct LinearRates {
    pub omega: Array2<f64>,
    pub a: Array2<f64>,
}

impl LinearRates {
    /// ν|k|^{2α} for ω and κ|k|^{2β} for a.
    pub fn new(grid: &Grid, params: &Params) -> Self {
        let rate = |coef: f64, expo: f64| {
            grid.k_squared().mapv(|k2| {
                if coef == 0.0 || k2 == 0.0 {
                    0.0
                } else {
                    coef * k2.powf(expo)
                }
            })
        };
        LinearRates {
            omega: rate(params.viscosity(), params.alpha),
            a: rate(params.resistivity(), params.beta),
        }
    }

    /// The linear part of the tendency.
    pub fn tendency(&self, state: &GmhdState) -> Tendency {
        let apply = |f: &SpectralField, r: &Array2<f64>| {
            let mut out = f.clone();
            Zip::from(out.coeffs_mut()).and(r).for_each(|c, &r| *c *= -r);
            out
        };
        Tendency {
            d_omega: apply(&state.omega_hat, &self.omega),
            d_a: apply(&state.a_hat, &self.a),
        }
    }
}

/// Physical-space velocity, field and the gradients entering the
/// advection terms.
pub(crate) struct FlowSamples {
    pub u1: PhysicalField,
    pub u2: PhysicalField,
    pub omega_x: PhysicalField,
    pub omega_y: PhysicalField,
    pub b1: PhysicalField,
    pub b2: PhysicalField,
    pub j_x: PhysicalField,
    pub j_y: PhysicalField,
}

impl FlowSamples {
    pub fn new(omega_hat: &SpectralField, a_hat: &SpectralField) -> Self {
        let vel = biot_savart(omega_hat);
        let mag = field_from_potential(a_hat);
        let (u1, u2) = SpectralField::to_physical_pair(&vel.u1, &vel.u2);
        let (omega_x, omega_y) = SpectralField::to_physical_pair(
            &derivative(omega_hat, Axis::X1),
            &derivative(omega_hat, Axis::X2),
        );
        let (b1, b2) = SpectralField::to_physical_pair(&mag.b1, &mag.b2);
        let (j_x, j_y) = SpectralField::to_physical_pair(
            &derivative(&mag.j, Axis::X1),
            &derivative(&mag.j, Axis::X2),
        );
        FlowSamples {
            u1,
            u2,
            omega_x,
            omega_y,
            b1,
            b2,
            j_x,
            j_y,
        }
    }
}

/// Nonlinear tendency: d_ω = -u·∇ω + b·∇j and d_a = -u·∇a, evaluated by
/// 2/3-rule collocation.
pub fn nonlinear_rhs(state: &GmhdState) -> Tendency {
    nonlinear_terms(&state.omega_hat, &state.a_hat)
}

pub(crate) fn nonlinear_terms(omega_hat: &SpectralField, a_hat: &SpectralField) -> Tendency {
    let f = FlowSamples::new(omega_hat, a_hat);
    let n = omega_hat.grid().n();
    let sl = |p: &PhysicalField| p.values().as_slice().expect("standard layout").to_vec();
    let (u1, u2) = (sl(&f.u1), sl(&f.u2));
    let (wx, wy) = (sl(&f.omega_x), sl(&f.omega_y));
    let (b1, b2) = (sl(&f.b1), sl(&f.b2));
    let (jx, jy) = (sl(&f.j_x), sl(&f.j_y));
    let mut d_omega = vec![0.0; n * n];
    let mut d_a = vec![0.0; n * n];
    for m in 0..n * n {
        d_omega[m] = -(u1[m] * wx[m] + u2[m] * wy[m]) + (b1[m] * jx[m] + b2[m] * jy[m]);
        // ∇a = (b₂, -b₁)
        d_a[m] = -(u1[m] * b2[m] - u2[m] * b1[m]);
    }
    let d_omega = Array2::from_shape_vec((n, n), d_omega).expect("shape");
    let d_a = Array2::from_shape_vec((n, n), d_a).expect("shape");
    let grid = omega_hat.grid();
    let (d_omega, d_a) = PhysicalField::to_spectral_pair(
        &PhysicalField::from_values(grid, d_omega).expect("shape"),
        &PhysicalField::from_values(grid, d_a).expect("shape"),
    );
    Tendency {
        d_omega: d_omega.dealiased(),
        d_a: d_a.dealiased(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{initial_condition, InitialKind};
    use crate::spectral::{dealiased_product, laplacian};

    #[test]
    fn shear_flow_is_a_fixed_point_of_advection() {
        let g = Grid::new(32).unwrap();
        let s = initial_condition(&InitialKind::Shear, &g, 0).unwrap();
        let t = nonlinear_rhs(&s);
        assert!(t.d_omega.max_abs_coeff() < 1e-16);
        assert!(t.d_a.max_abs_coeff() == 0.0);
    }

    #[test]
    fn no_flow_leaves_only_lorentz_forcing() {
        let g = Grid::new(32).unwrap();
        let mut s = initial_condition(&InitialKind::OrszagTang, &g, 0).unwrap();
        s.omega_hat = SpectralField::zeros(&g);
        let t = nonlinear_rhs(&s);
        assert!(t.d_a.max_abs_coeff() < 1e-14);
        let m = field_from_potential(&s.a_hat);
        let expect = &dealiased_product(&m.b1, &derivative(&m.j, Axis::X1)).unwrap()
            + &dealiased_product(&m.b2, &derivative(&m.j, Axis::X2)).unwrap();
        assert!((&t.d_omega - &expect).max_abs_coeff() < 1e-15);
    }

    #[test]
    fn linear_rates_follow_fractional_powers() {
        let g = Grid::new(16).unwrap();
        let p = Params::new(2.0, 0.5, 0.75, 1.5).unwrap();
        let r = LinearRates::new(&g, &p);
        let (i, j) = (g.index_of(3), g.index_of(-4));
        assert!((r.omega[[i, j]] - 2.0 * 25f64.powf(0.75)).abs() < 1e-12);
        assert!((r.a[[i, j]] - 0.5 * 25f64.powf(1.5)).abs() < 1e-12);
        assert_eq!(r.omega[[0, 0]], 0.0);
        let s = initial_condition(&InitialKind::OrszagTang, &g, 0).unwrap();
        // α = 1: ν Λ² = -ν Δ.
        let p1 = Params::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let lin = LinearRates::new(&g, &p1).tendency(&s);
        assert!((&lin.d_omega - &laplacian(&s.omega_hat)).max_abs_coeff() < 1e-15);
    }
}
