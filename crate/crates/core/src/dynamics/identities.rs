//! Residuals of exact identities satisfied by the (ω, a) formulation.

use super::rhs::FlowSamples;
use super::GmhdState;
use crate::spectral::{
    biot_savart, derivative, field_from_potential, laplacian, perp_divergence, Axis,
    PhysicalField, SpectralField,
};

/// States whose spectral tail ratio exceeds this are flagged as
/// under-resolved by the identity checks.
pub const RESOLUTION_THRESHOLD: f64 = 1e-8;

/// A normalized identity residual.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IdentityResidual {
    pub value: f64,
    /// Set when the state's spectral tail exceeds [`RESOLUTION_THRESHOLD`].
    pub under_resolved: bool,
}

/// T(∇u, ∇b) = 2∂₁b₁(∂₁u₂ + ∂₂u₁) + 2∂₂u₂(∂₁b₂ + ∂₂b₁), sampled on the
/// collocation grid.
pub fn t_term(
    u1: &SpectralField,
    u2: &SpectralField,
    b1: &SpectralField,
    b2: &SpectralField,
) -> PhysicalField {
    let d = |f: &SpectralField, ax| derivative(f, ax);
    let (b1x, u2x) = SpectralField::to_physical_pair(&d(b1, Axis::X1), &d(u2, Axis::X1));
    let (u1y, u2y) = SpectralField::to_physical_pair(&d(u1, Axis::X2), &d(u2, Axis::X2));
    let (b2x, b1y) = SpectralField::to_physical_pair(&d(b2, Axis::X1), &d(b1, Axis::X2));
    let mut out = b1x.values() * 2.0;
    ndarray::Zip::from(&mut out)
        .and(u2x.values())
        .and(u1y.values())
        .and(u2y.values())
        .and(b2x.values())
        .and(b1y.values())
        .for_each(|o, &u2x, &u1y, &u2y, &b2x, &b1y| {
            *o = *o * (u2x + u1y) + 2.0 * u2y * (b2x + b1y);
        });
    PhysicalField::from_values(u1.grid(), out).expect("grid-shaped")
}

fn project(values: ndarray::Array2<f64>, like: &SpectralField) -> SpectralField {
    PhysicalField::from_values(like.grid(), values)
        .expect("grid-shaped")
        .to_spectral()
        .dealiased()
}

fn dot(a1: &PhysicalField, a2: &PhysicalField, g1: &PhysicalField, g2: &PhysicalField) -> ndarray::Array2<f64> {
    let mut out = a1.values() * g1.values();
    ndarray::Zip::from(&mut out)
        .and(a2.values())
        .and(g2.values())
        .for_each(|o, &a, &g| *o += a * g);
    out
}

/// Checks the current equation obtained by applying Δ to the potential
/// equation:
///
/// ```text
/// Δ(u·∇a) = u·∇j − b·∇ω − T(∇u, ∇b)
/// ```
///
/// Every product is dealiased. Returns the L² norm of the difference
/// divided by max(1, ‖u·∇j‖).
pub fn current_identity_residual(state: &GmhdState) -> IdentityResidual {
    let f = FlowSamples::new(&state.omega_hat, &state.a_hat);
    let like = &state.omega_hat;
    // ∇a = (b₂, -b₁)
    let mut u_grad_a = f.u1.values() * f.b2.values();
    ndarray::Zip::from(&mut u_grad_a)
        .and(f.u2.values())
        .and(f.b1.values())
        .for_each(|o, &u2, &b1| *o -= u2 * b1);
    let lhs = laplacian(&project(u_grad_a, like));

    let u_grad_j = project(dot(&f.u1, &f.u2, &f.j_x, &f.j_y), like);
    let b_grad_w = project(dot(&f.b1, &f.b2, &f.omega_x, &f.omega_y), like);
    let vel = biot_savart(&state.omega_hat);
    let mag = field_from_potential(&state.a_hat);
    let t = t_term(&vel.u1, &vel.u2, &mag.b1, &mag.b2)
        .to_spectral()
        .dealiased();
    let rhs = &(&u_grad_j - &b_grad_w) - &t;
    IdentityResidual {
        value: (&lhs - &rhs).l2_norm() / u_grad_j.l2_norm().max(1.0),
        under_resolved: state.spectral_tail_ratio() > RESOLUTION_THRESHOLD,
    }
}

/// Compares the two forms of the vorticity forcing, ∇⊥·(b·∇b) and b·∇j,
/// each dealiased. Normalized by max(1, ‖b·∇j‖).
pub fn forcing_identity_residual(state: &GmhdState) -> IdentityResidual {
    let mag = field_from_potential(&state.a_hat);
    let like = &state.a_hat;
    let (b1, b2) = SpectralField::to_physical_pair(&mag.b1, &mag.b2);
    let grads = |c: &SpectralField| {
        SpectralField::to_physical_pair(&derivative(c, Axis::X1), &derivative(c, Axis::X2))
    };
    let (b1x, b1y) = grads(&mag.b1);
    let (b2x, b2y) = grads(&mag.b2);
    let (jx, jy) = grads(&mag.j);
    let v1 = project(dot(&b1, &b2, &b1x, &b1y), like);
    let v2 = project(dot(&b1, &b2, &b2x, &b2y), like);
    let raw = perp_divergence(&v1, &v2);
    let b_grad_j = project(dot(&b1, &b2, &jx, &jy), like);
    IdentityResidual {
        value: (&raw - &b_grad_j).l2_norm() / b_grad_j.l2_norm().max(1.0),
        under_resolved: state.spectral_tail_ratio() > RESOLUTION_THRESHOLD,
    }
}

/// Integrals that vanish because u and b are divergence-free, each
/// reported raw and relative to its Hölder bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CancellationIntegrals {
    /// ∫(u·∇ω)ω
    pub advect_omega: f64,
    /// ∫(u·∇j)j
    pub advect_j: f64,
    /// ∫(b·∇j)ω + ∫(b·∇ω)j
    pub stretch_pair: f64,
    /// The three integrals divided by ‖u‖_∞‖∇ω‖‖ω‖, ‖u‖_∞‖∇j‖‖j‖ and
    /// ‖b‖_∞(‖∇j‖‖ω‖ + ‖∇ω‖‖j‖); zero when the bound vanishes.
    pub relative: [f64; 3],
}

/// Evaluates the cancellation integrals by collocation quadrature, which
/// is exact for cubic products of fields inside the retained band.
pub fn cancellation_integrals(state: &GmhdState) -> CancellationIntegrals {
    let f = FlowSamples::new(&state.omega_hat, &state.a_hat);
    let mag = field_from_potential(&state.a_hat);
    let (w, j) = SpectralField::to_physical_pair(&state.omega_hat, &mag.j);
    let integral = |a: ndarray::Array2<f64>, c: &PhysicalField| {
        (a * c.values()).sum() * c.grid().cell_area()
    };
    let advect_omega = integral(dot(&f.u1, &f.u2, &f.omega_x, &f.omega_y), &w);
    let advect_j = integral(dot(&f.u1, &f.u2, &f.j_x, &f.j_y), &j);
    let stretch_pair = integral(dot(&f.b1, &f.b2, &f.j_x, &f.j_y), &w)
        + integral(dot(&f.b1, &f.b2, &f.omega_x, &f.omega_y), &j);

    let sup = |x: &PhysicalField, y: &PhysicalField| {
        ndarray::Zip::from(x.values())
            .and(y.values())
            .fold(0.0f64, |m, &a, &b| m.max(a.hypot(b)))
    };
    let (u_inf, b_inf) = (sup(&f.u1, &f.u2), sup(&f.b1, &f.b2));
    let grad_norm = |c: &SpectralField| {
        (derivative(c, Axis::X1).l2_norm_sq() + derivative(c, Axis::X2).l2_norm_sq()).sqrt()
    };
    let (w_l2, j_l2) = (state.omega_hat.l2_norm(), mag.j.l2_norm());
    let (gw, gj) = (grad_norm(&state.omega_hat), grad_norm(&mag.j));
    let rel = |v: f64, bound: f64| if bound > 0.0 { v.abs() / bound } else { 0.0 };
    CancellationIntegrals {
        advect_omega,
        advect_j,
        stretch_pair,
        relative: [
            rel(advect_omega, u_inf * gw * w_l2),
            rel(advect_j, u_inf * gj * j_l2),
            rel(stretch_pair, b_inf * (gj * w_l2 + gw * j_l2)),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{initial_condition, InitialKind};
    use crate::spectral::Grid;

    fn trig(g: &Grid, f: fn(f64, f64) -> f64) -> SpectralField {
        PhysicalField::from_fn(g, f).to_spectral()
    }

    #[test]
    fn t_term_vanishes_without_flow() {
        let g = Grid::new(32).unwrap();
        let z = SpectralField::zeros(&g);
        let b1 = trig(&g, |x, y| -x.sin() * y.cos());
        let b2 = trig(&g, |x, y| x.cos() * y.sin());
        // Paired transforms leak rounding between the packed fields.
        assert!(t_term(&z, &z, &b1, &b2).max_abs() < 1e-15);
    }

    #[test]
    fn t_term_symbolic_case() {
        let g = Grid::new(32).unwrap();
        let u1 = SpectralField::zeros(&g);
        let u2 = trig(&g, |x, _| x.sin());
        let b1 = trig(&g, |x, y| -x.sin() * y.cos());
        let b2 = trig(&g, |x, y| x.cos() * y.sin());
        let t = t_term(&u1, &u2, &b1, &b2);
        let expect = PhysicalField::from_fn(&g, |x, y| -2.0 * x.cos().powi(2) * y.cos());
        assert!((&t - &expect).max_abs() < 1e-13);
    }

    #[test]
    fn t_term_self_pairing_cancels() {
        let g = Grid::new(32).unwrap();
        let s = initial_condition(
            &InitialKind::RandomBandLimited {
                k_max: 5,
                amplitude: 1.0,
            },
            &g,
            3,
        )
        .unwrap();
        let u = biot_savart(&s.omega_hat);
        let t = t_term(&u.u1, &u.u2, &u.u1, &u.u2);
        assert!(t.max_abs() < 1e-12, "{}", t.max_abs());
    }

    #[test]
    fn residuals_vanish_for_degenerate_states() {
        let g = Grid::new(32).unwrap();
        let mut s = initial_condition(&InitialKind::OrszagTang, &g, 0).unwrap();
        let omega = s.omega_hat.clone();
        s.omega_hat = SpectralField::zeros(&g);
        assert!(current_identity_residual(&s).value < 1e-15);
        s.omega_hat = omega;
        s.a_hat = SpectralField::zeros(&g);
        assert!(current_identity_residual(&s).value < 1e-15);
        assert!(forcing_identity_residual(&s).value < 1e-15);
    }

    #[test]
    fn forcing_identity_single_mode() {
        let g = Grid::new(32).unwrap();
        let a = trig(&g, |x, y| x.sin() * y.sin());
        let s = GmhdState::new(SpectralField::zeros(&g), a, 0.0).unwrap();
        let r = forcing_identity_residual(&s);
        assert!(r.value < 1e-12 && !r.under_resolved);
    }

    #[test]
    fn random_states_satisfy_identities() {
        let g = Grid::new(64).unwrap();
        let kind = InitialKind::RandomBandLimited {
            k_max: 8,
            amplitude: 1.0,
        };
        for seed in 0..4 {
            let s = initial_condition(&kind, &g, seed).unwrap();
            assert!(current_identity_residual(&s).value < 1e-9);
            assert!(forcing_identity_residual(&s).value < 1e-9);
            let c = cancellation_integrals(&s);
            assert!(c.relative.iter().all(|&r| r < 1e-10), "{c:?}");
        }
    }

    #[test]
    fn broadband_state_is_flagged() {
        let g = Grid::new(32).unwrap();
        let kind = InitialKind::RandomBandLimited {
            k_max: 10,
            amplitude: 1.0,
        };
        let s = initial_condition(&kind, &g, 1).unwrap();
        assert!(current_identity_residual(&s).under_resolved);
    }
}
