use ndarray::Zip;

use super::direction::{default_eps, direction_field_norms};
use super::norms::{lp_of_values, sobolev_sum};
use crate::dynamics::{GmhdState, Params};
use crate::error::{GmhdError, Result};
use crate::spectral::{biot_savart, derivative, field_from_potential, Axis, SpectralField};

/// Which extra quantities to record.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticsConfig {
    /// Exponents p for the ‖ω‖_{Lᵖ} and ‖∇j‖_{Lᵖ} columns.
    pub p_list: Vec<f64>,
    /// Direction-field regularization; `None` selects 1e-6‖b‖_∞.
    pub eps_bhat: Option<f64>,
}

impl Default for DiagnosticsConfig {
    fn default() -> Self {
        DiagnosticsConfig {
            p_list: vec![4.0, 6.0],
            eps_bhat: None,
        }
    }
}

impl DiagnosticsConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.p_list.iter().find(|p| p.is_nan() || **p < 1.0) {
            return Err(GmhdError::param(format!("p_list entries must be >= 1, got {p}")));
        }
        if let Some(e) = self.eps_bhat {
            if !(e > 0.0 && e.is_finite()) {
                return Err(GmhdError::param(format!("eps_bhat must be positive, got {e}")));
            }
        }
        Ok(())
    }
}

/// One time sample of the monitored quantities. Accumulated integrals run
/// from the first sample of the series.
#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosticsRecord {
    pub t: f64,
    /// ½∫(|u|² + |b|²)
    pub energy: f64,
    /// ‖Λ^α u‖²
    pub diss_u: f64,
    /// ‖Λ^β b‖²
    pub diss_b: f64,
    pub omega_l2: f64,
    pub j_l2: f64,
    /// (p, ‖ω‖_{Lᵖ}) for each configured p.
    pub omega_lp: Vec<(f64, f64)>,
    pub omega_linf: f64,
    pub j_linf: f64,
    /// Grid maximum of the Frobenius norm of ∇u.
    pub grad_u_linf: f64,
    /// (p, ‖∇j‖_{Lᵖ}) for each configured p.
    pub grad_j_lp: Vec<(f64, f64)>,
    /// ‖ω‖² + ‖j‖²
    pub h1: f64,
    /// ‖ω‖²_{H¹} + ‖j‖²_{H¹}
    pub h2: f64,
    pub omega_h1: f64,
    pub j_h1: f64,
    /// Trapezoid integral of ‖ω‖_∞ + ‖j‖_∞.
    pub bkm_accum: f64,
    /// Trapezoid integral of ‖ω‖_{H¹} + ‖j‖_{H¹}.
    pub bkm_h1_accum: f64,
    pub bhat_w1inf: f64,
    pub bhat_w2inf: f64,
    pub min_abs_b: f64,
    /// Energy-balance residual of the interval ending at this sample,
    /// relative to the first sample's energy (0 for the first sample).
    pub energy_residual: f64,
    pub u_linf: f64,
    pub b_linf: f64,
    /// ‖Λ^α ω‖²
    pub diss_omega: f64,
    /// ‖Λ^β j‖²
    pub diss_j: f64,
    /// ‖Δω‖²
    pub lap_omega_sq: f64,
    /// ∫u·b
    pub cross_helicity: f64,
    /// ∫a²
    pub potential_sq: f64,
}

impl DiagnosticsRecord {
    /// ‖ω‖_{Lᵖ} for a configured p.
    pub fn omega_lp(&self, p: f64) -> Option<f64> {
        self.omega_lp.iter().find(|(q, _)| *q == p).map(|&(_, v)| v)
    }

    /// ‖∇j‖_{Lᵖ} for a configured p.
    pub fn grad_j_lp(&self, p: f64) -> Option<f64> {
        self.grad_j_lp.iter().find(|(q, _)| *q == p).map(|&(_, v)| v)
    }
}

fn sup2(x: &ndarray::Array2<f64>, y: &ndarray::Array2<f64>) -> f64 {
    Zip::from(x).and(y).fold(0.0f64, |m, &a, &b| m.max(a.hypot(b)))
}

/// Instantaneous quantities of `state`; accumulators are left at zero.
pub fn instant_record(state: &GmhdState, params: &Params, config: &DiagnosticsConfig) -> Result<DiagnosticsRecord> {
    config.validate()?;
    let w = &state.omega_hat;
    let a = &state.a_hat;
    let grid = w.grid();
    let cell = grid.cell_area();

    let vel = biot_savart(w);
    let mag = field_from_potential(a);
    let (u1, u2) = SpectralField::to_physical_pair(&vel.u1, &vel.u2);
    let (b1, b2) = SpectralField::to_physical_pair(&mag.b1, &mag.b2);
    let (wp, jp) = SpectralField::to_physical_pair(w, &mag.j);
    let (u1x, u1y) = SpectralField::to_physical_pair(&derivative(&vel.u1, Axis::X1), &derivative(&vel.u1, Axis::X2));
    let (u2x, u2y) = SpectralField::to_physical_pair(&derivative(&vel.u2, Axis::X1), &derivative(&vel.u2, Axis::X2));
    let (jx, jy) = SpectralField::to_physical_pair(&derivative(&mag.j, Axis::X1), &derivative(&mag.j, Axis::X2));

    let grad_u_linf = Zip::from(u1x.values())
        .and(u1y.values())
        .and(u2x.values())
        .and(u2y.values())
        .fold(0.0f64, |m, &a, &b, &c, &d| m.max((a * a + b * b + c * c + d * d).sqrt()));
    let grad_j = Zip::from(jx.values()).and(jy.values()).map_collect(|&a, &b| a.hypot(b));

    let omega_lp = config
        .p_list
        .iter()
        .map(|&p| (p, lp_of_values(wp.values().iter().copied(), cell, p)))
        .collect();
    let grad_j_lp = config
        .p_list
        .iter()
        .map(|&p| (p, lp_of_values(grad_j.iter().copied(), cell, p)))
        .collect();

    // Spectral sums: |û|² = |ω̂|²/|k|², |b̂|² = |k|²|â|².
    let (alpha, beta) = (params.alpha, params.beta);
    let w_sq = sobolev_sum(w, 0.0);
    let j_sq = sobolev_sum(a, 2.0);
    let grad_w_sq = sobolev_sum(w, 1.0);
    let grad_j_sq = sobolev_sum(a, 3.0);
    let u_sq = sobolev_sum(w, -1.0);
    let b_sq = sobolev_sum(a, 1.0);
    let area = grid.area();
    let cross_helicity = -area
        * w.coeffs()
            .iter()
            .zip(a.coeffs().iter())
            .map(|(x, y)| (x * y.conj()).re)
            .sum::<f64>();

    let eps = config.eps_bhat.unwrap_or_else(|| default_eps(&b1, &b2));
    let dir = direction_field_norms(&b1, &b2, Some(eps))?;

    Ok(DiagnosticsRecord {
        t: state.t,
        energy: 0.5 * (u_sq + b_sq),
        diss_u: sobolev_sum(w, alpha - 1.0),
        diss_b: sobolev_sum(a, beta + 1.0),
        omega_l2: w_sq.sqrt(),
        j_l2: j_sq.sqrt(),
        omega_lp,
        omega_linf: lp_of_values(wp.values().iter().copied(), cell, f64::INFINITY),
        j_linf: lp_of_values(jp.values().iter().copied(), cell, f64::INFINITY),
        grad_u_linf,
        grad_j_lp,
        h1: w_sq + j_sq,
        h2: w_sq + grad_w_sq + j_sq + grad_j_sq,
        omega_h1: (w_sq + grad_w_sq).sqrt(),
        j_h1: (j_sq + grad_j_sq).sqrt(),
        bkm_accum: 0.0,
        bkm_h1_accum: 0.0,
        bhat_w1inf: dir.w1inf,
        bhat_w2inf: dir.w2inf,
        min_abs_b: dir.min_abs_b,
        energy_residual: 0.0,
        u_linf: sup2(u1.values(), u2.values()),
        b_linf: sup2(b1.values(), b2.values()),
        diss_omega: sobolev_sum(w, alpha),
        diss_j: sobolev_sum(a, beta + 2.0),
        lap_omega_sq: sobolev_sum(w, 2.0),
        cross_helicity,
        potential_sq: sobolev_sum(a, 0.0),
    })
}

/// Builds a record series, filling the running integrals from one sample
/// to the next.
#[derive(Clone, Debug)]
pub struct RecordBuilder {
    params: Params,
    config: DiagnosticsConfig,
    last: Option<DiagnosticsRecord>,
    e0: f64,
}

impl RecordBuilder {
    pub fn new(params: &Params, config: &DiagnosticsConfig) -> Self {
        RecordBuilder {
            params: params.clone(),
            config: config.clone(),
            last: None,
            e0: 0.0,
        }
    }

    pub fn sample(&mut self, state: &GmhdState) -> Result<DiagnosticsRecord> {
        let mut r = instant_record(state, &self.params, &self.config)?;
        match &self.last {
            None => self.e0 = r.energy,
            Some(prev) => {
                let h = r.t - prev.t;
                let trap = |f: fn(&DiagnosticsRecord) -> f64| 0.5 * h * (f(prev) + f(&r));
                let bkm = prev.bkm_accum + trap(|x| x.omega_linf + x.j_linf);
                let bkm_h1 = prev.bkm_h1_accum + trap(|x| x.omega_h1 + x.j_h1);
                let (nu, kappa) = (self.params.viscosity(), self.params.resistivity());
                let diss = nu * trap(|x| x.diss_u) + kappa * trap(|x| x.diss_b);
                r.energy_residual = (r.energy - prev.energy + diss).abs() / energy_scale(self.e0);
                r.bkm_accum = bkm;
                r.bkm_h1_accum = bkm_h1;
            }
        }
        self.last = Some(r.clone());
        Ok(r)
    }
}

pub(crate) fn energy_scale(e0: f64) -> f64 {
    if e0 > 0.0 {
        e0
    } else {
        1.0
    }
}
