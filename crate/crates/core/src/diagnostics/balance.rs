//! Balance laws and a-priori bounds audited along a record series.

use super::record::{energy_scale, DiagnosticsRecord};
use crate::dynamics::Params;
use crate::error::{GmhdError, Result};

/// Relative tolerance on the spacing of sample times.
pub const CADENCE_TOL: f64 = 1e-8;

fn trapezoid(series: &[DiagnosticsRecord], k: usize, f: impl Fn(&DiagnosticsRecord) -> f64) -> f64 {
    0.5 * (series[k + 1].t - series[k].t) * (f(&series[k]) + f(&series[k + 1]))
}

/// Rejects series whose sample spacing varies by more than
/// [`CADENCE_TOL`] of the first interval. The last interval may be shorter
/// (the run ends at `t_end`).
fn check_cadence(series: &[DiagnosticsRecord]) -> Result<()> {
    let h = series[1].t - series[0].t;
    if !(h > 0.0) {
        return Err(GmhdError::param("sample times must increase"));
    }
    let last = series.len() - 2;
    for k in 0..=last {
        let hk = series[k + 1].t - series[k].t;
        let short_tail = k == last && hk > 0.0 && hk <= h * (1.0 + CADENCE_TOL);
        if (hk - h).abs() > CADENCE_TOL * h && !short_tail {
            return Err(GmhdError::param(format!(
                "non-uniform sampling: interval {k} has length {hk}, expected {h}"
            )));
        }
    }
    Ok(())
}

/// max over sample intervals of |E(t₂) − E(t₁) + ∫(ν diss_u + κ diss_b)| / E(t₀),
/// with the time integral by the trapezoid rule.
pub fn energy_balance_residual(series: &[DiagnosticsRecord], params: &Params) -> Result<f64> {
    if series.len() < 3 {
        return Err(GmhdError::param(format!(
            "energy balance needs at least 3 samples, got {}",
            series.len()
        )));
    }
    check_cadence(series)?;
    let (nu, kappa) = (params.viscosity(), params.resistivity());
    let scale = energy_scale(series[0].energy);
    Ok((0..series.len() - 1)
        .map(|k| {
            let d = trapezoid(series, k, |r| nu * r.diss_u + kappa * r.diss_b);
            (series[k + 1].energy - series[k].energy + d).abs() / scale
        })
        .fold(0.0, f64::max))
}

/// Running value of ‖ω‖² + ‖j‖² + 2∫(ν‖Λ^αω‖² + κ‖Λ^βj‖²).
#[derive(Clone, Debug, PartialEq)]
pub struct H1Ledger {
    /// (t, ledger value) per sample.
    pub running: Vec<(f64, f64)>,
    pub max: f64,
    /// Whether the parameters satisfy the bound's hypothesis β ≥ 1.
    pub hypothesis_holds: bool,
}

pub fn h1_ledger(series: &[DiagnosticsRecord], params: &Params) -> H1Ledger {
    let (nu, kappa) = (params.viscosity(), params.resistivity());
    let mut acc = 0.0;
    let mut running = Vec::with_capacity(series.len());
    for (k, r) in series.iter().enumerate() {
        if k > 0 {
            acc += 2.0 * trapezoid(series, k - 1, |x| nu * x.diss_omega + kappa * x.diss_j);
        }
        running.push((r.t, r.h1 + acc));
    }
    let max = running.iter().map(|&(_, v)| v).fold(0.0, f64::max);
    H1Ledger {
        running,
        max,
        hypothesis_holds: params.beta >= 1.0,
    }
}

/// One interval where ‖ω‖_{Lᵖ} grew faster than the bound allows.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LpViolation {
    pub t0: f64,
    pub t1: f64,
    /// ‖ω(t₁)‖_{Lᵖ} − ‖ω(t₀)‖_{Lᵖ}
    pub growth: f64,
    /// Trapezoid integral of ‖b‖_∞‖∇j‖_{Lᵖ}.
    pub bound: f64,
    pub tol: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpBoundReport {
    pub p: f64,
    pub intervals: usize,
    pub violations: Vec<LpViolation>,
    /// Smallest value of bound + tol − growth over the intervals.
    pub min_slack: f64,
}

impl LpBoundReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Audits ‖ω(t₂)‖_{Lᵖ} − ‖ω(t₁)‖_{Lᵖ} ≤ ∫‖b‖_∞‖∇j‖_{Lᵖ} + 1e-6(1 + ‖ω(t₁)‖_{Lᵖ})
/// on every sample interval. `p` must be one of the recorded exponents.
pub fn lp_vorticity_bound_check(series: &[DiagnosticsRecord], p: f64) -> Result<LpBoundReport> {
    if p.is_nan() || p < 2.0 {
        return Err(GmhdError::param(format!("Lp bound audit needs p >= 2, got {p}")));
    }
    let lookup = |r: &DiagnosticsRecord| -> Result<(f64, f64)> {
        match (r.omega_lp(p), r.grad_j_lp(p)) {
            (Some(w), Some(g)) => Ok((w, g)),
            _ => Err(GmhdError::param(format!("p = {p} was not recorded"))),
        }
    };
    let mut violations = Vec::new();
    let mut min_slack = f64::INFINITY;
    for k in 0..series.len().saturating_sub(1) {
        let (r0, r1) = (&series[k], &series[k + 1]);
        let (w0, g0) = lookup(r0)?;
        let (w1, g1) = lookup(r1)?;
        let growth = w1 - w0;
        let bound = 0.5 * (r1.t - r0.t) * (r0.b_linf * g0 + r1.b_linf * g1);
        let tol = 1e-6 * (1.0 + w0);
        let slack = bound + tol - growth;
        min_slack = min_slack.min(slack);
        if slack < 0.0 {
            violations.push(LpViolation {
                t0: r0.t,
                t1: r1.t,
                growth,
                bound,
                tol,
            });
        }
    }
    Ok(LpBoundReport {
        p,
        intervals: series.len().saturating_sub(1),
        violations,
        min_slack,
    })
}

/// Trapezoid integral of ‖ω‖_∞ + ‖j‖_∞ over the series. This bounds the
/// BMO integral up to the factor 2 in ‖f‖_BMO ≤ 2‖f‖_∞.
pub fn bkm_accumulator(series: &[DiagnosticsRecord]) -> f64 {
    (0..series.len().saturating_sub(1))
        .map(|k| trapezoid(series, k, |r| r.omega_linf + r.j_linf))
        .sum()
}

/// Trapezoid integral of ‖ω‖_{H¹} + ‖j‖_{H¹}, the proxy through the
/// embedding of H¹ into BMO.
pub fn bkm_h1_accumulator(series: &[DiagnosticsRecord]) -> f64 {
    (0..series.len().saturating_sub(1))
        .map(|k| trapezoid(series, k, |r| r.omega_h1 + r.j_h1))
        .sum()
}
