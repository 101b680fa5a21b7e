use crate::diagnostics::lp_norm;
use crate::error::{GmhdError, Result};
use crate::spectral::{fractional_power, SpectralField};

use super::Corpus;

/// Threshold on the normalized integral below which positivity fails.
pub const POSITIVITY_TOL: f64 = 1e-10;

/// ∫(Λ^αω)|ω|^{p−2}ω by collocation quadrature, with its Hölder bound
/// ‖Λ^αω‖_{Lᵖ}‖ω‖_{Lᵖ}^{p−1} as the scale. The quadrature is exact when
/// p·k_max < n.
pub fn positivity_integral(omega: &SpectralField, alpha: f64, p: u32) -> Result<(f64, f64)> {
    check_args(alpha, p)?;
    let w = omega.to_physical();
    let lw = fractional_power(omega, alpha)?.to_physical();
    let e = p as i32 - 1;
    let integral = ndarray::Zip::from(lw.values())
        .and(w.values())
        .fold(0.0, |s, &l, &v| s + l * v.powi(e))
        * omega.grid().cell_area();
    let pf = f64::from(p);
    let scale = lp_norm(&lw, pf)? * lp_norm(&w, pf)?.powi(e);
    Ok((integral, scale))
}

fn check_args(alpha: f64, p: u32) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 2.0) {
        return Err(GmhdError::param(format!("alpha must lie in (0, 2], got {alpha}")));
    }
    if p < 2 || !p.is_multiple_of(2) {
        return Err(GmhdError::param(format!("p must be an even integer >= 2, got {p}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct PositivityReport {
    pub alpha: f64,
    pub p: u32,
    pub n: usize,
    pub corpus_size: usize,
    /// Smallest raw integral.
    pub min_integral: f64,
    /// Smallest integral divided by its scale (0 for a vanishing scale).
    pub min_normalized: f64,
    pub passed: bool,
}

pub fn check_positivity(alpha: f64, p: u32, corpus: &Corpus) -> Result<PositivityReport> {
    check_args(alpha, p)?;
    let vals = corpus.map(|_, f| positivity_integral(f, alpha, p))?;
    let min_integral = vals.iter().map(|v| v.0).fold(f64::INFINITY, f64::min);
    let min_normalized = vals
        .iter()
        .map(|&(i, s)| if s > 0.0 { i / s } else { 0.0 })
        .fold(f64::INFINITY, f64::min);
    Ok(PositivityReport {
        alpha,
        p,
        n: corpus.grid.n(),
        corpus_size: corpus.size,
        min_integral,
        min_normalized,
        passed: min_normalized >= -POSITIVITY_TOL,
    })
}
