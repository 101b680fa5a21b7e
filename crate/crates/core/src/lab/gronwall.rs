use crate::error::{GmhdError, Result};

/// Tolerance for the discrete hypothesis and the conclusion.
pub const GRONWALL_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct GronwallReport {
    /// Per interval: Δη/h + ψ̄ ≤ (φη)‾ within tolerance, with bars denoting
    /// endpoint averages.
    pub hypothesis: Vec<bool>,
    /// Samples checked: every sample up to the first hypothesis failure.
    pub checked: usize,
    /// Per checked sample: η(0)exp(∫φ) − η(t) − ∫ψ, relative to η(0)exp(∫φ).
    pub margins: Vec<f64>,
    pub min_margin: f64,
    pub passed: bool,
}

fn validate(t: &[f64], series: &[&[f64]]) -> Result<()> {
    if t.len() < 2 {
        return Err(GmhdError::param("need at least two samples"));
    }
    if series.iter().any(|s| s.len() != t.len()) {
        return Err(GmhdError::param("series lengths differ from the time grid"));
    }
    if t.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(GmhdError::param("sample times must increase"));
    }
    if series.iter().flat_map(|s| s.iter()).any(|v| !(*v >= 0.0)) {
        return Err(GmhdError::param("series must be nonnegative"));
    }
    Ok(())
}

/// Audits η(t) + ∫₀ᵗψ ≤ η(0) exp(∫₀ᵗφ) on sampled series. Integrals use
/// the trapezoid rule. The conclusion is checked at every sample reached
/// before the discrete hypothesis first fails.
pub fn gronwall_check(t: &[f64], eta: &[f64], psi: &[f64], phi: &[f64]) -> Result<GronwallReport> {
    validate(t, &[eta, psi, phi])?;
    let m = t.len();
    let hypothesis: Vec<bool> = (0..m - 1)
        .map(|k| {
            let h = t[k + 1] - t[k];
            let growth = (eta[k + 1] - eta[k]) / h + 0.5 * (psi[k] + psi[k + 1]);
            let drive = 0.5 * (phi[k] * eta[k] + phi[k + 1] * eta[k + 1]);
            growth <= drive + GRONWALL_TOL * (1.0 + drive.abs())
        })
        .collect();
    let checked = hypothesis.iter().position(|ok| !ok).map_or(m, |k| k + 1);
    let (mut int_psi, mut int_phi) = (0.0, 0.0);
    let mut margins = Vec::with_capacity(checked);
    for k in 0..checked {
        if k > 0 {
            let h = t[k] - t[k - 1];
            int_psi += 0.5 * h * (psi[k - 1] + psi[k]);
            int_phi += 0.5 * h * (phi[k - 1] + phi[k]);
        }
        let bound = eta[0] * int_phi.exp();
        let left = eta[k] + int_psi;
        margins.push(if bound > 0.0 { (bound - left) / bound } else { -left });
    }
    let min_margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(GronwallReport {
        hypothesis,
        checked,
        margins,
        min_margin,
        passed: min_margin >= -GRONWALL_TOL,
    })
}

/// Smallest C ≥ 0 with Δη/h + ψ̄ ≤ C(gη)‾ on every interval, so that
/// φ = C·g satisfies the discrete hypothesis.
pub fn fit_gronwall_constant(t: &[f64], eta: &[f64], psi: &[f64], g: &[f64]) -> Result<f64> {
    validate(t, &[eta, psi, g])?;
    let mut c = 0.0f64;
    for k in 0..t.len() - 1 {
        let h = t[k + 1] - t[k];
        let growth = (eta[k + 1] - eta[k]) / h + 0.5 * (psi[k] + psi[k + 1]);
        let drive = 0.5 * (g[k] * eta[k] + g[k + 1] * eta[k + 1]);
        if growth > 0.0 {
            if drive <= 0.0 {
                return Err(GmhdError::param(format!("no constant fits interval {k}")));
            }
            c = c.max(growth / drive);
        }
    }
    Ok(c)
}
