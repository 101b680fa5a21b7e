use crate::error::{GmhdError, Result};

/// Largest time step the integrator will take, regardless of the CFL bound.
pub const DEFAULT_DT_MAX: f64 = 0.01;
pub const DEFAULT_CFL: f64 = 0.4;

/// Physical and numerical parameters of a run.
///
/// `nu` and `kappa` multiply Λ^{2α} and Λ^{2β}. A zero exponent is
/// identified with the absence of that dissipation, so α = 0 forces ν = 0
/// and β = 0 forces κ = 0; [`Params::new`] and [`Params::validated`] apply
/// that rule, and the integrator reads the coefficients through
/// [`Params::viscosity`] / [`Params::resistivity`] which apply it again.
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub nu: f64,
    pub kappa: f64,
    pub alpha: f64,
    pub beta: f64,
    pub cfl: f64,
    pub t_end: f64,
    pub n: usize,
    pub dt_max: f64,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            nu: 1.0,
            kappa: 1.0,
            alpha: 1.0,
            beta: 1.0,
            cfl: DEFAULT_CFL,
            t_end: 1.0,
            n: 128,
            dt_max: DEFAULT_DT_MAX,
        }
    }
}

impl Params {
    /// Default numerical controls with the given dissipation parameters.
    pub fn new(nu: f64, kappa: f64, alpha: f64, beta: f64) -> Result<Self> {
        Params {
            nu,
            kappa,
            alpha,
            beta,
            ..Params::default()
        }
        .validated()
    }

    /// Checks ranges and applies the α = 0 ⇒ ν = 0, β = 0 ⇒ κ = 0 rule.
    pub fn validated(mut self) -> Result<Self> {
        for (name, v) in [
            ("nu", self.nu),
            ("kappa", self.kappa),
            ("alpha", self.alpha),
            ("beta", self.beta),
        ] {
            if !v.is_finite() || v < 0.0 {
                return Err(GmhdError::param(format!("{name} must be finite and >= 0, got {v}")));
            }
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(GmhdError::param(format!("cfl must lie in (0, 1], got {}", self.cfl)));
        }
        if !self.t_end.is_finite() || self.t_end < 0.0 {
            return Err(GmhdError::param(format!("t_end must be finite and >= 0, got {}", self.t_end)));
        }
        if !(self.dt_max > 0.0 && self.dt_max.is_finite()) {
            return Err(GmhdError::param(format!("dt_max must be positive, got {}", self.dt_max)));
        }
        if self.n < 8 || !self.n.is_multiple_of(2) {
            return Err(GmhdError::param(format!("n must be even and >= 8, got {}", self.n)));
        }
        if self.alpha == 0.0 {
            self.nu = 0.0;
        }
        if self.beta == 0.0 {
            self.kappa = 0.0;
        }
        Ok(self)
    }

    /// Effective ν.
    pub fn viscosity(&self) -> f64 {
        if self.alpha == 0.0 {
            0.0
        } else {
            self.nu
        }
    }

    /// Effective κ.
    pub fn resistivity(&self) -> f64 {
        if self.beta == 0.0 {
            0.0
        } else {
            self.kappa
        }
    }
}
