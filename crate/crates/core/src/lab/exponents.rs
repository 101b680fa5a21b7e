use crate::error::{GmhdError, Result};

/// Interpolation exponents for the small-α case: with q₁ = p₁/(p₁ − 1),
///
/// ```text
/// ‖∇ω‖_{2q₁} ≤ C‖Λ^αω‖^ξ ‖Λ^α∇ω‖^{1−ξ}
/// ‖∇ω‖_{2q₁} ≤ C‖∇ω‖^η ‖Λ^α∇ω‖^{1−η}
/// ‖ω‖_{p₁}  ≤ C‖ω‖_p^{1−2a} ‖Λ^α∇ω‖^{2a}
/// ```
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Case2Exponents {
    pub alpha: f64,
    pub p1: f64,
    pub xi: f64,
    pub eta: f64,
    pub a: f64,
    pub p: f64,
}

impl Case2Exponents {
    /// |(α − 1/p) − [(1 − 3α/(α+1))/(1 − 2a)](α − 1/p₁)|, zero in exact
    /// arithmetic.
    pub fn identity_residual(&self) -> f64 {
        let al = self.alpha;
        let lhs = al - 1.0 / self.p;
        let rhs = (1.0 - 3.0 * al / (al + 1.0)) / (1.0 - 2.0 * self.a) * (al - 1.0 / self.p1);
        (lhs - rhs).abs()
    }
}

/// ξ = α − 1/p₁, η = 1 − 1/(p₁α), a = (α/(1+α))(1 − 1/(p₁α)), and p from
/// the scaling balance −1/p₁ = −(1 − 2a)/p + aα.
pub fn exponents_case2(alpha: f64, p1: f64) -> Result<Case2Exponents> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(GmhdError::param(format!("alpha must lie in (0, 1/2), got {alpha}")));
    }
    if !(p1.is_finite() && p1 * alpha > 1.0) {
        return Err(GmhdError::param(format!(
            "p1 must be finite and exceed 1/alpha = {}, got {p1}",
            1.0 / alpha
        )));
    }
    let xi = alpha - 1.0 / p1;
    let eta = 1.0 - 1.0 / (p1 * alpha);
    let a = alpha / (1.0 + alpha) * eta;
    let p = (1.0 - 2.0 * a) / (1.0 / p1 + a * alpha);
    let inside = |v: f64, lo: f64, hi: f64| v > lo && v < hi;
    if !(inside(a, 0.0, 1.0 / 3.0)
        && inside(xi, 0.0, 1.0)
        && inside(eta, 0.0, 1.0)
        && inside(p, 1.0 / alpha, p1))
    {
        return Err(GmhdError::param(format!(
            "exponents out of range at alpha = {alpha}, p1 = {p1}"
        )));
    }
    Ok(Case2Exponents {
        alpha,
        p1,
        xi,
        eta,
        a,
        p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_excluded() {
        assert!(exponents_case2(0.4, 2.5).is_err());
        assert!(exponents_case2(0.5, 10.0).is_err());
        assert!(exponents_case2(0.0, 10.0).is_err());
        assert!(exponents_case2(0.3, f64::INFINITY).is_err());
    }
}
