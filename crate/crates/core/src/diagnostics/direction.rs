//! The magnetic direction field b̂ = b/|b| and the coefficient fields of
//! the decomposition b·∇b = |b|²(b̂·∇b̂) + … used for the vorticity forcing.
//!
//! b̂ is regularized as b/(|b|² + ε²)^{1/2}. Its derivatives are obtained by
//! the chain rule from spectral derivatives of the smooth field b, which
//! avoids the Gibbs oscillations that differentiating b̂ itself would
//! produce near zeros of |b|.

use ndarray::{Array2, Zip};

use crate::error::{GmhdError, Result};
use crate::spectral::{derivative, Axis, PhysicalField, SpectralField};

/// Relative regularization used when no explicit ε is given.
pub const DEFAULT_EPS_FACTOR: f64 = 1e-6;
/// ε used for an identically vanishing field.
pub const EPS_FLOOR: f64 = 1e-12;

/// ε = 1e-6‖b‖_∞, or [`EPS_FLOOR`] when b ≡ 0.
pub fn default_eps(b1: &PhysicalField, b2: &PhysicalField) -> f64 {
    let sup = Zip::from(b1.values())
        .and(b2.values())
        .fold(0.0f64, |m, &a, &b| m.max(a.hypot(b)));
    if sup > 0.0 {
        DEFAULT_EPS_FACTOR * sup
    } else {
        EPS_FLOOR
    }
}

/// b̂, its first and second partials, and the coefficient fields
/// B = b̂·∇b̂ − (∇·b̂)b̂ and A = ∇⊥·B, all sampled on the grid.
#[derive(Clone, Debug)]
pub struct DirectionField {
    pub bhat: [Array2<f64>; 2],
    /// `d1[i][k]` = ∂ₖb̂ᵢ
    pub d1: [[Array2<f64>; 2]; 2],
    /// `d2[i][k][l]` = ∂ₗ∂ₖb̂ᵢ
    pub d2: [[[Array2<f64>; 2]; 2]; 2],
    pub coef_b: [Array2<f64>; 2],
    pub coef_a: Array2<f64>,
    pub min_abs_b: f64,
    pub eps: f64,
}

/// Sup norms of the direction field and its coefficient fields.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DirectionNorms {
    /// Max over the grid of |∂ₖb̂ᵢ| over all i, k.
    pub w1inf: f64,
    /// Max over the grid of |∂ₗ∂ₖb̂ᵢ| over all i, k, l.
    pub w2inf: f64,
    pub min_abs_b: f64,
    pub a_inf: f64,
    pub b_inf: f64,
    /// min|b| ≤ ε: the regularization dominates somewhere on the grid.
    pub degenerate: bool,
}

pub fn direction_field(b1: &PhysicalField, b2: &PhysicalField, eps: f64) -> Result<DirectionField> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(GmhdError::param(format!("direction-field eps must be positive, got {eps}")));
    }
    b1.grid().check_same(b2.grid())?;
    let (s1, s2) = PhysicalField::to_spectral_pair(b1, b2);
    let axes = [Axis::X1, Axis::X2];
    // db[i][k] = ∂ₖbᵢ, ddb[i][k][l] = ∂ₗ∂ₖbᵢ
    let first = |s: &SpectralField| {
        let (x, y) = SpectralField::to_physical_pair(&derivative(s, Axis::X1), &derivative(s, Axis::X2));
        [x.into_values(), y.into_values()]
    };
    let second = |s: &SpectralField| {
        let dx = derivative(s, Axis::X1);
        let dy = derivative(s, Axis::X2);
        let (xx, yy) = SpectralField::to_physical_pair(&derivative(&dx, axes[0]), &derivative(&dy, axes[1]));
        let xy = derivative(&dx, Axis::X2).to_physical();
        let (xx, yy, xy) = (xx.into_values(), yy.into_values(), xy.into_values());
        [[xx, xy.clone()], [xy, yy]]
    };
    let db = [first(&s1), first(&s2)];
    let ddb = [second(&s1), second(&s2)];
    let b = [b1.values(), b2.values()];

    let n = b1.grid().n();
    let shape = (n, n);
    let z = || Array2::<f64>::zeros(shape);
    let mut bhat = [z(), z()];
    let mut d1: [[Array2<f64>; 2]; 2] = [[z(), z()], [z(), z()]];
    let mut d2: [[[Array2<f64>; 2]; 2]; 2] = [[[z(), z()], [z(), z()]], [[z(), z()], [z(), z()]]];
    let mut coef_b = [z(), z()];
    let mut coef_a = z();
    let mut min_abs_b = f64::INFINITY;
    let eps2 = eps * eps;

    for r in 0..n {
        for c in 0..n {
            let p = [r, c];
            let bv = [b[0][p], b[1][p]];
            let g_b = |i: usize, k: usize| db[i][k][p];
            let g_bb = |i: usize, k: usize, l: usize| ddb[i][k][l][p];
            let mag2 = bv[0] * bv[0] + bv[1] * bv[1];
            min_abs_b = min_abs_b.min(mag2.sqrt());
            let g = 1.0 / (mag2 + eps2).sqrt();
            let g3 = g * g * g;
            let g5 = g3 * g * g;
            // s[k] = b·∂ₖb
            let s = [0, 1].map(|k| bv[0] * g_b(0, k) + bv[1] * g_b(1, k));
            let dg = [0, 1].map(|k| -s[k] * g3);
            let mut h = [[0.0; 2]; 2];
            let mut ddg = [[0.0; 2]; 2];
            for k in 0..2 {
                for l in 0..2 {
                    let cross = g_b(0, l) * g_b(0, k) + g_b(1, l) * g_b(1, k);
                    let curv = bv[0] * g_bb(0, k, l) + bv[1] * g_bb(1, k, l);
                    ddg[k][l] = -(cross + curv) * g3 + 3.0 * s[k] * s[l] * g5;
                }
            }
            let bh = [bv[0] * g, bv[1] * g];
            let mut e1 = [[0.0; 2]; 2];
            for i in 0..2 {
                bhat[i][p] = bh[i];
                for k in 0..2 {
                    e1[i][k] = g_b(i, k) * g + bv[i] * dg[k];
                    d1[i][k][p] = e1[i][k];
                    for l in 0..2 {
                        h[k][l] = g_bb(i, k, l) * g
                            + g_b(i, k) * dg[l]
                            + g_b(i, l) * dg[k]
                            + bv[i] * ddg[k][l];
                        d2[i][k][l][p] = h[k][l];
                    }
                }
            }
            let div = e1[0][0] + e1[1][1];
            // ∂ₗ(∇·b̂) = Σₖ ∂ₗ∂ₖb̂ₖ
            let ddiv = [0, 1].map(|l| d2[0][0][l][p] + d2[1][1][l][p]);
            let mut db_coef = [[0.0; 2]; 2];
            for i in 0..2 {
                coef_b[i][p] = bh[0] * e1[i][0] + bh[1] * e1[i][1] - div * bh[i];
                for l in 0..2 {
                    let mut v = -ddiv[l] * bh[i] - div * e1[i][l];
                    for k in 0..2 {
                        v += e1[k][l] * e1[i][k] + bh[k] * d2[i][k][l][p];
                    }
                    db_coef[i][l] = v;
                }
            }
            // A = -∂₂B₁ + ∂₁B₂
            coef_a[p] = -db_coef[0][1] + db_coef[1][0];
        }
    }
    Ok(DirectionField {
        bhat,
        d1,
        d2,
        coef_b,
        coef_a,
        min_abs_b,
        eps,
    })
}

fn sup(a: &Array2<f64>) -> f64 {
    a.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

impl DirectionField {
    pub fn norms(&self) -> DirectionNorms {
        let w1inf = self.d1.iter().flatten().map(sup).fold(0.0, f64::max);
        let w2inf = self.d2.iter().flatten().flatten().map(sup).fold(0.0, f64::max);
        let b_inf = Zip::from(&self.coef_b[0])
            .and(&self.coef_b[1])
            .fold(0.0f64, |m, &x, &y| m.max(x.hypot(y)));
        DirectionNorms {
            w1inf,
            w2inf,
            min_abs_b: self.min_abs_b,
            a_inf: sup(&self.coef_a),
            b_inf,
            degenerate: self.min_abs_b <= self.eps,
        }
    }
}

/// Convenience wrapper returning only the norms. `eps = None` selects
/// [`default_eps`].
pub fn direction_field_norms(
    b1: &PhysicalField,
    b2: &PhysicalField,
    eps: Option<f64>,
) -> Result<DirectionNorms> {
    let eps = eps.unwrap_or_else(|| default_eps(b1, b2));
    Ok(direction_field(b1, b2, eps)?.norms())
}
