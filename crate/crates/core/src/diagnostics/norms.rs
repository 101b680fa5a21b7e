use crate::error::{GmhdError, Result};
use crate::spectral::{derivative, Axis, PhysicalField, SpectralField};

/// Collocation-quadrature Lᵖ norm (Σ|f|ᵖ Δx²)^{1/p}; `p = ∞` gives the grid
/// maximum of |f|.
pub fn lp_norm(f: &PhysicalField, p: f64) -> Result<f64> {
    if p.is_nan() || p < 1.0 {
        return Err(GmhdError::param(format!("Lp exponent must be >= 1, got {p}")));
    }
    Ok(lp_of_values(f.values().iter().copied(), f.grid().cell_area(), p))
}

pub(crate) fn lp_of_values(values: impl Iterator<Item = f64>, cell: f64, p: f64) -> f64 {
    if p.is_infinite() {
        return values.fold(0.0, |m, v| m.max(v.abs()));
    }
    let s: f64 = if p == 2.0 {
        values.map(|v| v * v).sum()
    } else if p == 1.0 {
        values.map(f64::abs).sum()
    } else {
        values.map(|v| v.abs().powf(p)).sum()
    };
    (s * cell).powf(1.0 / p)
}

/// ‖Λ^s f‖_{L²} computed spectrally. The mean mode contributes only at
/// s = 0 (for s < 0 it is skipped, matching the zero-mean convention).
pub fn homogeneous_sobolev_norm(f: &SpectralField, s: f64) -> f64 {
    sobolev_sum(f, s).sqrt()
}

/// Σ |k|^{2s}|f̂ₖ|² (2π)², the square of [`homogeneous_sobolev_norm`].
pub(crate) fn sobolev_sum(f: &SpectralField, s: f64) -> f64 {
    let total: f64 = f
        .coeffs()
        .iter()
        .zip(f.grid().k_squared().iter())
        .map(|(c, &k2)| {
            let w = if s == 0.0 {
                1.0
            } else if k2 == 0.0 {
                0.0
            } else {
                k2.powf(s)
            };
            w * c.norm_sqr()
        })
        .sum();
    total * f.grid().area()
}

/// Pointwise magnitude of the m-th derivative tensor,
/// |∇ᵐf|² = Σ over ordered index tuples of |∂_{i₁…iₘ} f|².
/// Its L² norm equals ‖Λᵐf‖.
pub fn derivative_tensor_magnitude(f: &SpectralField, m: u32) -> PhysicalField {
    // Distinct partials ∂₁ᶜ∂₂^{m-c} f appear binom(m, c) times.
    let mut partials = Vec::with_capacity(m as usize + 1);
    let mut weights = Vec::with_capacity(m as usize + 1);
    let mut binom = 1.0;
    for c in 0..=m {
        let mut g = f.clone();
        for _ in 0..c {
            g = derivative(&g, Axis::X1);
        }
        for _ in c..m {
            g = derivative(&g, Axis::X2);
        }
        partials.push(g);
        weights.push(binom);
        binom = binom * f64::from(m - c) / f64::from(c + 1);
    }
    let mut sq = ndarray::Array2::<f64>::zeros((f.grid().n(), f.grid().n()));
    let mut it = partials.chunks(2).zip(weights.chunks(2));
    for (pair, w) in &mut it {
        let (a, b) = if pair.len() == 2 {
            let (a, b) = SpectralField::to_physical_pair(&pair[0], &pair[1]);
            (a, Some(b))
        } else {
            (pair[0].to_physical(), None)
        };
        ndarray::Zip::from(&mut sq)
            .and(a.values())
            .for_each(|s, &v| *s += w[0] * v * v);
        if let Some(b) = b {
            ndarray::Zip::from(&mut sq)
                .and(b.values())
                .for_each(|s, &v| *s += w[1] * v * v);
        }
    }
    PhysicalField::from_values(f.grid(), sq.mapv(f64::sqrt)).expect("grid-shaped")
}

/// Pointwise Euclidean magnitude of a vector field.
pub fn vector_magnitude(v1: &PhysicalField, v2: &PhysicalField) -> PhysicalField {
    let vals = ndarray::Zip::from(v1.values())
        .and(v2.values())
        .map_collect(|&a, &b| a.hypot(b));
    PhysicalField::from_values(v1.grid(), vals).expect("grid-shaped")
}
