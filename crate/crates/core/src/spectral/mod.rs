//! Periodic grid, FFTs, Fourier multipliers and dealiased products.
//!
//! All transforms are sequential and deterministic. Fields are stored as
//! full n×n complex spectra with exact Hermitian symmetry.

mod field;
mod grid;
mod ops;
pub mod random;

pub use field::{PhysicalField, SpectralField};
pub use grid::Grid;
pub use ops::{
    biot_savart, dealiased_product, dealiased_product_physical, derivative, divergence,
    field_from_potential, fractional_power, inverse_laplacian, laplacian, perp_divergence,
    perp_gradient, Axis, BiotSavart, MagneticField,
};
