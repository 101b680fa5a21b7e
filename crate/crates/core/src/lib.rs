//! Pseudo-spectral solver for two-dimensional generalized MHD with
//! fractional dissipation on the periodic torus [0, 2π)², together with
//! trajectory diagnostics and a lab of numerical checks for the identities,
//! interpolation inequalities and regularity criteria of the system.
//!
//! The evolved variables are the vorticity ω and the magnetic potential a
//! (b = ∇⊥a, j = Δa):
//!
//! ```text
//! ω_t + u·∇ω = b·∇j − νΛ^{2α}ω
//! a_t + u·∇a = −κΛ^{2β}a
//! ```

pub mod diagnostics;
pub mod dynamics;
pub mod error;
pub mod harness;
pub mod lab;
pub mod spectral;

pub use error::{GmhdError, Result};
