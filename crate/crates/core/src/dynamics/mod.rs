//! GMHD right-hand sides, time integration and identity residuals in the
//! (ω, a) formulation.

mod identities;
mod integrate;
mod params;
mod rhs;
pub mod snapshot;
mod state;

pub use identities::{
    cancellation_integrals, current_identity_residual, forcing_identity_residual, t_term,
    CancellationIntegrals, IdentityResidual, RESOLUTION_THRESHOLD,
};
pub use integrate::{cfl_dt, run, step, IfRk4, RunSettings, Trajectory, SPEED_FLOOR};
pub use params::{Params, DEFAULT_CFL, DEFAULT_DT_MAX};
pub use rhs::{nonlinear_rhs, LinearRates, Tendency};
pub use state::{initial_condition, GmhdState, InitialKind};
