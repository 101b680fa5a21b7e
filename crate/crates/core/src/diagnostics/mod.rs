//! Norms, per-sample diagnostics and balance-law audits of trajectories.

mod balance;
mod csv;
mod direction;
mod norms;
mod record;

pub use balance::{
    bkm_accumulator, bkm_h1_accumulator, energy_balance_residual, h1_ledger,
    lp_vorticity_bound_check, H1Ledger, LpBoundReport, LpViolation, CADENCE_TOL,
};
pub use csv::{lp_column, write_diagnostics_csv, CSV_HEADER};
pub use direction::{
    default_eps, direction_field, direction_field_norms, DirectionField, DirectionNorms,
    DEFAULT_EPS_FACTOR, EPS_FLOOR,
};
pub use norms::{derivative_tensor_magnitude, homogeneous_sobolev_norm, lp_norm, vector_magnitude};
pub use record::{instant_record, DiagnosticsConfig, DiagnosticsRecord, RecordBuilder};
