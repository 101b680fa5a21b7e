//! Integrates the Orszag-Tang vortex on a 64² grid and prints a few
//! monitored quantities.
//!
//! cargo run --release -p gmhd-core --example orszag_tang

use gmhd_core::diagnostics::energy_balance_residual;
use gmhd_core::dynamics::{initial_condition, run, InitialKind, Params, RunSettings};
use gmhd_core::lab::classify_regime;
use gmhd_core::spectral::Grid;

fn main() -> gmhd_core::Result<()> {
    let params = Params {
        n: 64,
        t_end: 1.0,
        ..Params::new(0.05, 0.05, 1.0, 1.0)?
    };
    let s0 = initial_condition(&InitialKind::OrszagTang, &Grid::new(params.n)?, 0)?;
    let traj = run(&s0, &params, &RunSettings::new(0.1))?;
    println!("{}", classify_regime(params.alpha, params.beta)?);
    println!("{:>5} {:>12} {:>12} {:>12}", "t", "energy", "|w|_inf", "|j|_inf");
    for r in &traj.records {
        println!("{:5.2} {:12.6} {:12.6} {:12.6}", r.t, r.energy, r.omega_linf, r.j_linf);
    }
    println!("steps: {}", traj.steps);
    println!("energy balance residual: {:.3e}", energy_balance_residual(&traj.records, &params)?);
    Ok(())
}
