use std::io::Write;

use super::DiagnosticsRecord;
use crate::error::Result;

/// Fixed leading columns of the diagnostics CSV.
pub const CSV_HEADER: &str = "t,energy,diss_u,diss_b,omega_l2,j_l2,omega_linf,j_linf,grad_u_linf,h1,h2,bkm_accum,bhat_w1inf,bhat_w2inf,energy_residual";

/// Column name for ‖ω‖_{Lᵖ}: `omega_lp_4`, `omega_lp_2.5`.
pub fn lp_column(p: f64) -> String {
    format!("omega_lp_{p}")
}

/// Writes one row per record with 17 significant digits. The trailing
/// `omega_lp_<p>` columns follow `p_list`; a p missing from a record is
/// written as `nan`.
pub fn write_diagnostics_csv<W: Write>(mut w: W, records: &[DiagnosticsRecord], p_list: &[f64]) -> Result<()> {
    write!(w, "{CSV_HEADER}")?;
    for &p in p_list {
        write!(w, ",{}", lp_column(p))?;
    }
    writeln!(w)?;
    for r in records {
        let fixed = [
            r.t,
            r.energy,
            r.diss_u,
            r.diss_b,
            r.omega_l2,
            r.j_l2,
            r.omega_linf,
            r.j_linf,
            r.grad_u_linf,
            r.h1,
            r.h2,
            r.bkm_accum,
            r.bhat_w1inf,
            r.bhat_w2inf,
            r.energy_residual,
        ];
        let mut first = true;
        for v in fixed.into_iter().chain(p_list.iter().map(|&p| r.omega_lp(p).unwrap_or(f64::NAN))) {
            if !first {
                w.write_all(b",")?;
            }
            first = false;
            write!(w, "{v:.16e}")?;
        }
        writeln!(w)?;
    }
    w.flush()?;
    Ok(())
}
