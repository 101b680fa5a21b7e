use std::io::Write;

use super::{ConstantReport, PositivityReport, RefinementStudy};
use crate::error::Result;

pub const CONSTANT_CSV_HEADER: &str = "name,n,corpus_size,max_ratio,min_ratio,q50,q90,q99";

pub fn write_constant_reports_csv<W: Write>(mut w: W, studies: &[RefinementStudy]) -> Result<()> {
    writeln!(w, "{CONSTANT_CSV_HEADER}")?;
    for s in studies {
        for r in &s.reports {
            write_constant_row(&mut w, r)?;
        }
    }
    Ok(())
}

fn write_constant_row<W: Write>(w: &mut W, r: &ConstantReport) -> Result<()> {
    writeln!(
        w,
        "{},{},{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
        r.name, r.n, r.corpus_size, r.max_ratio, r.min_ratio, r.q50, r.q90, r.q99
    )?;
    Ok(())
}

/// One line per study: name, max ratio per grid, growth, PASS/FAIL.
pub fn constant_summary(studies: &[RefinementStudy]) -> String {
    let mut out = String::new();
    for s in studies {
        let maxes: Vec<String> = s
            .reports
            .iter()
            .map(|r| format!("n={} max={:.6e}", r.n, r.max_ratio))
            .collect();
        out.push_str(&format!(
            "{:<28} {}  growth={:.4} {}\n",
            s.name,
            maxes.join("  "),
            s.growth(),
            if s.passed() { "PASS" } else { "FAIL" }
        ));
    }
    out
}

pub const POSITIVITY_CSV_HEADER: &str = "alpha,p,n,corpus_size,min_integral,min_normalized,passed";

pub fn write_positivity_csv<W: Write>(mut w: W, reports: &[PositivityReport]) -> Result<()> {
    writeln!(w, "{POSITIVITY_CSV_HEADER}")?;
    for r in reports {
        writeln!(
            w,
            "{},{},{},{},{:.16e},{:.16e},{}",
            r.alpha, r.p, r.n, r.corpus_size, r.min_integral, r.min_normalized, r.passed
        )?;
    }
    Ok(())
}
