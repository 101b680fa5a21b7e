//! Named verification suites with a machine-readable PASS/FAIL report.

use std::fmt;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;

use crate::dynamics::{
    cancellation_integrals, current_identity_residual, forcing_identity_residual, initial_condition, run,
    InitialKind, Params, RunSettings,
};
use crate::error::{GmhdError, Result};
use crate::lab::{
    catalog, check_inequality, check_positivity, classify_regime, fit_gronwall_constant, gronwall_check,
    log_inequality_check, refinement_study, write_constant_reports_csv, write_positivity_csv, Corpus,
    RefinementStudy, Verdict, Witness, DEFAULT_CORPUS_SIZE, LOG_INEQUALITY_NAME, POSITIVITY_TOL,
    REFINEMENT_GROWTH_LIMIT,
};
use crate::spectral::Grid;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Inequalities,
    Positivity,
    Gronwall,
    Classifier,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Identities,
        Suite::Inequalities,
        Suite::Positivity,
        Suite::Gronwall,
        Suite::Classifier,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Inequalities => "inequalities",
            Suite::Positivity => "positivity",
            Suite::Gronwall => "gronwall",
            Suite::Classifier => "classifier",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = GmhdError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| GmhdError::param(format!("unknown suite {s:?}")))
    }
}

/// One line of a suite report.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    /// Threshold the value was compared against.
    pub limit: f64,
    pub passed: bool,
}

impl Check {
    /// Passes when value < limit.
    pub fn below(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Check {
            name: name.into(),
            value,
            limit,
            passed: value < limit,
        }
    }

    /// Passes when value >= limit.
    pub fn at_least(name: impl Into<String>, value: f64, limit: f64) -> Self {
        Check {
            name: name.into(),
            value,
            limit,
            passed: value >= limit,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

pub const VERIFY_CSV_HEADER: &str = "check,value,limit,passed";

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{VERIFY_CSV_HEADER}")?;
        for c in &self.checks {
            writeln!(w, "{},{:.16e},{:.16e},{}", c.name, c.value, c.limit, c.passed)?;
        }
        Ok(())
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!(
                "{} {:<40} value={:.6e} limit={:.6e}\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.value,
                c.limit
            ));
        }
        s
    }
}

/// Runs a suite and writes `verify_<suite>.csv` (plus a detail CSV for the
/// corpus suites) into `out_dir`.
pub fn cmd_verify(suite: Suite, out_dir: &Path) -> Result<VerifyReport> {
    fs::create_dir_all(out_dir)?;
    let checks = match suite {
        Suite::Identities => identity_checks(128, 16, 50)?,
        Suite::Inequalities => {
            let studies = inequality_studies(&[128, 256], DEFAULT_CORPUS_SIZE)?;
            let mut w = BufWriter::new(File::create(out_dir.join("inequality_constants.csv"))?);
            write_constant_reports_csv(&mut w, &studies)?;
            w.flush()?;
            studies
                .iter()
                .map(|s| Check::below(format!("growth_{}", s.name), s.growth(), REFINEMENT_GROWTH_LIMIT))
                .collect()
        }
        Suite::Positivity => {
            let corpus = Corpus::default_for(128)?;
            let mut reports = Vec::new();
            for alpha in [0.25, 0.5, 1.0] {
                for p in [2, 4, 6] {
                    reports.push(check_positivity(alpha, p, &corpus)?);
                }
            }
            let mut w = BufWriter::new(File::create(out_dir.join("positivity.csv"))?);
            write_positivity_csv(&mut w, &reports)?;
            w.flush()?;
            reports
                .iter()
                .map(|r| {
                    Check::at_least(
                        format!("positivity_alpha{}_p{}", r.alpha, r.p),
                        r.min_normalized,
                        -POSITIVITY_TOL,
                    )
                })
                .collect()
        }
        Suite::Gronwall => gronwall_checks()?,
        Suite::Classifier => classifier_checks(401)?,
    };
    let report = VerifyReport { suite, checks };
    let mut w = BufWriter::new(File::create(out_dir.join(format!("verify_{suite}.csv")))?);
    report.write_csv(&mut w)?;
    w.flush()?;
    Ok(report)
}

/// Identity residuals and cancellation integrals over `count` seeded
/// random states.
pub fn identity_checks(n: usize, k_max: usize, count: u64) -> Result<Vec<Check>> {
    let grid = Grid::new(n)?;
    let kind = InitialKind::RandomBandLimited { k_max, amplitude: 1.0 };
    let rows = (1..=count)
        .into_par_iter()
        .map(|seed| {
            let s = initial_condition(&kind, &grid, seed)?;
            let c = cancellation_integrals(&s);
            let cur = current_identity_residual(&s);
            let frc = forcing_identity_residual(&s);
            let flagged = (cur.under_resolved || frc.under_resolved) as u8 as f64;
            Ok([cur.value, frc.value, c.relative[0], c.relative[1], c.relative[2], flagged])
        })
        .collect::<Result<Vec<[f64; 6]>>>()?;
    let max = |i: usize| rows.iter().map(|r| r[i]).fold(0.0, f64::max);
    let flagged: f64 = rows.iter().map(|r| r[5]).sum();
    Ok(vec![
        Check::below("current_identity_max", max(0), 1e-9),
        Check::below("forcing_identity_max", max(1), 1e-9),
        Check::below("cancel_advect_omega_max", max(2), 1e-10),
        Check::below("cancel_advect_j_max", max(3), 1e-10),
        Check::below("cancel_stretch_pair_max", max(4), 1e-10),
        Check::below("under_resolved_states", flagged, 0.5),
    ])
}

/// Refinement studies for every catalog inequality and the logarithmic
/// bound over the default corpus at each grid size.
pub fn inequality_studies(ns: &[usize], corpus_size: usize) -> Result<Vec<RefinementStudy>> {
    let mut studies = catalog()
        .iter()
        .map(|spec| refinement_study(&spec.name, ns, corpus_size, |c| check_inequality(spec, c)))
        .collect::<Result<Vec<_>>>()?;
    studies.push(refinement_study(LOG_INEQUALITY_NAME, ns, corpus_size, log_inequality_check)?);
    Ok(studies)
}

/// Constant and exponential series, then a fitted-constant audit of an
/// α = 2, β = 0 Orszag-Tang run with η = ‖ω‖² + ‖j‖², ψ = 2‖Δω‖² and
/// φ = C‖∇u‖_∞.
pub fn gronwall_checks() -> Result<Vec<Check>> {
    let t: Vec<f64> = (0..=100).map(|k| k as f64 * 0.01).collect();
    let zeros = vec![0.0; t.len()];
    let ones = vec![1.0; t.len()];
    let constant = gronwall_check(&t, &vec![3.0; t.len()], &zeros, &zeros)?;
    let eta: Vec<f64> = t.iter().map(|x| x.exp()).collect();
    let exponential = gronwall_check(&t, &eta, &zeros, &ones)?;

    let params = Params {
        n: 64,
        t_end: 0.5,
        ..Params::new(1.0, 1.0, 2.0, 0.0)?
    };
    let s0 = initial_condition(&InitialKind::OrszagTang, &Grid::new(64)?, 0)?;
    let traj = run(&s0, &params, &RunSettings::new(0.01))?;
    let ts: Vec<f64> = traj.records.iter().map(|r| r.t).collect();
    let eta: Vec<f64> = traj.records.iter().map(|r| r.h1).collect();
    let psi: Vec<f64> = traj.records.iter().map(|r| 2.0 * params.viscosity() * r.lap_omega_sq).collect();
    let g: Vec<f64> = traj.records.iter().map(|r| r.grad_u_linf).collect();
    let c = fit_gronwall_constant(&ts, &eta, &psi, &g)?;
    let phi: Vec<f64> = g.iter().map(|x| c * x).collect();
    let solver = gronwall_check(&ts, &eta, &psi, &phi)?;

    let full = |r: &crate::lab::GronwallReport| (r.passed && r.checked == r.margins.len()) as u8 as f64;
    let mut out = Vec::new();
    for (name, r) in [("constant", &constant), ("exponential", &exponential), ("solver", &solver)] {
        let hyp = r.hypothesis.iter().all(|&h| h) as u8 as f64;
        out.push(Check::at_least(format!("gronwall_{name}_hypothesis"), hyp, 1.0));
        out.push(Check::at_least(format!("gronwall_{name}_min_margin"), r.min_margin, -1e-8));
        out.push(Check::at_least(format!("gronwall_{name}_all_samples"), full(r), 1.0));
    }
    out.push(Check::at_least("gronwall_solver_fitted_constant", c, 0.0));
    Ok(out)
}

/// The documented sample points with their expected verdicts and
/// witnesses.
pub fn classifier_sample_points() -> Vec<(f64, f64, Verdict, Vec<Witness>)> {
    use Verdict::*;
    use Witness::*;
    vec![
        (0.5, 1.0, ProvenRegular, vec![CaseI]),
        (0.25, 1.6, ProvenRegular, vec![CaseII]),
        (2.0, 0.0, ProvenRegular, vec![CaseIII, RemarkCombined]),
        (1.0, 1.0, ProvenRegular, vec![CaseI, WuCondition, RemarkCombined]),
        (1.5, 0.5, ProvenRegular, vec![WuCondition, RemarkCombined]),
        (0.0, 2.0, ConditionallyRegular, vec![Thm2Conditional]),
        (0.0, 1.5, ConditionallyRegular, vec![Thm2Conditional]),
        (0.0, 2.5, ProvenRegular, vec![CaseII, Thm2Conditional, RemarkCombined]),
        (0.1, 1.0, Open, vec![]),
        (1.0, 0.0, Open, vec![]),
    ]
}

/// Counts violations of the classifier's structural invariants on an
/// m×m grid over [0, 4]²: the verdict/witness rule, monotonicity in each
/// exponent (with (0, 2) exempt) and α + β ≥ 2, α > 0 ⇒ proven.
pub fn classifier_grid_violations(m: usize) -> Result<usize> {
    let h = 4.0 / (m - 1) as f64;
    // Exact grid values on the 0.01 lattice for m = 401.
    let val = |i: usize| (i as f64 * h * 1e8).round() / 1e8;
    let mut grid = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            grid.push(classify_regime(val(i), val(j))?);
        }
    }
    let at = |i: usize, j: usize| &grid[i * m + j];
    let mut bad = 0;
    for i in 0..m {
        for j in 0..m {
            let v = at(i, j);
            let proven = v.witnesses.iter().any(|w| w.is_proof());
            if proven != (v.verdict == Verdict::ProvenRegular) {
                bad += 1;
            }
            if v.alpha > 0.0 && v.alpha + v.beta >= 2.0 && v.verdict != Verdict::ProvenRegular {
                bad += 1;
            }
            if v.verdict == Verdict::ProvenRegular {
                for next in [(i + 1, j), (i, j + 1)] {
                    if next.0 < m && next.1 < m {
                        let w = at(next.0, next.1);
                        if w.verdict != Verdict::ProvenRegular && !w.is_combined_exception() {
                            bad += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(bad)
}

pub fn classifier_checks(m: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for (a, b, verdict, witnesses) in classifier_sample_points() {
        let v = classify_regime(a, b)?;
        let ok = v.verdict == verdict && v.witnesses == witnesses;
        checks.push(Check::at_least(format!("sample_{a}_{b}"), ok as u8 as f64, 1.0));
    }
    let excl = classify_regime(0.0, 2.0)?;
    checks.push(Check::at_least(
        "exception_at_0_2",
        (excl.is_combined_exception() && !excl.has(Witness::RemarkCombined)) as u8 as f64,
        1.0,
    ));
    checks.push(Check::below(
        "grid_invariant_violations",
        classifier_grid_violations(m)? as f64,
        0.5,
    ));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn classifier_suite_passes() {
        let checks = classifier_checks(101).unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }

    #[test]
    fn small_identity_suite_passes() {
        let checks = identity_checks(32, 4, 3).unwrap();
        assert!(checks.iter().all(|c| c.passed), "{checks:?}");
    }
}
