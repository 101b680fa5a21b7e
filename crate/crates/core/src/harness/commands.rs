use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use rayon::prelude::*;

use super::config::RunConfig;
use crate::diagnostics::write_diagnostics_csv;
use crate::dynamics::snapshot::save_snapshot;
use crate::dynamics::{initial_condition, run, RunSettings, Trajectory};
use crate::error::{GmhdError, Result};
use crate::lab::{classify_regime, RegimeVerdict};
use crate::spectral::Grid;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_BLOWUP: i32 = 2;

pub const SCAN_CSV_HEADER: &str = "alpha,beta,verdict,max_h2,bkm_accum,blowup";

/// What a completed (possibly blown-up) run reports.
#[derive(Clone, Debug, PartialEq)]
pub struct RunSummary {
    pub verdict: RegimeVerdict,
    pub samples: usize,
    pub steps: usize,
    pub t_final: f64,
    pub energy_initial: f64,
    pub energy_final: f64,
    pub max_h2: f64,
    /// Accumulated ∫(‖ω‖_∞ + ‖j‖_∞) at the last sample.
    pub bkm_accum: f64,
    pub blowup: Option<f64>,
}

impl RunSummary {
    pub fn exit_code(&self) -> i32 {
        if self.blowup.is_some() {
            EXIT_BLOWUP
        } else {
            EXIT_OK
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let v = &self.verdict;
        let _ = writeln!(s, "alpha = {}, beta = {}", v.alpha, v.beta);
        let _ = writeln!(s, "verdict: {v}");
        let _ = writeln!(s, "samples: {}", self.samples);
        let _ = writeln!(s, "steps: {}", self.steps);
        let _ = writeln!(s, "t_final: {:.16e}", self.t_final);
        let _ = writeln!(s, "energy_initial: {:.16e}", self.energy_initial);
        let _ = writeln!(s, "energy_final: {:.16e}", self.energy_final);
        let _ = writeln!(s, "max_h2: {:.16e}", self.max_h2);
        let _ = writeln!(s, "bkm_accum: {:.16e}", self.bkm_accum);
        match self.blowup {
            Some(t) => {
                let _ = writeln!(s, "blowup: t = {t:.16e}");
            }
            None => s.push_str("blowup: none\n"),
        }
        s
    }
}

/// Integrates the configured run in memory.
pub fn simulate(cfg: &RunConfig) -> Result<(Trajectory, RunSummary)> {
    cfg.validate()?;
    let params = cfg.params.clone().validated()?;
    let grid = Grid::new(params.n)?;
    let initial = initial_condition(&cfg.initial, &grid, cfg.seed)?;
    let settings = RunSettings {
        diagnostics: cfg.diagnostics.clone(),
        snapshot_stride: cfg.snapshot_stride,
        ..RunSettings::new(cfg.sample_every)
    };
    let traj = run(&initial, &params, &settings)?;
    let first = traj.records.first().expect("run records the initial state");
    let last = traj.records.last().expect("run records the initial state");
    let summary = RunSummary {
        verdict: classify_regime(params.alpha, params.beta)?,
        samples: traj.records.len(),
        steps: traj.steps,
        t_final: last.t,
        energy_initial: first.energy,
        energy_final: last.energy,
        max_h2: traj.records.iter().map(|r| r.h2).fold(0.0, f64::max),
        bkm_accum: last.bkm_accum,
        blowup: traj.blowup,
    };
    Ok((traj, summary))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

/// Runs, then writes `diagnostics.csv`, `summary.txt`, `final.bin` and any
/// strided `snapshot_NNNNN.bin` files into the output directory. Nothing
/// is written if the configuration is invalid.
pub fn cmd_run(cfg: &RunConfig) -> Result<RunSummary> {
    cfg.validate()?;
    let (traj, summary) = simulate(cfg)?;
    let dir = &cfg.output_dir;
    fs::create_dir_all(dir)?;
    let mut csv = create(&dir.join("diagnostics.csv"))?;
    write_diagnostics_csv(&mut csv, &traj.records, &cfg.diagnostics.p_list)?;
    csv.flush()?;
    for (i, snap) in traj.snapshots.iter().enumerate() {
        save_snapshot(&dir.join(format!("snapshot_{i:05}.bin")), snap, &cfg.params)?;
    }
    save_snapshot(&dir.join("final.bin"), &traj.final_state, &cfg.params)?;
    fs::write(dir.join("summary.txt"), summary.to_text())?;
    Ok(summary)
}

/// The (α, β) plane over a base run configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    pub base: RunConfig,
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    pub workers: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub alpha: f64,
    pub beta: f64,
    /// The run's summary, or the error message if the point failed.
    pub outcome: std::result::Result<RunSummary, String>,
}

impl ScanRow {
    /// `verdict` is the classifier's even for failed points; the numeric
    /// columns are NaN and `blowup` reads `error` in that case.
    fn csv_line(&self) -> String {
        let verdict = classify_regime(self.alpha, self.beta)
            .map_or_else(|_| "invalid".to_string(), |v| v.verdict.to_string());
        match &self.outcome {
            Ok(s) => format!(
                "{},{},{},{:.16e},{:.16e},{}",
                self.alpha,
                self.beta,
                verdict,
                s.max_h2,
                s.bkm_accum,
                s.blowup.is_some()
            ),
            Err(_) => format!("{},{},{},NaN,NaN,error", self.alpha, self.beta, verdict),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    /// Ordered by α, then β.
    pub rows: Vec<ScanRow>,
}

impl ScanReport {
    /// 1 if any point failed, else 2 if any blew up, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.rows.iter().any(|r| r.outcome.is_err()) {
            EXIT_CONFIG
        } else if self.rows.iter().any(|r| r.outcome.as_ref().is_ok_and(|s| s.blowup.is_some())) {
            EXIT_BLOWUP
        } else {
            EXIT_OK
        }
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "{SCAN_CSV_HEADER}")?;
        for row in &self.rows {
            writeln!(w, "{}", row.csv_line())?;
        }
        Ok(())
    }
}

/// Runs every grid point (in memory, nothing per point is written) on a
/// pool of `workers` threads and writes `scan.csv` into the base output
/// directory. Each run is sequential, so the report does not depend on
/// the worker count.
pub fn cmd_scan(scan: &ScanConfig) -> Result<ScanReport> {
    if scan.workers == 0 {
        return Err(GmhdError::param("workers must be positive"));
    }
    if scan.alphas.is_empty() || scan.betas.is_empty() {
        return Err(GmhdError::param("scan ranges must be nonempty"));
    }
    scan.base.validate()?;
    let points: Vec<(f64, f64)> = scan
        .alphas
        .iter()
        .flat_map(|&a| scan.betas.iter().map(move |&b| (a, b)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(scan.workers)
        .build()
        .map_err(|e| GmhdError::param(format!("thread pool: {e}")))?;
    let rows: Vec<ScanRow> = pool.install(|| {
        points
            .par_iter()
            .map(|&(alpha, beta)| {
                let mut cfg = scan.base.clone();
                cfg.params.alpha = alpha;
                cfg.params.beta = beta;
                ScanRow {
                    alpha,
                    beta,
                    outcome: simulate(&cfg).map(|x| x.1).map_err(|e| e.to_string()),
                }
            })
            .collect()
    });
    let report = ScanReport { rows };
    fs::create_dir_all(&scan.base.output_dir)?;
    let mut w = create(&scan.base.output_dir.join("scan.csv"))?;
    report.write_csv(&mut w)?;
    w.flush()?;
    Ok(report)
}

pub fn cmd_classify(alpha: f64, beta: f64) -> Result<String> {
    Ok(classify_regime(alpha, beta)?.to_string())
}
