//! Configuration files, run orchestration, (α, β) scans and the named
//! verification suites behind the command-line tool.

mod commands;
mod config;
mod verify;

pub use commands::{
    cmd_classify, cmd_run, cmd_scan, simulate, RunSummary, ScanConfig, ScanReport, ScanRow, EXIT_BLOWUP,
    EXIT_CONFIG, EXIT_OK, SCAN_CSV_HEADER,
};
pub use config::{parse_range, RunConfig, DEFAULT_OUTPUT_DIR, DEFAULT_SAMPLE_EVERY};
pub use verify::{
    classifier_checks, classifier_grid_violations, classifier_sample_points, cmd_verify, gronwall_checks,
    identity_checks, inequality_studies, Check, Suite, VerifyReport, VERIFY_CSV_HEADER,
};
