//! `gmhd2d`: run, scan, verify and classify from the command line.
//!
//! Exit codes: 0 success, 1 configuration error or failed verification,
//! 2 blow-up detected.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gmhd_core::harness::{
    cmd_classify, cmd_run, cmd_scan, cmd_verify, parse_range, RunConfig, ScanConfig, Suite, EXIT_CONFIG,
};

#[derive(Parser)]
#[command(name = "gmhd2d", version, about = "2D generalized MHD solver and verification lab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one configuration and write diagnostics, snapshots and a summary.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run the base configuration over a grid of (alpha, beta).
    Scan {
        #[arg(long)]
        config: PathBuf,
        /// start:stop:step (inclusive) or a single value.
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long, env = "GMHD2D_WORKERS", default_value_t = 1)]
        workers: usize,
    },
    /// Run a verification suite: identities, inequalities, positivity, gronwall or classifier.
    Verify {
        #[arg(long)]
        suite: String,
        /// Directory for the report files.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Print the regularity verdict for (alpha, beta).
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, allow_hyphen_values = true)]
        beta: f64,
    },
}

fn fail(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    EXIT_CONFIG
}

fn load(path: &Path) -> Result<RunConfig, i32> {
    let cfg = RunConfig::load(path).map_err(fail)?;
    for w in cfg.warnings() {
        eprintln!("warning: {w}");
    }
    Ok(cfg)
}

fn dispatch(command: Command) -> Result<i32, i32> {
    match command {
        Command::Run { config } => {
            let cfg = load(&config)?;
            let summary = cmd_run(&cfg).map_err(fail)?;
            print!("{}", summary.to_text());
            Ok(summary.exit_code())
        }
        Command::Scan {
            config,
            alpha,
            beta,
            workers,
        } => {
            let scan = ScanConfig {
                base: load(&config)?,
                alphas: parse_range(&alpha).map_err(fail)?,
                betas: parse_range(&beta).map_err(fail)?,
                workers,
            };
            let report = cmd_scan(&scan).map_err(fail)?;
            report.write_csv(std::io::stdout().lock()).map_err(fail)?;
            for row in &report.rows {
                if let Err(e) = &row.outcome {
                    eprintln!("point ({}, {}) failed: {e}", row.alpha, row.beta);
                }
            }
            Ok(report.exit_code())
        }
        Command::Verify { suite, out } => {
            let suite: Suite = suite.parse().map_err(fail)?;
            let report = cmd_verify(suite, &out).map_err(fail)?;
            print!("{}", report.summary());
            Ok(report.exit_code())
        }
        Command::Classify { alpha, beta } => {
            println!("{}", cmd_classify(alpha, beta).map_err(fail)?);
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors must not collide with the blow-up code.
            return ExitCode::from(if e.use_stderr() { EXIT_CONFIG as u8 } else { 0 });
        }
    };
    let code = dispatch(cli.command).unwrap_or_else(|c| c);
    ExitCode::from(code as u8)
}
