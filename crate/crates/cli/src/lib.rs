//! Command-line front end: single evaluations, parameter scans and self-check
//! suites, with CSV or JSON-lines output.

pub mod args;
pub mod commands;
pub mod output;
pub mod validate;

use std::ffi::OsString;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::output::{emit, render};

pub use crate::commands::{cmd_compute, cmd_scan, ComputeRecord, InvalidInput, ScanRecord};
pub use crate::validate::{run_suite, CheckRecord};

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitCode {
    Success = 0,
    ValidationFailed = 1,
    InvalidInput = 2,
    ToleranceNotMet = 3,
}

/// Parse `argv`, run the command and return the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let (text, output, code) = match &cli.command {
        Command::Compute(args) => match cmd_compute(args) {
            Ok((record, code)) => (
                render(&[record], args.common.format),
                args.common.output.clone(),
                code,
            ),
            Err(e) => return invalid(&e),
        },
        Command::Scan(args) => match cmd_scan(args) {
            Ok((rows, code)) => (
                render(&rows, args.common.format),
                args.common.output.clone(),
                code,
            ),
            Err(e) => return invalid(&e),
        },
        Command::Validate(args) => {
            let checks = run_suite(args.suite);
            let code = if checks.iter().all(|c| c.pass) {
                ExitCode::Success
            } else {
                ExitCode::ValidationFailed
            };
            (render(&checks, args.format), args.output.clone(), code)
        }
    };
    if let Err(e) = emit(&text, output.as_deref()) {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::InvalidInput as i32;
    }
    code as i32
}

fn invalid(e: &InvalidInput) -> i32 {
    eprintln!("error: {e}");
    ExitCode::InvalidInput as i32
}
