//! Command-line front end for `hallint-core`.
//!
//! Three subcommands:
//!
//! * `eval` prints one quantity with its error estimate;
//! * `verify` sweeps the registered identities over a grid and emits one
//!   report row per (identity, grid point) as csv, json or a table;
//! * `device` turns resistances, parameters or moduli into geometry factor
//!   and SNR figures, plus the complementary 3-contact device.
//!
//! Data goes to stdout and diagnostics to stderr. Exit codes: 0 success,
//! 1 identity failure, 2 domain or usage error, 3 accuracy failure.
//! `HALLINT_EVAL_BUDGET` caps the integrand evaluations of each integral.

pub mod args;
pub mod device;
pub mod error;
pub mod eval;
pub mod report;
pub mod verify;

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::Parser;
use hallint_core::device::SnrModel;
use hallint_core::quadrature::DEFAULT_MAX_EVALS;
use hallint_core::QuadOptions;

use args::{Cli, Command, DeviceArgs, EvalArgs, VerifyArgs};
use error::{exit, CliError};
use verify::VerifyConfig;

pub const BUDGET_VAR: &str = "HALLINT_EVAL_BUDGET";

/// Evaluation budget per integral from the environment, or the default.
pub fn eval_budget() -> Result<usize, CliError> {
    match std::env::var(BUDGET_VAR) {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_MAX_EVALS),
        Err(e) => Err(CliError::usage(format!("{BUDGET_VAR}: {e}"))),
        Ok(text) => match text.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::usage(format!("{BUDGET_VAR} must be a positive integer, got `{text}`"))),
        },
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit::DOMAIN } else { exit::OK };
        }
    };
    let result = match cli.command {
        Command::Eval(a) => cmd_eval(&a),
        Command::Verify(a) => cmd_verify(&a),
        Command::Device(a) => cmd_device(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn cmd_eval(args: &EvalArgs) -> Result<i32, CliError> {
    let result = eval::evaluate(args, eval_budget()?)?;
    println!("{}", eval::render(&result));
    Ok(exit::OK)
}

fn cmd_verify(args: &VerifyArgs) -> Result<i32, CliError> {
    let grid = args.grid.clone().unwrap_or_else(verify::default_grid);
    let config = VerifyConfig::new(grid, args.tol, &args.identities, args.format)?;
    let budget = eval_budget()?;
    let outcome = verify::run(&config, budget);
    match &args.output {
        Some(path) => report::write_rows(&outcome.rows, config.output_format, BufWriter::new(File::create(path)?))?,
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            report::write_rows(&outcome.rows, config.output_format, &mut lock)?;
            lock.flush()?;
        }
    }
    for failed in &outcome.errors {
        eprintln!("error: {} at {}: {}", failed.identity, failed.params, failed.error);
    }
    eprintln!("{}", outcome.summary());
    Ok(outcome.exit_code())
}

fn cmd_device(args: &DeviceArgs) -> Result<i32, CliError> {
    let input = device::DeviceInput::from_args(args)?;
    let opts = QuadOptions::from(args.tol).with_max_evals(eval_budget()?);
    let model = SnrModel {
        constant: args.snr_constant,
    };
    let fields = device::compute(input, model, opts)?;
    device::write(&fields, args.format, io::stdout().lock())?;
    Ok(exit::OK)
}
