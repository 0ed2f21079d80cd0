//! Command-line front end for `takiff-core`: argument grammar, JSON/TSV
//! output and the acceptance suite behind `takiff selftest`.

pub mod acceptance;
pub mod args;
pub mod commands;
pub mod output;

use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use takiff_core::{Error, Limits};

use crate::args::Cli;
use crate::output::{write_records, Record};

/// Environment variable overriding [`Limits::dim_cap`].
pub const DIM_CAP_ENV: &str = "TAKIFF_DIM_CAP";

#[derive(Debug)]
pub enum CliError {
    /// Bad input; exit code 1.
    User(String),
    /// A configured cap was exceeded; exit code 2.
    Resource(String),
    /// A consistency check failed; exit code 1.
    Internal(String),
    /// Records to print before failing with exit code 1.
    Partial(Vec<Record>, String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Resource(_) => 2,
            _ => 1,
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::User(m) => format!("error: {m}"),
            CliError::Resource(m) => format!("error: {m}; raise the cap with {DIM_CAP_ENV} or choose a smaller input"),
            CliError::Internal(m) => format!("internal error: {m}"),
            CliError::Partial(_, m) => format!("error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DimensionCap { .. } => CliError::Resource(e.to_string()),
            Error::Internal(_) => CliError::Internal(e.to_string()),
            _ => CliError::User(e.to_string()),
        }
    }
}

/// Default limits with the dimension cap taken from the environment.
pub fn limits_from_env(var: Option<String>) -> Result<Limits, CliError> {
    let mut limits = Limits::default();
    if let Some(v) = var {
        limits.dim_cap = v
            .trim()
            .parse()
            .map_err(|_| CliError::User(format!("{DIM_CAP_ENV}={v:?} is not a nonnegative integer")))?;
    }
    Ok(limits)
}

/// Runs one invocation and returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{e}");
            return 0;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "{first} (see --help)");
            return 1;
        }
    };
    let result = limits_from_env(std::env::var(DIM_CAP_ENV).ok()).and_then(|l| commands::execute(&cli.command, &l));
    let (records, failure) = match result {
        Ok(r) => (r, None),
        Err(CliError::Partial(r, m)) => (r, Some(CliError::Partial(Vec::new(), m))),
        Err(e) => (Vec::new(), Some(e)),
    };
    if let Err(e) = write_records(cli.format, &records, out).and_then(|()| out.flush()) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return 0;
        }
        let _ = writeln!(err, "error: cannot write output: {e}");
        return 1;
    }
    match failure {
        None => 0,
        Some(e) => {
            let _ = writeln!(err, "{}", e.message());
            e.exit_code()
        }
    }
}
