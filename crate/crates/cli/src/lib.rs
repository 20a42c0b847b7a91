//! `bdenom`: command-line access to the denominator computations and the
//! verification suites.
//!
//! Every command produces one output record. JSON (the default) has the
//! shape `{command, inputs, result, exact, meta: {elapsed_ms, version}}`;
//! rationals are written as exact `"num/den"` strings. Timing lives only
//! under `meta`, so two runs with the same arguments differ only there.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 falsification (the
//! two denominator routes disagree or a suite failed), 3 capped scan.
//!
//! Defaults can be set through `BDENOM_BERNOULLI_CAP`, `BDENOM_K_CAP` and
//! `BDENOM_JOBS`; command-line flags take precedence.

mod commands;
mod output;

use std::ffi::OsString;

use bernoulli_denom::BernoulliTable;
use clap::error::ErrorKind;
use clap::Parser;

pub use commands::{Cli, Command, Format, Method};
pub use output::{Meta, OutputRecord};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_FALSIFIED: u8 = 2;
pub const EXIT_CAPPED: u8 = 3;

/// Overrides for what the binary would otherwise compute itself.
#[derive(Debug, Default, Clone)]
pub struct Context {
    /// Bernoulli numbers used by the brute-force route and the suites.
    pub bernoulli: Option<BernoulliTable>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

pub fn run<I, T>(args: I, ctx: &Context) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if code == EXIT_OK {
                (rendered, String::new())
            } else {
                (String::new(), rendered)
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    commands::execute(cli, ctx)
}
