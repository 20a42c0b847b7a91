use std::io::Write;
use std::process::ExitCode;

use bernoulli_denom_cli::{run, Context};

fn main() -> ExitCode {
    let outcome = run(std::env::args_os(), &Context::default());
    // Each stream is written once, after the command has finished.
    std::io::stdout().write_all(outcome.stdout.as_bytes()).ok();
    std::io::stderr().write_all(outcome.stderr.as_bytes()).ok();
    ExitCode::from(outcome.code)
}
