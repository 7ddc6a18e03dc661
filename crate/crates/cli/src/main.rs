use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use gaussian_partners_cli::run::{run, Cli, TOL_ENV};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let env = std::env::var(TOL_ENV).ok();
    let outcome = run(cli, env.as_deref());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code)
}
