//! Command-line front end for `portrait-core`.
//!
//! Exit codes: 0 when the command succeeds (and any checked inequality
//! holds), 1 when an inequality is violated, 2 for unreadable or invalid
//! input and bad parameters, 3 when `--verify-oracle` finds a disagreement.

pub mod args;
pub mod batch;
pub mod commands;
pub mod error;
pub mod format;

use std::io::Write;

pub use args::Cli;
pub use commands::Outcome;
pub use error::CliError;

use args::Command;

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Portrait(a) => commands::portrait(a, out),
        Command::Check(a) => commands::check(a, out),
        Command::Mutinfo(a) => commands::mutinfo(a, out),
        Command::Gen(a) => commands::gen(a, out),
        Command::Batch(a) => commands::batch(a, out),
    }
}
