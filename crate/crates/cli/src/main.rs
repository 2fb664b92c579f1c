use std::process::ExitCode;

use clap::Parser;
use portrait_cli::{run, Cli};

fn main() -> ExitCode {
    // clap reports usage errors itself, with exit status 2.
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(outcome) => ExitCode::from(outcome.exit_code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
