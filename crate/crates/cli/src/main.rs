use std::process::ExitCode;

use clap::Parser;
use grassfock_cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match grassfock_cli::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("grassfock: {e}");
            e.exit_code()
        }
    }
}
