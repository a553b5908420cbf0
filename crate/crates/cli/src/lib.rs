//! Front end for `grassfock-core`: the identity suite, coherent-state
//! reports and dispersion files.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod format;

pub use args::Cli;
pub use config::RunConfig;
pub use error::{CliError, Result};

pub fn run(cli: &Cli) -> Result<()> {
    let config = RunConfig::from_cli(cli)?;
    commands::run(&config)
}
