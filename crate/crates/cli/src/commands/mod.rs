mod coherent;
mod spectrum;
mod verify;

use std::io::Write;

use crate::config::{RunConfig, SubcommandKind};
use crate::error::{CliError, Result};

pub use coherent::coherent_report;
pub use verify::render_checks;

pub fn run(config: &RunConfig) -> Result<()> {
    match config.subcommand {
        SubcommandKind::Verify => verify::run(config),
        SubcommandKind::Spectrum => spectrum::run(config),
        SubcommandKind::Coherent => coherent::run(config),
    }
}

/// Writes to `--output` if given, stdout otherwise.
fn emit(config: &RunConfig, body: &str) -> Result<()> {
    match &config.output {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(body.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|e| CliError::Failed(format!("writing to stdout: {e}")))
        }
    }
}

fn residual_text(r: f64) -> String {
    if r == 0.0 {
        "0".to_string()
    } else {
        format!("{r:.2e}")
    }
}
