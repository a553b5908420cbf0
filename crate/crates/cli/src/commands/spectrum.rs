use grassfock_core::physics::{coupling, dispersion, linear_grid, regime_check, Dispersion, RegimeInputs};

use super::emit;
use crate::config::{Format, RunConfig};
use crate::error::{CliError, Result};
use crate::format::{significant, spectrum_to_csv, spectrum_to_json};

pub(super) fn run(config: &RunConfig) -> Result<()> {
    let params = config.params.ok_or_else(|| CliError::Config("physical parameters missing".into()))?;
    let grid = linear_grid(config.grid.min, config.grid.max, config.grid.points)?;
    let d = dispersion(&params, coupling(&params), &grid, config.gapless_tolerance)?;

    eprintln!("gap 2ρg = {}", d.gap);
    for p in d.gapless_points() {
        eprintln!("gapless at k = {}", p.k);
    }
    let regime = regime_check(&params, RegimeInputs::default());
    if !regime.dilute {
        eprintln!("warning: |a|ρ^(1/3) = {} is not below {}; the dilute-gas treatment is doubtful", regime.diluteness, regime.threshold);
    } else if config.verbose > 0 {
        eprintln!("|a|ρ^(1/3) = {}", regime.diluteness);
    }

    let body = match config.format {
        Format::Json => spectrum_to_json(&d),
        Format::Csv => spectrum_to_csv(&d.points),
        Format::Text => Ok(table(&d)),
    }
    .map_err(|e| CliError::Failed(e.to_string()))?;
    emit(config, &body)
}

fn table(d: &Dispersion) -> String {
    let mut s = format!("g = {}\ngap = {}\n", significant(d.coupling), significant(d.gap));
    s.push_str(&format!("{:>16} {:>16} {:>16}  gapless\n", "k", "E_k", "eps_k"));
    for p in &d.points {
        s.push_str(&format!(
            "{:>16} {:>16} {:>16}  {}\n",
            significant(p.k),
            significant(p.free_energy),
            significant(p.quasi_energy),
            if p.gapless { "yes" } else { "" }
        ));
    }
    s
}
