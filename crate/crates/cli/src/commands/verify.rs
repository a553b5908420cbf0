use std::time::Instant;

use grassfock_core::verify::{run_suite, IdentityCheck};
use serde::Serialize;

use super::{emit, residual_text};
use crate::config::{Format, RunConfig};
use crate::error::{CliError, Result};

#[derive(Serialize)]
struct CheckRecord<'a> {
    identity: &'a str,
    eq: &'a str,
    modes: usize,
    pass: bool,
    /// `null` when the check raised an error.
    max_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<&'a str>,
}

impl<'a> From<&'a IdentityCheck> for CheckRecord<'a> {
    fn from(c: &'a IdentityCheck) -> Self {
        CheckRecord {
            identity: c.identity,
            eq: c.eq,
            modes: c.modes,
            pass: c.pass,
            max_residual: c.max_residual.is_finite().then_some(c.max_residual),
            error: c.error.as_deref(),
        }
    }
}

pub(super) fn run(config: &RunConfig) -> Result<()> {
    let start = Instant::now();
    let checks = run_suite(config.modes, config.seed)?;
    if config.verbose > 0 {
        eprintln!("{} identities at n = {} in {:.2?}", checks.len(), config.modes, start.elapsed());
    }
    emit(config, &render_checks(&checks, config.format)?)?;

    let failed: Vec<&IdentityCheck> = checks.iter().filter(|c| !c.pass).collect();
    for c in &failed {
        let detail = c.error.as_deref().map(|e| format!(" ({e})")).unwrap_or_default();
        eprintln!("FAILED {}: max residual {}{detail}", c.identity, c.max_residual);
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("{} of {} identities failed", failed.len(), checks.len())))
    }
}

pub fn render_checks(checks: &[IdentityCheck], format: Format) -> Result<String> {
    match format {
        Format::Json => {
            let records: Vec<CheckRecord> = checks.iter().map(CheckRecord::from).collect();
            let mut s = serde_json::to_string_pretty(&records).map_err(|e| CliError::Failed(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let csv_err = |e: csv::Error| CliError::Failed(e.to_string());
            w.write_record(["identity", "eq", "modes", "pass", "max_residual"]).map_err(csv_err)?;
            for c in checks {
                w.write_record([
                    c.identity.to_string(),
                    c.eq.to_string(),
                    c.modes.to_string(),
                    c.pass.to_string(),
                    format!("{:e}", c.max_residual),
                ])
                .map_err(csv_err)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Failed(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
        Format::Text => {
            let width = checks.iter().map(|c| c.identity.len()).max().unwrap_or(0);
            let mut s = String::new();
            for c in checks {
                let status = if c.pass { "PASS" } else { "FAIL" };
                s.push_str(&format!(
                    "{status}  {:width$}  n={}  residual {:<9}  {}\n",
                    c.identity,
                    c.modes,
                    residual_text(c.max_residual),
                    c.eq
                ));
            }
            let passed = checks.iter().filter(|c| c.pass).count();
            s.push_str(&format!("{passed} of {} identities passed\n", checks.len()));
            Ok(s)
        }
    }
}
