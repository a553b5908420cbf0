use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::Format;

/// Grassmann-algebra identity checks, fermionic coherent states and
/// quasi-particle dispersion sweeps.
///
/// Exit status: 0 on success, 1 when an identity or check fails, 2 on a
/// configuration error.
#[derive(Debug, Parser)]
#[command(name = "grassfock", version)]
pub struct Cli {
    /// File of `key = value` lines; command-line flags take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Progress and timing on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the identity suite at a given mode count.
    Verify(VerifyArgs),
    /// Write the quasi-particle dispersion over a momentum grid.
    Spectrum(SpectrumArgs),
    /// Report a coherent state, its eigenvalue residuals and fluctuations.
    Coherent(CoherentArgs),
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Number of fermionic modes [default: 2]
    #[arg(long)]
    pub modes: Option<usize>,
    /// Report format [default: text]
    #[arg(long)]
    pub format: Option<Format>,
    /// Seed for the randomized samples [default: 0]
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    /// Density ρ.
    #[arg(long)]
    pub rho: Option<f64>,
    /// s-wave scattering length.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Smallest momentum magnitude [default: 0]
    #[arg(long)]
    pub kmin: Option<f64>,
    /// Largest momentum magnitude [default: 2]
    #[arg(long)]
    pub kmax: Option<f64>,
    /// Grid points, endpoints included [default: 21]
    #[arg(long)]
    pub points: Option<usize>,
    /// ħ [default: 1, or the SI value with --units si]
    #[arg(long)]
    pub hbar: Option<f64>,
    /// Particle mass [default: 1; required with --units si]
    #[arg(long)]
    pub mass: Option<f64>,
    /// dimensionless (ħ = m = 1) or si [default: dimensionless]
    #[arg(long)]
    pub units: Option<String>,
    /// |ε| at or below this is flagged gapless [default: 1e-9]
    #[arg(long)]
    pub gapless_tol: Option<f64>,
    /// csv, json or text [default: csv]
    #[arg(long)]
    pub format: Option<Format>,
    /// Write the data here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CoherentArgs {
    /// Number of fermionic modes [default: 1]
    #[arg(long)]
    pub modes: Option<usize>,
    /// Comma-separated occupancies N_k, one per mode, substituted for y*_k y_k.
    #[arg(long)]
    pub occupancy: Option<String>,
    /// Also report the state rotated by e^{iθN}.
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    /// Require the phase variance 1/(4N); needs --occupancy.
    #[arg(long)]
    pub phase_variance: bool,
    /// text or json [default: text]
    #[arg(long)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}
