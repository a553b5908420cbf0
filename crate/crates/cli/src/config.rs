//! Run configuration: flags, then a `key = value` file, then defaults.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use grassfock_core::fock::MODE_CAP;
use grassfock_core::physics::{PhysicalParams, UnitSystem, DEFAULT_GAPLESS_TOLERANCE, HBAR_SI};

use crate::args::{Cli, CoherentArgs, Command, SpectrumArgs, VerifyArgs};
use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            _ => Err(format!("unknown format `{s}` (expected json, csv or text)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "text",
        })
    }
}

/// Keys accepted in a config file; the same names as the long flags.
pub const KNOWN_KEYS: &[&str] = &[
    "modes",
    "seed",
    "format",
    "output",
    "rho",
    "a",
    "kmin",
    "kmax",
    "points",
    "hbar",
    "mass",
    "units",
    "gapless-tol",
    "occupancy",
    "theta",
    "phase-variance",
    "verbose",
];

/// Parsed `key = value` file. `#` starts a comment; `_` and `-` are
/// interchangeable in keys.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    origin: String,
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config file {}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Config(format!("{origin}:{}: expected `key = value`", n + 1)));
            };
            let key = key.trim().replace('_', "-");
            if !KNOWN_KEYS.contains(&key.as_str()) {
                return Err(CliError::Config(format!("{origin}:{}: unknown key `{key}`", n + 1)));
            }
            if entries.insert(key.clone(), value.trim().to_string()).is_some() {
                return Err(CliError::Config(format!("{origin}:{}: `{key}` set twice", n + 1)));
            }
        }
        Ok(ConfigFile { origin: origin.to_string(), entries })
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        self.entries
            .get(key)
            .map(|v| {
                v.parse::<T>().map_err(|e| CliError::Config(format!("{}: bad value for `{key}`: {e}", self.origin)))
            })
            .transpose()
    }

    /// Flag value if given, otherwise the file's.
    pub fn layer<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubcommandKind {
    Verify,
    Spectrum,
    Coherent,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub subcommand: SubcommandKind,
    pub modes: usize,
    pub seed: u64,
    /// Present for `spectrum`.
    pub params: Option<PhysicalParams>,
    pub grid: GridSpec,
    pub gapless_tolerance: f64,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub occupancy: Option<Vec<f64>>,
    pub theta: Option<f64>,
    pub phase_variance: bool,
    pub verbose: u8,
}

pub const DEFAULT_VERIFY_MODES: usize = 2;
pub const DEFAULT_COHERENT_MODES: usize = 1;
pub const DEFAULT_GRID: GridSpec = GridSpec { min: 0.0, max: 2.0, points: 21 };

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        let file = match &cli.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let verbose = if cli.verbose > 0 { cli.verbose } else { file.get("verbose")?.unwrap_or(0) };
        let config = match &cli.command {
            Command::Verify(args) => Self::verify(args, &file, verbose)?,
            Command::Spectrum(args) => Self::spectrum(args, &file, verbose)?,
            Command::Coherent(args) => Self::coherent(args, &file, verbose)?,
        };
        config.validate()?;
        Ok(config)
    }

    fn base(subcommand: SubcommandKind, format: Format, verbose: u8) -> Self {
        RunConfig {
            subcommand,
            modes: DEFAULT_VERIFY_MODES,
            seed: 0,
            params: None,
            grid: DEFAULT_GRID,
            gapless_tolerance: DEFAULT_GAPLESS_TOLERANCE,
            format,
            output: None,
            occupancy: None,
            theta: None,
            phase_variance: false,
            verbose,
        }
    }

    fn verify(args: &VerifyArgs, file: &ConfigFile, verbose: u8) -> Result<Self> {
        let mut c = Self::base(SubcommandKind::Verify, Format::Text, verbose);
        c.modes = file.layer(args.modes, "modes")?.unwrap_or(DEFAULT_VERIFY_MODES);
        c.seed = file.layer(args.seed, "seed")?.unwrap_or(0);
        c.format = file.layer(args.format, "format")?.unwrap_or(Format::Text);
        c.output = file.layer(args.output.clone(), "output")?;
        Ok(c)
    }

    fn spectrum(args: &SpectrumArgs, file: &ConfigFile, verbose: u8) -> Result<Self> {
        let mut c = Self::base(SubcommandKind::Spectrum, Format::Csv, verbose);
        let units: Option<String> = file.layer(args.units.clone(), "units")?;
        let units = match units.as_deref() {
            None => UnitSystem::Dimensionless,
            Some(u) => UnitSystem::parse(u)
                .ok_or_else(|| CliError::Config(format!("unknown unit system `{u}` (expected dimensionless or si)")))?,
        };
        let rho: f64 = file.layer(args.rho, "rho")?.ok_or_else(|| CliError::Config("--rho is required".into()))?;
        let a: f64 = file.layer(args.a, "a")?.ok_or_else(|| CliError::Config("--a is required".into()))?;
        let (default_hbar, default_mass) = match units {
            UnitSystem::Dimensionless => (1.0, Some(1.0)),
            UnitSystem::Si => (HBAR_SI, None),
        };
        let hbar = file.layer(args.hbar, "hbar")?.unwrap_or(default_hbar);
        let mass = file
            .layer(args.mass, "mass")?
            .or(default_mass)
            .ok_or_else(|| CliError::Config("--mass is required with --units si".into()))?;
        c.params = Some(PhysicalParams::new(hbar, mass, a, rho, units)?);
        c.grid = GridSpec {
            min: file.layer(args.kmin, "kmin")?.unwrap_or(DEFAULT_GRID.min),
            max: file.layer(args.kmax, "kmax")?.unwrap_or(DEFAULT_GRID.max),
            points: file.layer(args.points, "points")?.unwrap_or(DEFAULT_GRID.points),
        };
        c.gapless_tolerance = file.layer(args.gapless_tol, "gapless-tol")?.unwrap_or(DEFAULT_GAPLESS_TOLERANCE);
        c.format = file.layer(args.format, "format")?.unwrap_or(Format::Csv);
        c.output = file.layer(args.output.clone(), "output")?;
        Ok(c)
    }

    fn coherent(args: &CoherentArgs, file: &ConfigFile, verbose: u8) -> Result<Self> {
        let mut c = Self::base(SubcommandKind::Coherent, Format::Text, verbose);
        c.modes = file.layer(args.modes, "modes")?.unwrap_or(DEFAULT_COHERENT_MODES);
        c.occupancy = file.layer(args.occupancy.clone(), "occupancy")?.map(|s: String| parse_occupancy(&s)).transpose()?;
        c.theta = file.layer(args.theta, "theta")?;
        c.phase_variance = args.phase_variance || file.get("phase-variance")?.unwrap_or(false);
        c.format = file.layer(args.format, "format")?.unwrap_or(Format::Text);
        c.output = file.layer(args.output.clone(), "output")?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.subcommand != SubcommandKind::Spectrum {
            if self.modes == 0 {
                return Err(CliError::Config("--modes must be at least 1".into()));
            }
            if self.modes > MODE_CAP {
                return Err(CliError::Config(format!("--modes {} exceeds the cap of {MODE_CAP}", self.modes)));
            }
        }
        match self.subcommand {
            SubcommandKind::Verify => {}
            SubcommandKind::Spectrum => {
                if self.grid.points == 0 {
                    return Err(CliError::Config("--points must be at least 1".into()));
                }
                if !(self.gapless_tolerance >= 0.0) {
                    return Err(CliError::Config("--gapless-tol must be nonnegative".into()));
                }
            }
            SubcommandKind::Coherent => {
                if self.format == Format::Csv {
                    return Err(CliError::Config("coherent reports are text or json".into()));
                }
                if let Some(occ) = &self.occupancy {
                    if occ.len() != self.modes {
                        return Err(CliError::Config(format!(
                            "{} occupancies given for {} modes",
                            occ.len(),
                            self.modes
                        )));
                    }
                }
                if self.phase_variance && self.occupancy.is_none() {
                    return Err(CliError::Config("--phase-variance needs --occupancy".into()));
                }
            }
        }
        Ok(())
    }
}

fn parse_occupancy(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|part| {
            let v: f64 = part
                .trim()
                .parse()
                .map_err(|_| CliError::Config(format!("occupancy `{}` is not a number", part.trim())))?;
            if !(v.is_finite() && v >= 0.0) {
                return Err(CliError::Config(format!("occupancy {v} must be finite and nonnegative")));
            }
            Ok(v)
        })
        .collect()
}
