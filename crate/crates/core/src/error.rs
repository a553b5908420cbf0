use alloc::string::String;

use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("mode index {mode} out of range for {modes} modes")]
    ModeOutOfRange { mode: usize, modes: usize },
    #[error("{requested} modes requested, the cap is {cap}")]
    TooManyModes { requested: usize, cap: usize },
    #[error("at least one mode is required")]
    NoModes,
    #[error("operands belong to different algebras ({left} vs {right} generator pairs)")]
    AlgebraMismatch { left: usize, right: usize },
    #[error("operands act on different mode counts ({left} vs {right})")]
    ModeMismatch { left: usize, right: usize },
    #[error("exponential of an element with nonzero scalar part {0}")]
    ScalarPartInExp(Complex64),
    #[error("monomial `{0}` is not a product of y*y pairs")]
    NotPaired(String),
    #[error("no occupancy given for mode {0}")]
    MissingOccupancy(usize),
    #[error("coherent labels share only part of their generator pairs")]
    OverlappingLabels,
    #[error("state has Grassmann-valued amplitudes; the check applies to numeric states only")]
    NotApplicable,
    #[error("the macroscopic mode k = {0} cannot appear in the excitation pairs")]
    MacroscopicModeInPairs(f64),
    #[error("theta = {theta} is not admissible for pair {pair} (alpha = {alpha})")]
    InadmissibleTheta { pair: usize, theta: f64, alpha: f64 },
    #[error("invalid parameter: {0}")]
    Domain(String),
    #[error("parse error at `{fragment}`: {reason}")]
    Parse { fragment: String, reason: &'static str },
}
