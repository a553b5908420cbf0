//! Exact Grassmann-algebra and fermionic Fock-space engine.
//!
//! The crate is `no_std` (with `alloc`) and contains only pure computation:
//!
//! - [`grassmann`]: sparse complex Grassmann algebra over `2n` generators
//!   `y_1, y*_1, …, y_n, y*_n` with canonical ordering and sign bookkeeping.
//! - [`berezin`]: left derivatives and Berezin integrals with the
//!   `d²y = dy* dy` pair measure.
//! - [`fock`]: mode operators, displacement operators, coherent states,
//!   overlaps, U(1) rotations and number fluctuations over `2^n` occupation
//!   states with Grassmann-valued amplitudes.
//! - [`bogoliubov`]: quadratic Hamiltonian around a macroscopic mode, the
//!   canonical quasi-particle transform and its diagonal form.
//! - [`physics`]: coupling constant, dispersion curves and regime checks.
//! - [`verify`]: the identity suite driven by the command-line front end.
#![no_std]

extern crate alloc;

pub mod berezin;
pub mod bogoliubov;
mod error;
pub mod fock;
pub mod grassmann;
pub mod physics;
pub mod verify;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// Coefficients with magnitude below this are pruned, and two elements whose
/// coefficients differ by no more than this compare equal.
pub const ZERO_THRESHOLD: f64 = 1e-12;
