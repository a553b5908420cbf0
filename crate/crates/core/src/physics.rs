//! Physical parameters, coupling constant and quasi-particle dispersion of
//! the dilute Fermi gas.
//!
//! Dimensionless units set `ħ = m = 1`; SI parameters carry explicit
//! constants and can be rescaled to dimensionless form with
//! [`PhysicalParams::to_dimensionless`].

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;

use crate::grassmann::{Algebra, GrassmannElement};
use crate::{Error, Result};

/// Reduced Planck constant in J·s.
pub const HBAR_SI: f64 = 1.054_571_817e-34;
/// Unified atomic mass unit in kg.
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;
/// Mass of a ⁶Li atom in kg.
pub const LITHIUM6_MASS: f64 = 6.015_122_887_4 * ATOMIC_MASS_UNIT;

/// Below this `|ε|` a grid point is flagged gapless (dimensionless energy).
pub const DEFAULT_GAPLESS_TOLERANCE: f64 = 1e-9;
/// `|a|ρ^{1/3}` above this is flagged outside the dilute regime.
pub const DEFAULT_DILUTENESS_THRESHOLD: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitSystem {
    Dimensionless,
    Si,
}

impl UnitSystem {
    pub fn as_str(self) -> &'static str {
        match self {
            UnitSystem::Dimensionless => "dimensionless",
            UnitSystem::Si => "si",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "dimensionless" => Some(UnitSystem::Dimensionless),
            "si" | "SI" => Some(UnitSystem::Si),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalParams {
    pub hbar: f64,
    pub mass: f64,
    pub scattering_length: f64,
    pub density: f64,
    pub units: UnitSystem,
}

impl PhysicalParams {
    pub fn new(hbar: f64, mass: f64, scattering_length: f64, density: f64, units: UnitSystem) -> Result<Self> {
        let p = PhysicalParams { hbar, mass, scattering_length, density, units };
        p.validate()?;
        Ok(p)
    }

    /// `ħ = m = 1`
    pub fn dimensionless(scattering_length: f64, density: f64) -> Result<Self> {
        Self::new(1.0, 1.0, scattering_length, density, UnitSystem::Dimensionless)
    }

    pub fn si(mass: f64, scattering_length: f64, density: f64) -> Result<Self> {
        Self::new(HBAR_SI, mass, scattering_length, density, UnitSystem::Si)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.hbar > 0.0 && self.hbar.is_finite()) {
            return Err(Error::Domain(alloc::format!("hbar must be positive, got {}", self.hbar)));
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(Error::Domain(alloc::format!("mass must be positive, got {}", self.mass)));
        }
        if !(self.density > 0.0 && self.density.is_finite()) {
            return Err(Error::Domain(alloc::format!("density must be positive, got {}", self.density)));
        }
        if !self.scattering_length.is_finite() {
            return Err(Error::Domain(alloc::format!("scattering length {} is not finite", self.scattering_length)));
        }
        Ok(())
    }

    /// `|a| ρ^{1/3}`
    pub fn diluteness(&self) -> f64 {
        self.scattering_length.abs() * Float::cbrt(self.density)
    }

    /// Mean inter-particle distance `ρ^{−1/3}`.
    pub fn interparticle_distance(&self) -> f64 {
        Float::cbrt(self.density).recip()
    }

    /// `E_k = ħ²k²/2m`
    pub fn free_energy(&self, k: f64) -> f64 {
        self.hbar * self.hbar * k * k / (2.0 * self.mass)
    }

    /// Rescales to `ħ = m = 1` with the given length unit. Energies scale by
    /// `ħ²/(m L²)` and momenta by `1/L`.
    pub fn to_dimensionless(&self, length_unit: f64) -> Result<(PhysicalParams, Scales)> {
        if !(length_unit > 0.0) {
            return Err(Error::Domain(alloc::format!("length unit must be positive, got {length_unit}")));
        }
        let scales = Scales {
            length: length_unit,
            energy: self.hbar * self.hbar / (self.mass * length_unit * length_unit),
        };
        let p = PhysicalParams::dimensionless(
            self.scattering_length / length_unit,
            self.density * length_unit * length_unit * length_unit,
        )?;
        Ok((p, scales))
    }
}

/// Units used by [`PhysicalParams::to_dimensionless`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scales {
    pub length: f64,
    pub energy: f64,
}

impl Scales {
    pub fn momentum(&self) -> f64 {
        self.length.recip()
    }

    /// Coupling carries energy × volume.
    pub fn coupling(&self) -> f64 {
        self.energy * self.length * self.length * self.length
    }
}

/// `g = 4πħ²a/m`; negative for attractive scattering.
pub fn coupling(params: &PhysicalParams) -> f64 {
    4.0 * PI * params.hbar * params.hbar * params.scattering_length / params.mass
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionPoint {
    pub k: f64,
    pub free_energy: f64,
    pub quasi_energy: f64,
    pub gapless: bool,
}

/// Quasi-particle spectrum `ε_k = E_k + 2ρg` on a momentum grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Dispersion {
    pub params: PhysicalParams,
    pub coupling: f64,
    /// `2ρg`, the value of `ε` at `k = 0`.
    pub gap: f64,
    pub points: Vec<DispersionPoint>,
}

impl Dispersion {
    pub fn gapless_points(&self) -> impl Iterator<Item = &DispersionPoint> {
        self.points.iter().filter(|p| p.gapless)
    }
}

/// Negative `ε` (attraction beyond the critical coupling) is reported as is.
pub fn dispersion(params: &PhysicalParams, g: f64, k_grid: &[f64], gapless_tolerance: f64) -> Result<Dispersion> {
    params.validate()?;
    if k_grid.is_empty() {
        return Err(Error::Domain("empty momentum grid".into()));
    }
    if let Some(k) = k_grid.iter().find(|k| !(k.is_finite() && **k >= 0.0)) {
        return Err(Error::Domain(alloc::format!("momentum grid entry {k} is not a finite magnitude")));
    }
    let gap = 2.0 * params.density * g;
    let points = k_grid
        .iter()
        .map(|&k| {
            let free_energy = params.free_energy(k);
            let quasi_energy = free_energy + gap;
            DispersionPoint { k, free_energy, quasi_energy, gapless: quasi_energy.abs() <= gapless_tolerance }
        })
        .collect();
    Ok(Dispersion { params: *params, coupling: g, gap, points })
}

/// `points` evenly spaced values from `min` to `max` inclusive.
pub fn linear_grid(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if points == 0 {
        return Err(Error::Domain("grid needs at least one point".into()));
    }
    if !(min.is_finite() && max.is_finite()) || max < min {
        return Err(Error::Domain(alloc::format!("invalid grid range [{min}, {max}]")));
    }
    if points == 1 {
        return Ok(alloc::vec![min]);
    }
    let step = (max - min) / (points - 1) as f64;
    Ok((0..points).map(|i| if i == points - 1 { max } else { min + step * i as f64 }).collect())
}

/// Coupling `g_c = −E_k/(2ρ)` at which `ε_k` vanishes.
pub fn critical_coupling(params: &PhysicalParams, k: f64) -> f64 {
    -params.free_energy(k) / (2.0 * params.density)
}

/// Scattering length that produces coupling `g`.
pub fn scattering_length_for(params: &PhysicalParams, g: f64) -> f64 {
    g * params.mass / (4.0 * PI * params.hbar * params.hbar)
}

/// Energy of the macroscopic mode alone.
#[derive(Debug, Clone, PartialEq)]
pub struct LowestOrder {
    /// `μ = ħ²k_F²/2m`
    pub chemical_potential: f64,
    /// `E_F = μ N_F`
    pub energy: f64,
    /// `y*_F y*_F y_F y_F`, identically zero.
    pub interaction_term: GrassmannElement,
}

pub fn lowest_order_energy(params: &PhysicalParams, k_f: f64, n_f: f64) -> Result<LowestOrder> {
    if !(n_f >= 0.0) {
        return Err(Error::Domain(alloc::format!("macroscopic occupation must be nonnegative, got {n_f}")));
    }
    let alg = Algebra::new(1)?;
    let (y, ys) = (alg.y(0)?, alg.y_star(0)?);
    let interaction_term = &(&(&ys * &ys) * &y) * &y;
    assert!(interaction_term.is_zero());
    let chemical_potential = params.free_energy(k_f);
    Ok(LowestOrder { chemical_potential, energy: chemical_potential * n_f, interaction_term })
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RegimeInputs {
    /// Range of the interaction `r₀`.
    pub interaction_range: Option<f64>,
    /// Typical thermal momentum `q`, compared with `q_c = ħ/r₀`.
    pub thermal_momentum: Option<f64>,
    /// Overrides [`DEFAULT_DILUTENESS_THRESHOLD`].
    pub threshold: Option<f64>,
}

/// Advisory validity report; never blocks a computation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegimeReport {
    pub diluteness: f64,
    pub threshold: f64,
    pub dilute: bool,
    /// `r₀/d` with `d = ρ^{−1/3}`.
    pub range_over_distance: Option<f64>,
    /// `q/q_c`
    pub momentum_over_cutoff: Option<f64>,
}

pub fn regime_check(params: &PhysicalParams, inputs: RegimeInputs) -> RegimeReport {
    let threshold = inputs.threshold.unwrap_or(DEFAULT_DILUTENESS_THRESHOLD);
    let diluteness = params.diluteness();
    RegimeReport {
        diluteness,
        threshold,
        dilute: diluteness < threshold,
        range_over_distance: inputs.interaction_range.map(|r0| r0 / params.interparticle_distance()),
        momentum_over_cutoff: match (inputs.thermal_momentum, inputs.interaction_range) {
            (Some(q), Some(r0)) => Some(q * r0 / params.hbar),
            _ => None,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn coupling_values() {
        let p = PhysicalParams::dimensionless(0.01, 1.0).unwrap();
        assert!(rel(coupling(&p), 0.1256637) < 1e-6);
        assert_eq!(coupling(&PhysicalParams::dimensionless(0.0, 1.0).unwrap()), 0.0);
        let neg = PhysicalParams::dimensionless(-0.01, 1.0).unwrap();
        assert!(rel(coupling(&neg), -0.1256637) < 1e-6);
    }

    #[test]
    fn dispersion_values() {
        let p = PhysicalParams::dimensionless(0.01, 1.0).unwrap();
        let g = coupling(&p);
        let d = dispersion(&p, g, &[0.0, 1.0], DEFAULT_GAPLESS_TOLERANCE).unwrap();
        assert!(rel(d.points[1].quasi_energy, 0.7513274) < 1e-6);
        assert!(rel(d.points[0].quasi_energy, 0.2513274) < 1e-6);
        assert_eq!(d.points[0].quasi_energy, d.gap);
        let free = dispersion(&p, 0.0, &[0.5, 2.0], DEFAULT_GAPLESS_TOLERANCE).unwrap();
        assert!(free.points.iter().all(|pt| pt.quasi_energy == pt.free_energy));
        assert!(dispersion(&p, g, &[], 1e-9).is_err());
        assert!(dispersion(&p, g, &[-1.0], 1e-9).is_err());
    }

    #[test]
    fn critical_coupling_values() {
        let p = PhysicalParams::dimensionless(0.01, 1.0).unwrap();
        assert_eq!(critical_coupling(&p, 1.0), -0.25);
        assert_eq!(critical_coupling(&p, 0.0), -0.0);
        let d = dispersion(&p, critical_coupling(&p, 1.0), &[0.0, 0.5, 1.0, 1.5], DEFAULT_GAPLESS_TOLERANCE).unwrap();
        let flagged: Vec<f64> = d.gapless_points().map(|pt| pt.k).collect();
        assert_eq!(flagged, [1.0]);
    }

    #[test]
    fn lowest_order_values() {
        let p = PhysicalParams::dimensionless(0.01, 1.0).unwrap();
        let lo = lowest_order_energy(&p, 1.0, 1000.0).unwrap();
        assert_eq!((lo.chemical_potential, lo.energy), (0.5, 500.0));
        assert!(lo.interaction_term.is_zero());
        assert_eq!(lowest_order_energy(&p, 1.0, 0.0).unwrap().energy, 0.0);
        assert!(lowest_order_energy(&p, 1.0, -1.0).is_err());
    }

    #[test]
    fn regime_values() {
        let check = |a| regime_check(&PhysicalParams::dimensionless(a, 1.0).unwrap(), RegimeInputs::default());
        assert!(check(0.01).dilute && check(0.01).diluteness == 0.01);
        assert!(!check(10.0).dilute);
        assert!(check(0.0).dilute && check(0.0).diluteness == 0.0);
        let r = regime_check(
            &PhysicalParams::dimensionless(0.01, 8.0).unwrap(),
            RegimeInputs { interaction_range: Some(0.1), thermal_momentum: Some(2.0), threshold: None },
        );
        assert!((r.range_over_distance.unwrap() - 0.2).abs() < 1e-15);
        assert!((r.momentum_over_cutoff.unwrap() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn invalid_params() {
        assert!(PhysicalParams::dimensionless(0.01, 0.0).is_err());
        assert!(PhysicalParams::new(1.0, -1.0, 0.0, 1.0, UnitSystem::Dimensionless).is_err());
    }

    #[test]
    fn grid_endpoints() {
        assert_eq!(linear_grid(0.0, 2.0, 5).unwrap(), [0.0, 0.5, 1.0, 1.5, 2.0]);
        assert_eq!(linear_grid(1.0, 1.0, 1).unwrap(), [1.0]);
        assert!(linear_grid(0.0, 1.0, 0).is_err());
        assert!(linear_grid(2.0, 1.0, 3).is_err());
    }
}
