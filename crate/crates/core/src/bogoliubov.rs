//! Quadratic Hamiltonian around the macroscopic mode and its canonical
//! quasi-particle transform.
//!
//! Excitations come in pairs `(k, −k)`; pair `p` occupies modes `2p` (`k`)
//! and `2p+1` (`−k`) whenever a Fock representation is built. The transform
//! per pair is
//!
//! ```text
//! a_k  = u A_k  + v̄ A†_{−k}        A_k  = ū a_k  − v̄ a†_{−k}
//! a_−k = u A_−k − v̄ A†_k           A_−k = ū a_−k + v̄ a†_k
//! ```
//!
//! with `u = cos θ`, `v = sin θ` for real angles. The relative sign between
//! the `k` and `−k` rows is what keeps `{A_k, A_−k} = 0`.

use alloc::vec::Vec;
use core::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use num_traits::Float;

use crate::fock::{FockOperator, FockVector, ModeSystem};
use crate::grassmann::{substitute_bilinears, Algebra, GrassmannElement, Occupancy};
use crate::physics::{coupling, lowest_order_energy, PhysicalParams};
use crate::{Error, Result, ZERO_THRESHOLD};

/// The coherently occupied mode `F`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MacroscopicMode {
    pub k_f: f64,
    /// `N_F`, the value substituted for `y*_F y_F`.
    pub occupation: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairCoefficient {
    pub k: f64,
    pub free_energy: f64,
    /// `α_k = ½(E_k + 2ρg)`
    pub alpha: f64,
}

/// `H = E_F + Σ'_k α_k (a†_k a_k + a†_−k a_−k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHamiltonian {
    pub params: PhysicalParams,
    pub coupling: f64,
    pub chemical_potential: f64,
    /// `E_F = μ N_F`
    pub ground_energy: f64,
    pub pairs: Vec<PairCoefficient>,
    /// `y_F y_F`, the factor of the pair-creation term.
    pub pair_creation_factor: GrassmannElement,
    /// `y*_F y*_F`, the factor of the pair-annihilation term.
    pub pair_annihilation_factor: GrassmannElement,
}

impl QuadraticHamiltonian {
    /// Both anomalous factors vanish by nilpotency.
    pub fn anomalous_terms_vanish(&self) -> bool {
        self.pair_creation_factor.is_zero() && self.pair_annihilation_factor.is_zero()
    }
}

/// `pair_momenta` are the magnitudes `k > 0` of the excitation pairs.
pub fn build_quadratic(
    params: &PhysicalParams,
    macroscopic: MacroscopicMode,
    pair_momenta: &[f64],
) -> Result<QuadraticHamiltonian> {
    params.validate()?;
    let alg = Algebra::new(1)?;
    let (y_f, ys_f) = (alg.y(0)?, alg.y_star(0)?);
    let n_f = substitute_bilinears(&(&ys_f * &y_f), &Occupancy::from([(0, macroscopic.occupation)]))?.re;
    let lowest = lowest_order_energy(params, macroscopic.k_f, n_f)?;
    let g = coupling(params);

    let mut pairs: Vec<PairCoefficient> = Vec::with_capacity(pair_momenta.len());
    for &k in pair_momenta {
        if k.abs() == macroscopic.k_f.abs() {
            return Err(Error::MacroscopicModeInPairs(k));
        }
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::Domain(alloc::format!("pair momentum {k} must be a positive magnitude")));
        }
        if pairs.iter().any(|p| p.k == k) {
            return Err(Error::Domain(alloc::format!("pair momentum {k} listed twice")));
        }
        let free_energy = params.free_energy(k);
        pairs.push(PairCoefficient { k, free_energy, alpha: 0.5 * (free_energy + 2.0 * params.density * g) });
    }

    Ok(QuadraticHamiltonian {
        params: *params,
        coupling: g,
        chemical_potential: lowest.chemical_potential,
        ground_energy: lowest.energy,
        pairs,
        pair_creation_factor: &y_f * &y_f,
        pair_annihilation_factor: &ys_f * &ys_f,
    })
}

/// Coefficients `(u_k, v_−k)` of one pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairTransform {
    pub u: Complex64,
    pub v: Complex64,
}

impl PairTransform {
    pub fn new(u: Complex64, v: Complex64) -> Self {
        PairTransform { u, v }
    }

    /// `u = cos θ`, `v = sin θ`. Multiples of π/2 give exact `0, ±1`.
    pub fn from_angle(theta: f64) -> Self {
        let (s, c) = match quarter_turns(theta) {
            Some(m) => match m.rem_euclid(4) {
                0 => (0.0, 1.0),
                1 => (1.0, 0.0),
                2 => (0.0, -1.0),
                _ => (-1.0, 0.0),
            },
            None => Float::sin_cos(theta),
        };
        PairTransform { u: Complex64::new(c, 0.0), v: Complex64::new(s, 0.0) }
    }

    /// `|u|² + |v|²`, which must be 1.
    pub fn norm(&self) -> f64 {
        self.u.norm_sqr() + self.v.norm_sqr()
    }

    /// `|u|² − |v|²` (`cos 2θ`).
    pub fn number_factor(&self) -> f64 {
        self.u.norm_sqr() - self.v.norm_sqr()
    }

    /// `2uv` (`sin 2θ` for real angles).
    pub fn pairing_factor(&self) -> Complex64 {
        self.u * self.v * 2.0
    }

    /// Applying `self` and then `next` in sequence.
    pub fn compose(&self, next: &PairTransform) -> PairTransform {
        PairTransform {
            u: self.u * next.u - self.v.conj() * next.v,
            v: self.v * next.u + self.u.conj() * next.v,
        }
    }
}

/// `Some(m)` when `theta` is within rounding of `m·π/2`.
pub fn quarter_turns(theta: f64) -> Option<i64> {
    let m = Float::round(theta / FRAC_PI_2);
    ((theta - m * FRAC_PI_2).abs() <= ZERO_THRESHOLD * theta.abs().max(1.0)).then_some(m as i64)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BogoliubovTransform {
    pub pairs: Vec<PairTransform>,
}

impl BogoliubovTransform {
    pub fn from_angles(thetas: &[f64]) -> Self {
        BogoliubovTransform { pairs: thetas.iter().map(|&t| PairTransform::from_angle(t)).collect() }
    }

    /// Builds `A_k`, `A_−k` for every pair as operators on `2·pairs` modes.
    pub fn quasiparticle_operators(&self) -> Result<(ModeSystem, Vec<FockOperator>)> {
        let labels = self.pairs.iter().enumerate().flat_map(|(p, _)| [p as i64 + 1, -(p as i64 + 1)]).collect();
        let sys = ModeSystem::with_labels(labels)?;
        let alg = Algebra::new(0)?;
        let mut ops = Vec::with_capacity(sys.n_modes());
        for (p, t) in self.pairs.iter().enumerate() {
            let (plus, minus) = (2 * p, 2 * p + 1);
            let (a_plus, a_minus) = (sys.annihilation(plus, alg)?, sys.annihilation(minus, alg)?);
            let (u_bar, v_bar) = (t.u.conj(), t.v.conj());
            ops.push(a_plus.scale(u_bar).sub(&a_minus.adjoint().scale(v_bar))?);
            ops.push(a_minus.scale(u_bar).add(&a_plus.adjoint().scale(v_bar))?);
        }
        Ok((sys, ops))
    }
}

/// Mode count up to which [`check_canonicity`] also verifies the operator
/// anticommutators.
pub const MATRIX_CHECK_MODES: usize = 4;

#[derive(Debug, Clone, PartialEq)]
pub struct CanonicityReport {
    /// `| |u|² + |v|² − 1 |` per pair.
    pub pair_residuals: Vec<f64>,
    /// Largest deviation of `{A_i, A†_j} = δ_ij`, `{A_i, A_j} = 0`, when the
    /// operators were built.
    pub matrix_residual: Option<f64>,
    /// Pairs that failed, with their residual.
    pub failures: Vec<(usize, f64)>,
}

impl CanonicityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.matrix_residual.is_none_or(|r| r <= ZERO_THRESHOLD)
    }
}

pub fn check_canonicity(t: &BogoliubovTransform) -> Result<CanonicityReport> {
    let pair_residuals: Vec<f64> = t.pairs.iter().map(|p| (p.norm() - 1.0).abs()).collect();
    let failures = pair_residuals.iter().copied().enumerate().filter(|&(_, r)| r > ZERO_THRESHOLD).collect();
    let matrix_residual = if 2 * t.pairs.len() <= MATRIX_CHECK_MODES && !t.pairs.is_empty() {
        Some(car_residual(&t.quasiparticle_operators()?.1)?)
    } else {
        None
    };
    Ok(CanonicityReport { pair_residuals, matrix_residual, failures })
}

/// Largest deviation from the canonical anticommutation relations.
pub fn car_residual(ops: &[FockOperator]) -> Result<f64> {
    let Some(first) = ops.first() else { return Ok(0.0) };
    let (n, alg) = (first.modes(), first.algebra());
    let identity = FockOperator::identity(n, alg);
    let zero = FockOperator::zero(n, alg);
    let daggers: Vec<FockOperator> = ops.iter().map(FockOperator::adjoint).collect();
    let mut worst = 0.0f64;
    for (i, a) in ops.iter().enumerate() {
        for (j, b) in ops.iter().enumerate() {
            let expected = if i == j { &identity } else { &zero };
            worst = worst.max(a.anticommutator(&daggers[j])?.residual(expected));
            worst = worst.max(a.anticommutator(b)?.residual(&zero));
            worst = worst.max(daggers[i].anticommutator(&daggers[j])?.residual(&zero));
        }
    }
    Ok(worst)
}

/// Outcome of the diagonalization condition `α_k sin 2θ_k = 0` for one pair.
#[derive(Debug, Clone, PartialEq)]
pub enum ThetaSolutions {
    /// `θ = mπ/2`, listed as the representatives `0, ±π/2, ±π, ±3π/2`.
    Lattice(Vec<f64>),
    /// `α_k = 0`: every angle diagonalizes the pair.
    Degenerate,
}

/// Representatives of the admissible angles, in quarter turns.
pub const THETA_REPRESENTATIVES: [i64; 7] = [0, 1, -1, 2, -2, 3, -3];

pub fn solve_theta(h: &QuadraticHamiltonian) -> Vec<ThetaSolutions> {
    h.pairs
        .iter()
        .map(|p| {
            if p.alpha.abs() <= ZERO_THRESHOLD {
                ThetaSolutions::Degenerate
            } else {
                ThetaSolutions::Lattice(THETA_REPRESENTATIVES.iter().map(|&m| m as f64 * FRAC_PI_2).collect())
            }
        })
        .collect()
}

pub fn is_admissible(alpha: f64, theta: f64) -> bool {
    alpha.abs() <= ZERO_THRESHOLD || quarter_turns(theta).is_some()
}

/// Coefficient `2α_k u_k v_−k` of the pair terms `A†_k A†_−k`, `A_−k A_k`.
pub fn anomalous_coefficient(alpha: f64, t: &PairTransform) -> Complex64 {
    t.pairing_factor() * alpha
}

/// Sign of `cos 2θ` on a diagonalized pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `cos 2θ = +1`: `ε_k = E_k + 2ρg`.
    Direct,
    /// `cos 2θ = −1`: `ε_k = −(E_k + 2ρg)`; particles and holes swap roles.
    Inverted,
    /// `α_k = 0`.
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuasiParticle {
    pub k: f64,
    pub alpha: f64,
    pub theta: f64,
    pub transform: PairTransform,
    /// `ε_k = 2α_k cos 2θ_k`, sign kept.
    pub energy: f64,
    pub branch: Branch,
}

/// `H = Ē + ½ Σ'_k ε_k (A†_k A_k + A†_−k A_−k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalForm {
    /// `Ē = E_F + Σ'_k 2α_k sin² 2θ_k`; equals `E_F` for admissible angles.
    pub ground_energy: f64,
    pub reference_energy: f64,
    /// `Σ'_k 2α_k |v_−k|²`, the constant left over when the pair operators
    /// are written in quasi-particle normal order. Nonzero on the inverted
    /// branch.
    pub reordering_constant: f64,
    pub pairs: Vec<QuasiParticle>,
}

impl DiagonalForm {
    pub fn transform(&self) -> BogoliubovTransform {
        BogoliubovTransform { pairs: self.pairs.iter().map(|p| p.transform).collect() }
    }
}

/// `thetas = None` picks `θ = 0` on every pair.
pub fn diagonalize(h: &QuadraticHamiltonian, thetas: Option<&[f64]>) -> Result<DiagonalForm> {
    if let Some(t) = thetas {
        if t.len() != h.pairs.len() {
            return Err(Error::Domain(alloc::format!("{} angles for {} pairs", t.len(), h.pairs.len())));
        }
    }
    let mut pairs = Vec::with_capacity(h.pairs.len());
    let mut shift = 0.0;
    let mut reordering_constant = 0.0;
    for (i, p) in h.pairs.iter().enumerate() {
        let theta = thetas.map_or(0.0, |t| t[i]);
        if !is_admissible(p.alpha, theta) {
            return Err(Error::InadmissibleTheta { pair: i, theta, alpha: p.alpha });
        }
        let transform = PairTransform::from_angle(theta);
        let pairing = transform.pairing_factor().re;
        shift += 2.0 * p.alpha * pairing * pairing;
        reordering_constant += 2.0 * p.alpha * transform.v.norm_sqr();
        let cos2 = transform.number_factor();
        let branch = if p.alpha.abs() <= ZERO_THRESHOLD {
            Branch::Degenerate
        } else if cos2 > 0.0 {
            Branch::Direct
        } else {
            Branch::Inverted
        };
        pairs.push(QuasiParticle { k: p.k, alpha: p.alpha, theta, transform, energy: 2.0 * p.alpha * cos2, branch });
    }
    Ok(DiagonalForm { ground_energy: h.ground_energy + shift, reference_energy: h.ground_energy, reordering_constant, pairs })
}

/// Quasi-particle operators applied to the bare vacuum and to their own
/// vacuum.
#[derive(Debug, Clone, PartialEq)]
pub struct VacuumReport {
    /// `max_k ‖A_k |0⟩‖`; zero when `v = 0` on every pair.
    pub bare_vacuum_residual: f64,
    /// Normalized state annihilated by every `A_k`.
    pub quasi_vacuum: FockVector,
    pub quasi_vacuum_residual: f64,
    /// Basis state carrying the largest weight of the quasi-particle vacuum.
    pub dominant_state: usize,
}

impl VacuumReport {
    pub fn bare_vacuum_is_annihilated(&self) -> bool {
        self.bare_vacuum_residual <= ZERO_THRESHOLD
    }
}

pub fn quasiparticle_vacuum_check(d: &DiagonalForm) -> Result<VacuumReport> {
    let (sys, ops) = d.transform().quasiparticle_operators()?;
    let n = sys.n_modes();
    let alg = Algebra::new(0)?;
    let bare = FockVector::vacuum(n, alg);
    let mut bare_vacuum_residual = 0.0f64;
    for a in &ops {
        bare_vacuum_residual = bare_vacuum_residual.max(a.apply(&bare)?.max_abs());
    }

    // ∏_k A_k A†_k projects onto the quasi-particle vacuum.
    let mut projector = FockOperator::identity(n, alg);
    for a in &ops {
        projector = projector.mul(&a.mul(&a.adjoint())?)?;
    }
    let (dominant_state, column) = (0..sys.dimension())
        .map(|s| (s, projector.apply(&FockVector::basis(n, alg, s))))
        .map(|(s, v)| v.map(|v| (s, v)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max_by(|a, b| norm(&a.1).total_cmp(&norm(&b.1)))
        .expect("Fock space is never empty");
    let quasi_vacuum = column.scale(Complex64::new(1.0 / norm(&column), 0.0));
    let mut quasi_vacuum_residual = 0.0f64;
    for a in &ops {
        quasi_vacuum_residual = quasi_vacuum_residual.max(a.apply(&quasi_vacuum)?.max_abs());
    }
    Ok(VacuumReport { bare_vacuum_residual, quasi_vacuum, quasi_vacuum_residual, dominant_state })
}

fn norm(v: &FockVector) -> f64 {
    Float::sqrt(v.entries().iter().map(|e| e.scalar_part().norm_sqr()).sum::<f64>())
}

/// Decomposition of `α(a†_k a_k + a†_−k a_−k)` in quasi-particle operators,
/// read off from traces of the 4×4 matrices:
/// `H = x (N^A_k + N^A_−k) + C + c₊ A†_k A†_−k + c₋ A_−k A_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairDecomposition {
    /// `x`, expected `ε_k / 2`.
    pub number: Complex64,
    pub constant: Complex64,
    pub creation_pair: Complex64,
    pub annihilation_pair: Complex64,
    /// Largest entry of `H` minus the reassembled decomposition.
    pub reconstruction_residual: f64,
}

pub fn decompose_pair_hamiltonian(alpha: f64, t: &PairTransform) -> Result<PairDecomposition> {
    let single = BogoliubovTransform { pairs: alloc::vec![*t] };
    let (sys, ops) = single.quasiparticle_operators()?;
    let alg = Algebra::new(0)?;
    let a: Vec<FockOperator> = (0..2).map(|k| sys.annihilation(k, alg)).collect::<Result<_>>()?;
    let h = a[0]
        .adjoint()
        .mul(&a[0])?
        .add(&a[1].adjoint().mul(&a[1])?)?
        .scale(Complex64::new(alpha, 0.0));

    let trace = |x: &FockOperator| x.trace().scalar_part();
    let (q0, q1) = (&ops[0], &ops[1]);
    let n0 = q0.adjoint().mul(q0)?;
    let n1 = q1.adjoint().mul(q1)?;
    let create = q0.adjoint().mul(&q1.adjoint())?;
    let annihilate = q1.mul(q0)?;

    let creation_pair = trace(&annihilate.mul(&h)?) / trace(&annihilate.mul(&create)?);
    let annihilation_pair = trace(&create.mul(&h)?) / trace(&create.mul(&annihilate)?);
    let tr_h = trace(&h);
    let number = (trace(&n0.mul(&h)?) * 2.0 - tr_h) / 2.0;
    let constant = (tr_h - number * 4.0) / 4.0;

    let rebuilt = n0
        .add(&n1)?
        .scale(number)
        .add(&FockOperator::identity(2, alg).scale(constant))?
        .add(&create.scale(creation_pair))?
        .add(&annihilate.scale(annihilation_pair))?;
    Ok(PairDecomposition {
        number,
        constant,
        creation_pair,
        annihilation_pair,
        reconstruction_residual: h.residual(&rebuilt),
    })
}
