//! Displacement operators and fermionic coherent states.

use num_complex::Complex64;

use super::{FockOperator, FockVector, ModeSystem};
use crate::berezin::IntegrationMeasure;
use crate::grassmann::{Algebra, GrassmannElement};
use crate::{Error, Result};

/// Assigns generator pairs `offset, offset+1, …` of an ambient algebra to the
/// modes of a coherent state, with a global phase `y_k ↦ e^{iθ} y_k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoherentLabel {
    alg: Algebra,
    offset: usize,
    modes: usize,
    phase: f64,
    amplitude: f64,
}

impl CoherentLabel {
    pub fn new(alg: Algebra, offset: usize, modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::NoModes);
        }
        if offset + modes > alg.pairs() {
            return Err(Error::ModeOutOfRange { mode: offset + modes - 1, modes: alg.pairs() });
        }
        Ok(CoherentLabel { alg, offset, modes, phase: 0.0, amplitude: 1.0 })
    }

    /// Label using the first `modes` pairs of an algebra of exactly that size.
    pub fn standard(modes: usize) -> Result<Self> {
        Self::new(Algebra::new(modes)?, 0, modes)
    }

    pub fn with_phase(self, phase: f64) -> Self {
        CoherentLabel { phase, ..self }
    }

    /// Scales every eigenvalue by a real factor; `0` gives the zero label.
    pub fn scaled(self, amplitude: f64) -> Self {
        CoherentLabel { amplitude, ..self }
    }

    /// Advances the phase by `theta`.
    pub fn rotated(self, theta: f64) -> Self {
        self.with_phase(self.phase + theta)
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    fn phase_factor(&self) -> Complex64 {
        Complex64::from_polar(self.amplitude, self.phase)
    }

    /// Eigenvalue of `a_k`: `e^{iθ} y_{offset+k}`.
    pub fn y(&self, k: usize) -> GrassmannElement {
        assert!(k < self.modes, "mode {k} outside coherent label of {} modes", self.modes);
        self.alg.y(self.offset + k).expect("label pairs lie inside the algebra").scale(self.phase_factor())
    }

    /// `e^{−iθ} y*_{offset+k}`
    pub fn y_star(&self, k: usize) -> GrassmannElement {
        assert!(k < self.modes, "mode {k} outside coherent label of {} modes", self.modes);
        self.alg.y_star(self.offset + k).expect("label pairs lie inside the algebra").scale(self.phase_factor().conj())
    }

    /// `Σ_k y*_k y_k`
    pub fn occupation(&self) -> GrassmannElement {
        (0..self.modes).fold(self.alg.zero(), |acc, k| acc + self.y_star(k) * self.y(k))
    }

    fn shares_pairs_with(&self, other: &Self) -> bool {
        self.offset < other.offset + other.modes && other.offset < self.offset + self.modes
    }
}

/// `D(y) = ∏_k [1 + a†_k y_k − y*_k a_k + (a†_k a_k − ½) y*_k y_k]`
pub fn displacement(label: &CoherentLabel) -> Result<FockOperator> {
    let sys = ModeSystem::new(label.modes)?;
    let alg = label.alg;
    let n = sys.n_modes();
    let identity = FockOperator::identity(n, alg);
    let half = FockOperator::identity(n, alg).scale(Complex64::new(0.5, 0.0));
    let mut d = identity.clone();
    for k in 0..n {
        let a = sys.annihilation(k, alg)?;
        let ad = sys.creation(k, alg)?;
        let (y, ys) = (label.y(k), label.y_star(k));
        let number = ad.mul(&a)?.sub(&half)?;
        let factor = identity
            .add(&ad.right_mul(&y))?
            .sub(&a.left_mul(&ys))?
            .add(&number.right_mul(&(&ys * &y)))?;
        d = d.mul(&factor)?;
    }
    Ok(d)
}

/// `exp(Σ_k a†_k y_k − y*_k a_k)` summed as a power series; every power
/// carries one more generator, so the series ends after `2n` terms.
pub fn displacement_exponential(label: &CoherentLabel) -> Result<FockOperator> {
    let sys = ModeSystem::new(label.modes)?;
    let alg = label.alg;
    let mut x = FockOperator::zero(sys.n_modes(), alg);
    for k in 0..sys.n_modes() {
        let a = sys.annihilation(k, alg)?;
        let ad = sys.creation(k, alg)?;
        x = x.add(&ad.right_mul(&label.y(k)))?.sub(&a.left_mul(&label.y_star(k)))?;
    }
    x.exp_nilpotent(2 * label.modes + 1)
}

/// `|y⟩ = D(y)|0⟩`
pub fn coherent_state(label: &CoherentLabel) -> Result<FockVector> {
    displacement(label)?.apply(&FockVector::vacuum(label.modes, label.alg))
}

/// `exp(Σ_i y'*_i y_i − ½(y'*_i y'_i + y*_i y_i))` for `⟨y'|y⟩`.
pub fn overlap_formula(bra: &CoherentLabel, ket: &CoherentLabel) -> Result<GrassmannElement> {
    check_pair(bra, ket)?;
    let alg = ket.alg;
    let mut exponent = alg.zero();
    for i in 0..ket.modes {
        let cross = bra.y_star(i) * ket.y(i);
        let own = bra.y_star(i) * bra.y(i) + ket.y_star(i) * ket.y(i);
        exponent = exponent + cross - own.scale_real(0.5);
    }
    exponent.exp()
}

fn check_pair(bra: &CoherentLabel, ket: &CoherentLabel) -> Result<()> {
    if bra.alg != ket.alg {
        return Err(Error::AlgebraMismatch { left: bra.alg.pairs(), right: ket.alg.pairs() });
    }
    if bra.modes != ket.modes {
        return Err(Error::ModeMismatch { left: bra.modes, right: ket.modes });
    }
    if bra.offset != ket.offset && bra.shares_pairs_with(ket) {
        return Err(Error::OverlappingLabels);
    }
    Ok(())
}

/// Closed-form and matrix-computed values of `⟨y'|y⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct Overlap {
    pub formula: GrassmannElement,
    pub matrix: GrassmannElement,
    pub residual: f64,
}

/// Labels must either use the same generator pairs or disjoint ones.
pub fn overlap(bra: &CoherentLabel, ket: &CoherentLabel) -> Result<Overlap> {
    let formula = overlap_formula(bra, ket)?;
    let matrix = coherent_state(bra)?.inner(&coherent_state(ket)?)?;
    let residual = formula.residual(&matrix);
    Ok(Overlap { formula, matrix, residual })
}

/// `∫ d²y |y⟩⟨y|` over `n` modes, integrated entrywise.
pub fn resolution_of_identity(n: usize) -> Result<FockOperator> {
    let label = CoherentLabel::standard(n)?;
    let ket = coherent_state(&label)?;
    ket.outer(&ket)?.integrate(&IntegrationMeasure::range(0..n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_label_gives_identity_and_vacuum() {
        let label = CoherentLabel::standard(2).unwrap().scaled(0.0);
        let alg = label.algebra();
        assert_eq!(displacement(&label).unwrap(), FockOperator::identity(2, alg));
        assert_eq!(coherent_state(&label).unwrap(), FockVector::vacuum(2, alg));
    }

    #[test]
    fn single_mode_state_by_hand() {
        // D|0⟩ = |0⟩ + a†y|0⟩ − ½ y*y|0⟩ and a†y = −y a†
        let label = CoherentLabel::standard(1).unwrap();
        let alg = label.algebra();
        let psi = coherent_state(&label).unwrap();
        let ys_y = &alg.y_star(0).unwrap() * &alg.y(0).unwrap();
        assert_eq!(*psi.entry(0), alg.one() - ys_y.scale_real(0.5));
        assert_eq!(*psi.entry(1), -alg.y(0).unwrap());
    }

    #[test]
    fn partially_shared_labels_are_rejected() {
        let alg = Algebra::new(3).unwrap();
        let a = CoherentLabel::new(alg, 0, 2).unwrap();
        let b = CoherentLabel::new(alg, 1, 2).unwrap();
        assert_eq!(overlap(&a, &b).unwrap_err(), Error::OverlappingLabels);
        assert!(CoherentLabel::new(alg, 2, 2).is_err());
    }

    #[test]
    fn self_overlap_is_one() {
        let label = CoherentLabel::standard(2).unwrap();
        let o = overlap(&label, &label).unwrap();
        assert_eq!(o.formula, label.algebra().one());
        assert_eq!(o.matrix, label.algebra().one());
    }
}
