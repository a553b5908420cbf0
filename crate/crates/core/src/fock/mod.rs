//! Finite fermionic Fock space with Grassmann-valued amplitudes.
//!
//! Basis states are occupation bitstrings with mode 0 as the least
//! significant bit. Mode operators use the Jordan–Wigner convention: `a_k`
//! acting on bit `k` carries the sign `(−1)^(occupied modes below k)`.
//!
//! Operators are stored in normal form `X = Σ X_ij |i⟩⟨j|` with each
//! Grassmann coefficient to the left of its matrix unit. The unit `|i⟩⟨j|`
//! has fermion parity `|i| + |j|` (popcounts), and a Grassmann element moving
//! past an odd unit picks up its grade involution. All products below apply
//! that rule, which realizes the anticommutation of Grassmann generators with
//! the mode operators.

mod coherent;
mod hamiltonian;
mod symmetry;

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::grassmann::{Algebra, GrassmannElement};
use crate::{Error, Result};

pub use coherent::{
    coherent_state, displacement, displacement_exponential, overlap, overlap_formula, resolution_of_identity,
    CoherentLabel, Overlap,
};
pub use hamiltonian::number_conserving_hamiltonian;
pub use symmetry::{
    is_physical, number_moments, phase_variance, phase_variance_of, u1_operator, u1_rotate, NumberMoments,
};

/// Default cap on the number of modes.
pub const MODE_CAP: usize = 6;

/// `n` fermionic modes with momentum tags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeSystem {
    labels: Vec<i64>,
}

impl ModeSystem {
    /// Modes tagged `0, 1, …, n−1`.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_labels((0..n as i64).collect())
    }

    pub fn with_labels(labels: Vec<i64>) -> Result<Self> {
        Self::with_labels_capped(labels, MODE_CAP)
    }

    pub fn with_labels_capped(labels: Vec<i64>, cap: usize) -> Result<Self> {
        match labels.len() {
            0 => Err(Error::NoModes),
            n if n > cap => Err(Error::TooManyModes { requested: n, cap }),
            _ => Ok(ModeSystem { labels }),
        }
    }

    pub fn n_modes(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn dimension(&self) -> usize {
        1 << self.labels.len()
    }

    pub fn check_mode(&self, k: usize) -> Result<()> {
        if k < self.n_modes() {
            Ok(())
        } else {
            Err(Error::ModeOutOfRange { mode: k, modes: self.n_modes() })
        }
    }

    /// Index of the mode carrying `label`, if any.
    pub fn find(&self, label: i64) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    pub fn annihilation(&self, k: usize, alg: Algebra) -> Result<FockOperator> {
        self.check_mode(k)?;
        let dim = self.dimension();
        let mut op = FockOperator::zero(self.n_modes(), alg);
        for state in 0..dim {
            if state >> k & 1 == 1 {
                let sign = jordan_wigner_sign(state, k);
                op.set(state ^ (1 << k), state, alg.scalar(Complex64::new(sign, 0.0)));
            }
        }
        Ok(op)
    }

    pub fn creation(&self, k: usize, alg: Algebra) -> Result<FockOperator> {
        Ok(self.annihilation(k, alg)?.adjoint())
    }

    /// `N = Σ_k a†_k a_k`
    pub fn number_operator(&self, alg: Algebra) -> FockOperator {
        FockOperator::diagonal(self.n_modes(), alg, |s| Complex64::new(s.count_ones() as f64, 0.0))
    }
}

fn jordan_wigner_sign(state: usize, k: usize) -> f64 {
    if (state & ((1 << k) - 1)).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn parity(state: usize) -> bool {
    state.count_ones() % 2 == 1
}

/// Applies the grade involution when `odd` is set.
fn twist(g: &GrassmannElement, odd: bool) -> GrassmannElement {
    if odd {
        g.grade_involution()
    } else {
        g.clone()
    }
}

/// Column of `2^n` Grassmann amplitudes `Σ ψ_i |i⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    modes: usize,
    alg: Algebra,
    entries: Vec<GrassmannElement>,
}

impl FockVector {
    pub fn zero(modes: usize, alg: Algebra) -> Self {
        FockVector { modes, alg, entries: vec![alg.zero(); 1 << modes] }
    }

    pub fn basis(modes: usize, alg: Algebra, state: usize) -> Self {
        let mut v = Self::zero(modes, alg);
        v.entries[state] = alg.one();
        v
    }

    pub fn vacuum(modes: usize, alg: Algebra) -> Self {
        Self::basis(modes, alg, 0)
    }

    /// Numeric amplitudes.
    pub fn from_amplitudes(modes: usize, alg: Algebra, amplitudes: &[Complex64]) -> Result<Self> {
        if amplitudes.len() != 1 << modes {
            return Err(Error::Domain(alloc::format!(
                "{} amplitudes given for {} basis states",
                amplitudes.len(),
                1usize << modes
            )));
        }
        Ok(FockVector { modes, alg, entries: amplitudes.iter().map(|&c| alg.scalar(c)).collect() })
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn entries(&self) -> &[GrassmannElement] {
        &self.entries
    }

    pub fn entry(&self, state: usize) -> &GrassmannElement {
        &self.entries[state]
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|_, e| e.scale(c))
    }

    /// `g · |ψ⟩`, with `g` written to the left of the whole ket.
    pub fn left_mul(&self, g: &GrassmannElement) -> Self {
        self.map(|_, e| g * e)
    }

    fn map(&self, f: impl Fn(usize, &GrassmannElement) -> GrassmannElement) -> Self {
        FockVector {
            modes: self.modes,
            alg: self.alg,
            entries: self.entries.iter().enumerate().map(|(i, e)| f(i, e)).collect(),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch { left: self.alg.pairs(), right: other.alg.pairs() });
        }
        if self.modes != other.modes {
            return Err(Error::ModeMismatch { left: self.modes, right: other.modes });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.map(|i, e| e + &other.entries[i]))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.map(|i, e| e - &other.entries[i]))
    }

    /// `⟨self|other⟩ = Σ_i σ^{|i|}(ψ̄_i φ_i)`.
    pub fn inner(&self, other: &Self) -> Result<GrassmannElement> {
        self.check_compatible(other)?;
        let mut sum = self.alg.zero();
        for (i, (a, b)) in self.entries.iter().zip(&other.entries).enumerate() {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            sum += &twist(&(&a.conjugate() * b), parity(i));
        }
        Ok(sum)
    }

    /// `|self⟩⟨other|`
    pub fn outer(&self, other: &Self) -> Result<FockOperator> {
        self.check_compatible(other)?;
        let bra: Vec<GrassmannElement> = other.entries.iter().map(|e| e.conjugate()).collect();
        let dim = self.entries.len();
        let mut op = FockOperator::zero(self.modes, self.alg);
        for i in 0..dim {
            for j in 0..dim {
                if self.entries[i].is_zero() || bra[j].is_zero() {
                    continue;
                }
                op.set(i, j, &self.entries[i] * &twist(&bra[j], parity(i) != parity(j)));
            }
        }
        Ok(op)
    }

    pub fn residual(&self, other: &Self) -> f64 {
        if self.check_compatible(other).is_err() {
            return f64::INFINITY;
        }
        self.entries.iter().zip(&other.entries).map(|(a, b)| a.residual(b)).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(GrassmannElement::max_abs).fold(0.0, f64::max)
    }
}

/// `2^n × 2^n` matrix over the Grassmann algebra, in normal form.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    modes: usize,
    alg: Algebra,
    entries: Vec<GrassmannElement>,
}

impl FockOperator {
    pub fn zero(modes: usize, alg: Algebra) -> Self {
        let dim = 1 << modes;
        FockOperator { modes, alg, entries: vec![alg.zero(); dim * dim] }
    }

    pub fn identity(modes: usize, alg: Algebra) -> Self {
        Self::diagonal(modes, alg, |_| Complex64::new(1.0, 0.0))
    }

    /// Numeric diagonal operator `Σ f(s) |s⟩⟨s|`.
    pub fn diagonal(modes: usize, alg: Algebra, f: impl Fn(usize) -> Complex64) -> Self {
        let mut op = Self::zero(modes, alg);
        for s in 0..1 << modes {
            op.set(s, s, alg.scalar(f(s)));
        }
        op
    }

    /// `g · I`
    pub fn from_grassmann(modes: usize, g: &GrassmannElement) -> Self {
        let mut op = Self::zero(modes, g.algebra());
        for s in 0..1 << modes {
            op.set(s, s, g.clone());
        }
        op
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn algebra(&self) -> Algebra {
        self.alg
    }

    pub fn dimension(&self) -> usize {
        1 << self.modes
    }

    pub fn get(&self, i: usize, j: usize) -> &GrassmannElement {
        &self.entries[i * self.dimension() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: GrassmannElement) {
        let dim = self.dimension();
        self.entries[i * dim + j] = value;
    }

    fn map(&self, f: impl Fn(usize, usize, &GrassmannElement) -> GrassmannElement) -> Self {
        let dim = self.dimension();
        FockOperator {
            modes: self.modes,
            alg: self.alg,
            entries: self.entries.iter().enumerate().map(|(n, e)| f(n / dim, n % dim, e)).collect(),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.alg != other.alg {
            return Err(Error::AlgebraMismatch { left: self.alg.pairs(), right: other.alg.pairs() });
        }
        if self.modes != other.modes {
            return Err(Error::ModeMismatch { left: self.modes, right: other.modes });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.map(|i, j, e| e + other.get(i, j)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.map(|i, j, e| e - other.get(i, j)))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        self.map(|_, _, e| e.scale(c))
    }

    /// `g · X`
    pub fn left_mul(&self, g: &GrassmannElement) -> Self {
        self.map(|_, _, e| g * e)
    }

    /// `X · g`: `g` passes each unit `|i⟩⟨j|` on its way to normal form.
    pub fn right_mul(&self, g: &GrassmannElement) -> Self {
        let twisted = g.grade_involution();
        self.map(|i, j, e| if parity(i) != parity(j) { e * &twisted } else { e * g })
    }

    /// Graded matrix product `(XY)_ik = Σ_j X_ij σ^{|i|+|j|}(Y_jk)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let dim = self.dimension();
        let twisted: Vec<GrassmannElement> = other.entries.iter().map(GrassmannElement::grade_involution).collect();
        let mut out = Self::zero(self.modes, self.alg);
        for i in 0..dim {
            for j in 0..dim {
                let x = self.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let odd = parity(i) != parity(j);
                for k in 0..dim {
                    let y = if odd { &twisted[j * dim + k] } else { &other.entries[j * dim + k] };
                    if y.is_zero() {
                        continue;
                    }
                    let idx = i * dim + k;
                    out.entries[idx] = &out.entries[idx] + &(x * y);
                }
            }
        }
        Ok(out)
    }

    /// `X |ψ⟩`
    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        if self.alg != v.alg {
            return Err(Error::AlgebraMismatch { left: self.alg.pairs(), right: v.alg.pairs() });
        }
        if self.modes != v.modes {
            return Err(Error::ModeMismatch { left: self.modes, right: v.modes });
        }
        let dim = self.dimension();
        let mut out = FockVector::zero(self.modes, self.alg);
        for i in 0..dim {
            for j in 0..dim {
                let x = self.get(i, j);
                if x.is_zero() || v.entries[j].is_zero() {
                    continue;
                }
                let term = x * &twist(&v.entries[j], parity(i) != parity(j));
                out.entries[i] = &out.entries[i] + &term;
            }
        }
        Ok(out)
    }

    /// Hermitian adjoint: `(g |i⟩⟨j|)† = |j⟩⟨i| ḡ`, brought back to normal
    /// form.
    pub fn adjoint(&self) -> Self {
        let dim = self.dimension();
        let mut out = Self::zero(self.modes, self.alg);
        for i in 0..dim {
            for j in 0..dim {
                let x = self.get(i, j);
                if !x.is_zero() {
                    out.set(j, i, twist(&x.conjugate(), parity(i) != parity(j)));
                }
            }
        }
        out
    }

    /// `XY + YX`
    pub fn anticommutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.add(&other.mul(self)?)
    }

    /// `XY − YX`
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn trace(&self) -> GrassmannElement {
        (0..self.dimension()).fold(self.alg.zero(), |acc, s| acc + self.get(s, s))
    }

    /// Largest coefficient magnitude of `self − other`.
    pub fn residual(&self, other: &Self) -> f64 {
        if self.check_compatible(other).is_err() {
            return f64::INFINITY;
        }
        self.entries.iter().zip(&other.entries).map(|(a, b)| a.residual(b)).fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(GrassmannElement::max_abs).fold(0.0, f64::max)
    }

    /// Entrywise Berezin integration (differentials sit left of the normal
    /// form, so they act on coefficients only).
    pub fn integrate(&self, measure: &crate::berezin::IntegrationMeasure) -> Result<Self> {
        let entries = self.entries.iter().map(|e| measure.apply(e)).collect::<Result<Vec<_>>>()?;
        Ok(FockOperator { modes: self.modes, alg: self.alg, entries })
    }

    /// Power series `Σ X^k/k!`, truncated once a power vanishes. Terminates
    /// for operators whose terms each carry a Grassmann generator.
    pub fn exp_nilpotent(&self, max_terms: usize) -> Result<Self> {
        let mut sum = Self::identity(self.modes, self.alg);
        let mut power = sum.clone();
        for k in 1..=max_terms {
            power = power.mul(self)?.scale(Complex64::new(1.0 / k as f64, 0.0));
            if power.max_abs() == 0.0 {
                return Ok(sum);
            }
            sum = sum.add(&power)?;
        }
        Err(Error::Domain(alloc::format!("operator series did not terminate within {max_terms} terms")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scalar_alg() -> Algebra {
        Algebra::new(0).unwrap()
    }

    #[test]
    fn single_mode_ladder() {
        let sys = ModeSystem::new(1).unwrap();
        let a = sys.annihilation(0, scalar_alg()).unwrap();
        assert_eq!(a.get(0, 1).scalar_part(), Complex64::new(1.0, 0.0));
        assert!(a.get(1, 0).is_zero() && a.get(0, 0).is_zero() && a.get(1, 1).is_zero());
        let vac = FockVector::vacuum(1, scalar_alg());
        assert_eq!(a.apply(&vac).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn car_for_two_modes() {
        let alg = scalar_alg();
        let sys = ModeSystem::new(2).unwrap();
        let a: Vec<_> = (0..2).map(|k| sys.annihilation(k, alg).unwrap()).collect();
        let ad: Vec<_> = (0..2).map(|k| sys.creation(k, alg).unwrap()).collect();
        let id = FockOperator::identity(2, alg);
        let zero = FockOperator::zero(2, alg);
        assert_eq!(a[0].anticommutator(&ad[0]).unwrap(), id);
        assert_eq!(a[0].anticommutator(&a[1]).unwrap(), zero);
        assert_eq!(a[0].anticommutator(&ad[1]).unwrap(), zero);
    }

    #[test]
    fn mode_checks() {
        assert_eq!(ModeSystem::new(0).unwrap_err(), Error::NoModes);
        assert_eq!(ModeSystem::new(7).unwrap_err(), Error::TooManyModes { requested: 7, cap: 6 });
        let sys = ModeSystem::new(2).unwrap();
        assert_eq!(sys.annihilation(2, scalar_alg()).unwrap_err(), Error::ModeOutOfRange { mode: 2, modes: 2 });
    }

    #[test]
    fn grassmann_anticommutes_with_mode_operator() {
        // y a = -a y as operators
        let alg = Algebra::new(1).unwrap();
        let sys = ModeSystem::new(1).unwrap();
        let a = sys.annihilation(0, alg).unwrap();
        let y = alg.y(0).unwrap();
        let ya = a.left_mul(&y);
        let ay = a.right_mul(&y);
        assert_eq!(ya.add(&ay).unwrap(), FockOperator::zero(1, alg));
        // and the even y*y commutes
        let n = &alg.y_star(0).unwrap() * &y;
        assert_eq!(a.left_mul(&n), a.right_mul(&n));
    }

    #[test]
    fn adjoint_reverses_products() {
        let alg = Algebra::new(2).unwrap();
        let sys = ModeSystem::new(2).unwrap();
        let x = sys.creation(0, alg).unwrap().right_mul(&alg.y(1).unwrap());
        let z = sys.annihilation(1, alg).unwrap().left_mul(&alg.y_star(0).unwrap());
        let lhs = x.mul(&z).unwrap().adjoint();
        let rhs = z.adjoint().mul(&x.adjoint()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(x.adjoint().adjoint(), x);
    }
}
