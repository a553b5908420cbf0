//! U(1) rotations, fermion-parity superselection and number/phase
//! fluctuations.

use num_complex::Complex64;

use super::{coherent_state, CoherentLabel, FockOperator, FockVector, ModeSystem};
use crate::grassmann::{substitute_bilinears, Algebra, GrassmannElement, Occupancy};
use crate::{Error, Result};

/// `e^{iθN}` as a diagonal operator.
pub fn u1_operator(modes: usize, alg: Algebra, theta: f64) -> FockOperator {
    FockOperator::diagonal(modes, alg, |s| Complex64::from_polar(1.0, theta * s.count_ones() as f64))
}

/// `e^{iθN}|ψ⟩`
pub fn u1_rotate(state: &FockVector, theta: f64) -> FockVector {
    state.map(|s, e| e.scale(Complex64::from_polar(1.0, theta * s.count_ones() as f64)))
}

/// True when the support lies entirely on even or entirely on odd particle
/// numbers. Only defined for numeric amplitudes.
pub fn is_physical(state: &FockVector) -> Result<bool> {
    if !state.entries().iter().all(GrassmannElement::is_scalar) {
        return Err(Error::NotApplicable);
    }
    let mut parities = state
        .entries()
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(s, _)| s.count_ones() % 2);
    Ok(match parities.next() {
        None => true,
        Some(first) => parities.all(|p| p == first),
    })
}

/// `⟨N⟩` and `⟨N²⟩ − ⟨N⟩²` in a coherent state.
#[derive(Debug, Clone, PartialEq)]
pub struct NumberMoments {
    pub mean: GrassmannElement,
    pub second: GrassmannElement,
    pub variance: GrassmannElement,
}

pub fn number_moments(label: &CoherentLabel) -> Result<NumberMoments> {
    let sys = ModeSystem::new(label.modes())?;
    let alg = label.algebra();
    let number = sys.number_operator(alg);
    let ket = coherent_state(label)?;
    let n_ket = number.apply(&ket)?;
    let mean = ket.inner(&n_ket)?;
    let second = ket.inner(&number.apply(&n_ket)?)?;
    let variance = &second - &(&mean * &mean);
    Ok(NumberMoments { mean, second, variance })
}

/// `1 / (4 Σ_k N_k)`
pub fn phase_variance(occupancy: &Occupancy) -> Result<f64> {
    let pairs = occupancy.keys().next_back().map_or(0, |&m| m + 1);
    let alg = Algebra::new(pairs)?;
    let total = occupancy
        .keys()
        .try_fold(alg.zero(), |acc, &k| Ok::<_, Error>(acc + alg.y_star(k)? * alg.y(k)?))?;
    phase_variance_of(&total, occupancy)
}

/// `1 / (4⟨ΔN²⟩)` for a symbolic number variance. The nilpotent element has
/// no reciprocal, so the bilinears are replaced by occupancies first.
pub fn phase_variance_of(number_variance: &GrassmannElement, occupancy: &Occupancy) -> Result<f64> {
    let n = substitute_bilinears(number_variance, occupancy)?;
    if n.im.abs() > crate::ZERO_THRESHOLD || !(n.re > 0.0) {
        return Err(Error::Domain(alloc::format!("number variance {n} must be a positive real")));
    }
    Ok(1.0 / (4.0 * n.re))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn physicality_of_simple_states() {
        let alg = Algebra::new(0).unwrap();
        let r = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let z = Complex64::new(0.0, 0.0);
        // two modes: |0⟩ + |11⟩ is even
        let even = FockVector::from_amplitudes(2, alg, &[r, z, z, r]).unwrap();
        assert!(is_physical(&even).unwrap());
        let mixed = FockVector::from_amplitudes(1, alg, &[r, r]).unwrap();
        assert!(!is_physical(&mixed).unwrap());
        assert!(is_physical(&FockVector::vacuum(3, alg)).unwrap());
        let coherent = coherent_state(&CoherentLabel::standard(1).unwrap()).unwrap();
        assert_eq!(is_physical(&coherent).unwrap_err(), Error::NotApplicable);
    }

    #[test]
    fn rotation_by_zero_is_identity() {
        let ket = coherent_state(&CoherentLabel::standard(2).unwrap()).unwrap();
        assert_eq!(u1_rotate(&ket, 0.0), ket);
    }

    #[test]
    fn phase_variance_values() {
        assert_eq!(phase_variance(&Occupancy::from([(0, 100.0)])).unwrap(), 0.0025);
        assert_eq!(phase_variance(&Occupancy::from([(0, 1.0)])).unwrap(), 0.25);
        assert_eq!(phase_variance(&Occupancy::from([(0, 50.0), (1, 50.0)])).unwrap(), 0.0025);
        assert!(matches!(phase_variance(&Occupancy::from([(0, 0.0)])), Err(Error::Domain(_))));
        assert!(matches!(phase_variance(&Occupancy::new()), Err(Error::Domain(_))));
    }

    #[test]
    fn single_mode_fluctuation_equals_mean() {
        let label = CoherentLabel::standard(1).unwrap();
        let m = number_moments(&label).unwrap();
        assert_eq!(m.variance, label.occupation());
        assert_eq!(m.mean, label.occupation());
    }

    #[test]
    fn zero_label_has_no_fluctuation() {
        let m = number_moments(&CoherentLabel::standard(2).unwrap().scaled(0.0)).unwrap();
        assert!(m.variance.is_zero() && m.mean.is_zero());
    }
}
