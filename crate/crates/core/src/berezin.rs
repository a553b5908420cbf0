//! Berezin differentiation and integration.
//!
//! The derivative is a left derivative: the target generator is anticommuted
//! to the front of each monomial and removed. Integration over a single
//! generator is the same map (`∫dy 1 = 0`, `∫dy y = 1`). A pair measure is
//! `d²y_k = dy*_k dy_k`, so `dy_k` acts first.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::grassmann::{GeneratorId, GrassmannElement, Monomial};
use crate::{Error, Result};

pub fn left_derivative(a: &GrassmannElement, g: GeneratorId) -> GrassmannElement {
    let bit = 1u64 << g.rank();
    let below = bit - 1;
    let terms = a.terms().iter().filter(|(m, _)| m.0 & bit != 0).map(|&(m, c)| {
        let rest = Monomial(m.0 & !bit);
        if (m.0 & below).count_ones() % 2 == 1 {
            (rest, -c)
        } else {
            (rest, c)
        }
    });
    GrassmannElement::from_terms(a.algebra(), terms)
}

/// `∫ dg a`
pub fn integrate(a: &GrassmannElement, g: GeneratorId) -> GrassmannElement {
    left_derivative(a, g)
}

/// `∫ dg_1 dg_2 … dg_k a`: the rightmost differential acts first.
pub fn integrate_sequence(a: &GrassmannElement, differentials: &[GeneratorId]) -> GrassmannElement {
    differentials.iter().rev().fold(a.clone(), |acc, &g| integrate(&acc, g))
}

/// `∫ d²y_mode a = ∫ dy*_mode dy_mode a`
pub fn integrate_pair(a: &GrassmannElement, mode: usize) -> GrassmannElement {
    integrate(&integrate(a, GeneratorId::plain(mode)), GeneratorId::conj(mode))
}

/// Multi-mode measure `∏_k dy*_k dy_k` over the listed modes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegrationMeasure {
    modes: Vec<usize>,
}

impl IntegrationMeasure {
    pub fn new(modes: Vec<usize>) -> Self {
        IntegrationMeasure { modes }
    }

    pub fn range(modes: core::ops::Range<usize>) -> Self {
        IntegrationMeasure { modes: modes.collect() }
    }

    pub fn modes(&self) -> &[usize] {
        &self.modes
    }

    /// Differentials in written order: `dy*_{m1} dy_{m1} dy*_{m2} dy_{m2} …`.
    pub fn differentials(&self) -> Vec<GeneratorId> {
        self.modes.iter().flat_map(|&m| [GeneratorId::conj(m), GeneratorId::plain(m)]).collect()
    }

    /// Pair integrals are even maps and commute, so modes are applied in
    /// ascending listed order.
    pub fn apply(&self, a: &GrassmannElement) -> Result<GrassmannElement> {
        let alg = a.algebra();
        self.modes.iter().try_fold(a.clone(), |acc, &m| {
            alg.check_mode(m)?;
            Ok::<_, Error>(integrate_pair(&acc, m))
        })
    }
}

/// Integrates over every pair of the element's algebra.
pub fn integrate_all(a: &GrassmannElement) -> Complex64 {
    let out = (0..a.algebra().pairs()).fold(a.clone(), |acc, m| integrate_pair(&acc, m));
    assert!(out.is_scalar(), "full Berezin integral left a nonscalar residue: {out}");
    out.scalar_part()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::Algebra;

    #[test]
    fn derivative_examples() {
        let alg = Algebra::new(2).unwrap();
        let (y1, y2) = (alg.y(0).unwrap(), alg.y(1).unwrap());
        let d = GeneratorId::plain(0);
        assert_eq!(left_derivative(&y1, d), alg.one());
        assert_eq!(left_derivative(&(&y2 * &y1), d), -&y2);
        assert!(left_derivative(&y2, d).is_zero());
    }

    #[test]
    fn integral_rules() {
        let alg = Algebra::new(2).unwrap();
        let (y1, y2) = (alg.y(0).unwrap(), alg.y(1).unwrap());
        let d = GeneratorId::plain(0);
        assert!(integrate(&alg.one(), d).is_zero());
        assert_eq!(integrate(&y1, d), alg.one());
        assert_eq!(integrate(&(&y1 * &y2), d), y2);
        assert!(integrate(&alg.y_star(0).unwrap(), d).is_zero());
        assert_eq!(integrate(&alg.y_star(0).unwrap(), GeneratorId::conj(0)), alg.one());
    }

    #[test]
    fn pair_integrals() {
        let alg = Algebra::new(1).unwrap();
        let (y, ys) = (alg.y(0).unwrap(), alg.y_star(0).unwrap());
        let gauss = (-(&ys * &y)).exp().unwrap();
        assert_eq!(integrate_pair(&gauss, 0), alg.one());
        assert!(integrate_pair(&alg.one(), 0).is_zero());
        // ∫dy* ∫dy (y y*) = ∫dy* y* = 1
        assert_eq!(integrate_pair(&(&y * &ys), 0), alg.one());
        assert_eq!(integrate_pair(&(&ys * &y), 0), -alg.one());
    }

    #[test]
    fn full_integrals() {
        let alg = Algebra::new(2).unwrap();
        let n = |k| &alg.y_star(k).unwrap() * &alg.y(k).unwrap();
        let gauss = (-(n(0) + n(1))).exp().unwrap();
        assert_eq!(integrate_all(&gauss), Complex64::new(1.0, 0.0));
        assert_eq!(integrate_all(&alg.one()), Complex64::new(0.0, 0.0));
        // each y*y integrates to -1
        let c = Complex64::new(0.0, 2.5);
        assert_eq!(integrate_all(&(&n(0) * &n(1)).scale(c)), c);
    }

    #[test]
    fn measure_lists_conjugated_first() {
        let m = IntegrationMeasure::range(0..2);
        assert_eq!(
            m.differentials(),
            [GeneratorId::conj(0), GeneratorId::plain(0), GeneratorId::conj(1), GeneratorId::plain(1)]
        );
        let alg = Algebra::new(1).unwrap();
        assert!(IntegrationMeasure::new(alloc::vec![3]).apply(&alg.one()).is_err());
    }
}
