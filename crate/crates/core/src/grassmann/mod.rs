//! Complex Grassmann algebra over `n` pairs of generators.
//!
//! Generators are ranked globally as `rank = 2·mode + conjugated`, so the
//! canonical order is `y_1 < y*_1 < y_2 < y*_2 < …`. A monomial is a bitmask
//! over ranks; it is always understood as the product of its generators in
//! ascending rank order. Nilpotency is structural: a mask cannot hold a
//! generator twice.

mod sign;
mod substitute;
mod text;

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::{Error, Result, ZERO_THRESHOLD};

pub use sign::{conjugation_sign, merge_sign};
pub use substitute::{substitute_bilinears, Occupancy};

/// Largest supported number of generator pairs (a monomial is a `u64` mask).
pub const MAX_PAIRS: usize = 32;

/// One of `y_i` or `y*_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId {
    pub mode: usize,
    pub conjugated: bool,
}

impl GeneratorId {
    pub const fn plain(mode: usize) -> Self {
        GeneratorId { mode, conjugated: false }
    }

    pub const fn conj(mode: usize) -> Self {
        GeneratorId { mode, conjugated: true }
    }

    pub const fn rank(self) -> u32 {
        (2 * self.mode + self.conjugated as usize) as u32
    }

    pub const fn from_rank(rank: u32) -> Self {
        GeneratorId { mode: (rank / 2) as usize, conjugated: rank % 2 == 1 }
    }

    /// `y_i ↔ y*_i`.
    pub const fn star(self) -> Self {
        GeneratorId { mode: self.mode, conjugated: !self.conjugated }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conjugated {
            write!(f, "y{}*", self.mode + 1)
        } else {
            write!(f, "y{}", self.mode + 1)
        }
    }
}

/// Canonically sorted product of distinct generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_generator(g: GeneratorId) -> Self {
        Monomial(1 << g.rank())
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_odd(self) -> bool {
        self.degree() % 2 == 1
    }

    pub fn contains(self, g: GeneratorId) -> bool {
        self.0 >> g.rank() & 1 == 1
    }

    /// Generators in ascending rank order.
    pub fn generators(self) -> impl Iterator<Item = GeneratorId> {
        let mut rest = self.0;
        core::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let r = rest.trailing_zeros();
            rest &= rest - 1;
            Some(GeneratorId::from_rank(r))
        })
    }

    /// Product `self · other` as `(sign, monomial)`, or `None` when a generator
    /// repeats.
    pub fn mul(self, other: Monomial) -> Option<(i8, Monomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        Some((merge_sign(self.0, other.0), Monomial(self.0 | other.0)))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        for (i, g) in self.generators().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Degree structure of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// The ambient algebra: how many generator pairs exist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Algebra {
    pairs: u8,
}

impl Algebra {
    pub fn new(pairs: usize) -> Result<Self> {
        if pairs > MAX_PAIRS {
            return Err(Error::TooManyModes { requested: pairs, cap: MAX_PAIRS });
        }
        Ok(Algebra { pairs: pairs as u8 })
    }

    pub fn pairs(self) -> usize {
        self.pairs as usize
    }

    pub fn generator_count(self) -> usize {
        2 * self.pairs()
    }

    pub fn zero(self) -> GrassmannElement {
        GrassmannElement { pairs: self.pairs, terms: Vec::new() }
    }

    pub fn one(self) -> GrassmannElement {
        self.scalar(Complex64::new(1.0, 0.0))
    }

    pub fn scalar(self, c: Complex64) -> GrassmannElement {
        self.term(Monomial::ONE, c)
    }

    pub fn generator(self, g: GeneratorId) -> Result<GrassmannElement> {
        self.check_mode(g.mode)?;
        Ok(self.term(Monomial::from_generator(g), Complex64::new(1.0, 0.0)))
    }

    /// `y_mode`
    pub fn y(self, mode: usize) -> Result<GrassmannElement> {
        self.generator(GeneratorId::plain(mode))
    }

    /// `y*_mode`
    pub fn y_star(self, mode: usize) -> Result<GrassmannElement> {
        self.generator(GeneratorId::conj(mode))
    }

    /// Single term `c · monomial`; the monomial must fit the algebra.
    pub fn term(self, m: Monomial, c: Complex64) -> GrassmannElement {
        debug_assert!(self.pairs() == MAX_PAIRS || m.0 >> self.generator_count() == 0);
        let mut e = self.zero();
        if c.norm() >= ZERO_THRESHOLD {
            e.terms.push((m, c));
        }
        e
    }

    pub fn check_mode(self, mode: usize) -> Result<()> {
        if mode < self.pairs() {
            Ok(())
        } else {
            Err(Error::ModeOutOfRange { mode, modes: self.pairs() })
        }
    }
}

/// Sparse complex combination of canonical monomials.
///
/// Terms are kept sorted by mask value with no coefficient below
/// [`ZERO_THRESHOLD`]. Equality compares coefficients within the threshold.
#[derive(Debug, Clone)]
pub struct GrassmannElement {
    pairs: u8,
    terms: Vec<(Monomial, Complex64)>,
}

impl GrassmannElement {
    pub fn algebra(&self) -> Algebra {
        Algebra { pairs: self.pairs }
    }

    /// Builds from arbitrary `(monomial, coefficient)` terms, merging repeats.
    pub fn from_terms(alg: Algebra, terms: impl IntoIterator<Item = (Monomial, Complex64)>) -> Self {
        let mut e = GrassmannElement { pairs: alg.pairs, terms: terms.into_iter().collect() };
        e.normalize();
        e
    }

    pub fn terms(&self) -> &[(Monomial, Complex64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: Monomial) -> Complex64 {
        match self.terms.binary_search_by_key(&m, |t| t.0) {
            Ok(i) => self.terms[i].1,
            Err(_) => Complex64::new(0.0, 0.0),
        }
    }

    pub fn scalar_part(&self) -> Complex64 {
        self.coefficient(Monomial::ONE)
    }

    /// True when the only term (if any) is the scalar one.
    pub fn is_scalar(&self) -> bool {
        self.terms.iter().all(|(m, _)| *m == Monomial::ONE)
    }

    pub fn parity(&self) -> Parity {
        let odd = self.terms.iter().filter(|(m, _)| m.is_odd()).count();
        if odd == 0 {
            Parity::Even
        } else if odd == self.terms.len() {
            Parity::Odd
        } else {
            Parity::Mixed
        }
    }

    pub fn even_part(&self) -> Self {
        self.filter(|m| !m.is_odd())
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|m| m.is_odd())
    }

    /// Grade involution: odd terms change sign. This is the sign picked up
    /// when the element moves past an odd operator.
    pub fn grade_involution(&self) -> Self {
        let mut out = self.clone();
        for (m, c) in &mut out.terms {
            if m.is_odd() {
                *c = -*c;
            }
        }
        out
    }

    fn filter(&self, keep: impl Fn(Monomial) -> bool) -> Self {
        GrassmannElement {
            pairs: self.pairs,
            terms: self.terms.iter().copied().filter(|(m, _)| keep(*m)).collect(),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for (_, v) in &mut out.terms {
            *v *= c;
        }
        out.prune();
        out
    }

    pub fn scale_real(&self, x: f64) -> Self {
        self.scale(Complex64::new(x, 0.0))
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.merge(other, 1.0))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.merge(other, -1.0))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.product(other))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.pairs == other.pairs {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch { left: self.pairs(), right: other.pairs() })
        }
    }

    fn pairs(&self) -> usize {
        self.pairs as usize
    }

    fn merge(&self, other: &Self, sign: f64) -> Self {
        let (a, b) = (&self.terms, &other.terms);
        let mut terms = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                terms.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                terms.push((b[j].0, b[j].1 * sign));
                j += 1;
            } else {
                let c = a[i].1 + b[j].1 * sign;
                if c.norm() >= ZERO_THRESHOLD {
                    terms.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        GrassmannElement { pairs: self.pairs, terms }
    }

    fn product(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return self.algebra().zero();
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for &(ma, ca) in &self.terms {
            for &(mb, cb) in &other.terms {
                if let Some((s, m)) = ma.mul(mb) {
                    let c = ca * cb;
                    terms.push((m, if s < 0 { -c } else { c }));
                }
            }
        }
        let mut out = GrassmannElement { pairs: self.pairs, terms };
        out.normalize();
        out
    }

    /// Sorts, merges repeated monomials and prunes small coefficients.
    fn normalize(&mut self) {
        self.terms.sort_unstable_by_key(|t| t.0);
        let mut merged: Vec<(Monomial, Complex64)> = Vec::with_capacity(self.terms.len());
        for &(m, c) in &self.terms {
            match merged.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => merged.push((m, c)),
            }
        }
        merged.retain(|t| t.1.norm() >= ZERO_THRESHOLD);
        self.terms = merged;
    }

    fn prune(&mut self) {
        self.terms.retain(|t| t.1.norm() >= ZERO_THRESHOLD);
    }

    /// Hermitian conjugation: generators are starred, their order reversed,
    /// then restored to canonical order; coefficients are complex-conjugated.
    pub fn conjugate(&self) -> Self {
        let terms = self.terms.iter().map(|&(m, c)| {
            let starred = Monomial(swap_pair_bits(m.0));
            let c = c.conj();
            (starred, if conjugation_sign(m.0) < 0 { -c } else { c })
        });
        GrassmannElement::from_terms(self.algebra(), terms)
    }

    /// `Σ a^k / k!` for a purely nilpotent argument.
    pub fn exp(&self) -> Result<Self> {
        let s = self.scalar_part();
        if s.norm() >= ZERO_THRESHOLD {
            return Err(Error::ScalarPartInExp(s));
        }
        let mut sum = self.algebra().one();
        let mut power = self.algebra().one();
        let mut k = 1.0;
        loop {
            power = power.product(self).scale_real(1.0 / k);
            if power.is_zero() {
                break;
            }
            sum = sum.merge(&power, 1.0);
            k += 1.0;
        }
        Ok(sum)
    }

    /// Largest coefficient magnitude of `self − other`.
    pub fn residual(&self, other: &Self) -> f64 {
        let diff = if self.pairs == other.pairs {
            self.merge(other, -1.0)
        } else {
            return f64::INFINITY;
        };
        diff.max_abs()
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.iter().map(|t| t.1.norm()).fold(0.0, f64::max)
    }

    /// Same algebra with the given number of pairs; fails if a term uses a
    /// generator outside the new range.
    pub fn embed(&self, alg: Algebra) -> Result<Self> {
        let limit = alg.generator_count();
        if limit < 64 {
            if let Some((m, _)) = self.terms.iter().find(|(m, _)| m.0 >> limit != 0) {
                let top = 63 - m.0.leading_zeros();
                return Err(Error::ModeOutOfRange { mode: top as usize / 2, modes: alg.pairs() });
            }
        }
        Ok(GrassmannElement { pairs: alg.pairs, terms: self.terms.clone() })
    }
}

fn swap_pair_bits(mask: u64) -> u64 {
    const EVEN: u64 = 0x5555_5555_5555_5555;
    ((mask & EVEN) << 1) | ((mask >> 1) & EVEN)
}

impl PartialEq for GrassmannElement {
    fn eq(&self, other: &Self) -> bool {
        self.residual(other) <= ZERO_THRESHOLD
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&GrassmannElement> for &GrassmannElement {
            type Output = GrassmannElement;

            /// Panics when the operands come from different algebras.
            fn $method(self, rhs: &GrassmannElement) -> GrassmannElement {
                self.$checked(rhs).expect("Grassmann operands from different algebras")
            }
        }

        impl $trait<GrassmannElement> for GrassmannElement {
            type Output = GrassmannElement;

            fn $method(self, rhs: GrassmannElement) -> GrassmannElement {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&GrassmannElement> for GrassmannElement {
            type Output = GrassmannElement;

            fn $method(self, rhs: &GrassmannElement) -> GrassmannElement {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&GrassmannElement> for GrassmannElement {
    fn add_assign(&mut self, rhs: &GrassmannElement) {
        *self = &*self + rhs;
    }
}

impl Mul<Complex64> for &GrassmannElement {
    type Output = GrassmannElement;

    fn mul(self, rhs: Complex64) -> GrassmannElement {
        self.scale(rhs)
    }
}

impl Mul<Complex64> for GrassmannElement {
    type Output = GrassmannElement;

    fn mul(self, rhs: Complex64) -> GrassmannElement {
        self.scale(rhs)
    }
}

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;

    fn neg(self) -> GrassmannElement {
        self.scale_real(-1.0)
    }
}

impl Neg for GrassmannElement {
    type Output = GrassmannElement;

    fn neg(self) -> GrassmannElement {
        self.scale_real(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn generator_is_single_unit_term() {
        let alg = Algebra::new(2).unwrap();
        let y1 = alg.y(0).unwrap();
        assert_eq!(y1.terms(), &[(Monomial(0b01), c(1.0))]);
        assert_eq!(alg.y(2).unwrap_err(), Error::ModeOutOfRange { mode: 2, modes: 2 });
    }

    #[test]
    fn square_of_generator_vanishes() {
        let alg = Algebra::new(2).unwrap();
        let y1 = alg.y(0).unwrap();
        assert!((&y1 * &y1).is_zero());
    }

    #[test]
    fn transposed_product_flips_sign() {
        let alg = Algebra::new(2).unwrap();
        let (y1, y2) = (alg.y(0).unwrap(), alg.y(1).unwrap());
        let y1y2 = &y1 * &y2;
        assert_eq!(y1y2.terms(), &[(Monomial(0b0101), c(1.0))]);
        assert_eq!(&y2 * &y1, -&y1y2);
    }

    #[test]
    fn starred_times_plain_same_mode() {
        // y*_1 y_1 = -(y_1 y*_1) in canonical order
        let alg = Algebra::new(1).unwrap();
        let p = &alg.y_star(0).unwrap() * &alg.y(0).unwrap();
        assert_eq!(p.terms(), &[(Monomial(0b11), c(-1.0))]);
    }

    #[test]
    fn one_plus_y_squared() {
        let alg = Algebra::new(1).unwrap();
        let a = alg.one() + alg.y(0).unwrap();
        let expected = alg.one() + alg.y(0).unwrap().scale_real(2.0);
        assert_eq!(&a * &a, expected);
    }

    #[test]
    fn mismatched_algebras_are_rejected() {
        let a = Algebra::new(1).unwrap().y(0).unwrap();
        let b = Algebra::new(2).unwrap().y(0).unwrap();
        assert_eq!(a.checked_mul(&b).unwrap_err(), Error::AlgebraMismatch { left: 1, right: 2 });
    }

    #[test]
    fn conjugation_examples() {
        let alg = Algebra::new(2).unwrap();
        let (y1, y2) = (alg.y(0).unwrap(), alg.y(1).unwrap());
        let (s1, s2) = (alg.y_star(0).unwrap(), alg.y_star(1).unwrap());
        assert_eq!(y1.conjugate(), s1);
        assert_eq!((&y1 * &y2).conjugate(), -(&s1 * &s2));
        let iy = y1.scale(Complex64::new(0.0, 1.0));
        assert_eq!(iy.conjugate(), s1.scale(Complex64::new(0.0, -1.0)));
        // y*y is self-conjugate
        let n1 = &s1 * &y1;
        assert_eq!(n1.conjugate(), n1);
    }

    #[test]
    fn exp_examples() {
        let alg = Algebra::new(2).unwrap();
        let y1 = alg.y(0).unwrap();
        assert_eq!(y1.exp().unwrap(), alg.one() + &y1);

        let n1 = &alg.y_star(0).unwrap() * &y1;
        let n2 = &alg.y_star(1).unwrap() * &alg.y(1).unwrap();
        assert_eq!(n1.exp().unwrap(), alg.one() + &n1);
        let both = (&n1 + &n2).exp().unwrap();
        assert_eq!(both, alg.one() + &n1 + &n2 + &n1 * &n2);

        let err = (alg.one() + &y1).exp().unwrap_err();
        assert!(matches!(err, Error::ScalarPartInExp(_)));
    }

    #[test]
    fn parity_examples() {
        let alg = Algebra::new(1).unwrap();
        let y = alg.y(0).unwrap();
        let n = &alg.y_star(0).unwrap() * &y;
        assert_eq!((alg.one() + &n).parity(), Parity::Even);
        assert_eq!(y.parity(), Parity::Odd);
        assert_eq!((alg.one() + &y).parity(), Parity::Mixed);
    }

    #[test]
    fn tiny_coefficients_are_pruned() {
        let alg = Algebra::new(1).unwrap();
        let e = alg.y(0).unwrap().scale_real(1e-13);
        assert!(e.is_zero());
    }
}
