//! Canonical text form: `c · y1 y1* y2 + …`.
//!
//! Terms appear in ascending mask order and are joined by ` + `. A real
//! coefficient prints as a plain decimal, a complex one as `(re+imi)`; the
//! scalar term prints its coefficient alone and the zero element prints `0`.
//! Coefficients use shortest round-trip float formatting, so parsing the
//! output reproduces the element bit for bit, except that a zero imaginary
//! part always reads back as `+0`.

use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use super::{Algebra, GeneratorId, GrassmannElement, Monomial};
use crate::{Error, Result};

struct Coefficient(Complex64);

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Complex64 { re, im } = self.0;
        if im == 0.0 {
            write!(f, "{re}")
        } else if im.is_sign_negative() {
            write!(f, "({re}-{}i)", -im)
        } else {
            write!(f, "({re}+{im}i)")
        }
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if *m == Monomial::ONE {
                write!(f, "{}", Coefficient(*c))?;
            } else {
                write!(f, "{} · {}", Coefficient(*c), m)?;
            }
        }
        Ok(())
    }
}

fn parse_error(fragment: &str, reason: &'static str) -> Error {
    Error::Parse { fragment: fragment.into(), reason }
}

fn parse_real(s: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| parse_error(s, "not a number"))
}

fn parse_coefficient(s: &str) -> Result<Complex64> {
    let s = s.trim();
    let Some(inner) = s.strip_prefix('(') else {
        return Ok(Complex64::new(parse_real(s)?, 0.0));
    };
    let inner = inner
        .strip_suffix(')')
        .and_then(|x| x.strip_suffix('i'))
        .ok_or_else(|| parse_error(s, "complex coefficient must look like (a+bi)"))?;
    let bytes = inner.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
        .ok_or_else(|| parse_error(s, "missing imaginary part"))?;
    let re = parse_real(&inner[..split])?;
    let im = parse_real(&inner[split + 1..])?;
    Ok(Complex64::new(re, if bytes[split] == b'-' { -im } else { im }))
}

fn parse_generator(token: &str) -> Result<GeneratorId> {
    let body = token.strip_prefix('y').ok_or_else(|| parse_error(token, "generator must start with y"))?;
    let (digits, conjugated) = match body.strip_suffix('*') {
        Some(d) => (d, true),
        None => (body, false),
    };
    let index: usize = digits.parse().map_err(|_| parse_error(token, "bad generator index"))?;
    if index == 0 {
        return Err(parse_error(token, "generator indices start at 1"));
    }
    Ok(GeneratorId { mode: index - 1, conjugated })
}

impl Algebra {
    /// Parses the canonical text form. Generators inside a term may appear in
    /// any order; they are multiplied left to right with the usual signs.
    pub fn parse(self, s: &str) -> Result<GrassmannElement> {
        let s = s.trim();
        if s == "0" {
            return Ok(self.zero());
        }
        let mut terms: Vec<(Monomial, Complex64)> = Vec::new();
        for term in s.split(" + ") {
            let (coef, gens) = match term.split_once('·') {
                Some((c, g)) => (parse_coefficient(c)?, g),
                None if term.trim_start().starts_with('y') => (Complex64::new(1.0, 0.0), term),
                None => (parse_coefficient(term)?, ""),
            };
            let mut sign = 1i8;
            let mut mono = Monomial::ONE;
            for token in gens.split_whitespace() {
                let g = parse_generator(token)?;
                self.check_mode(g.mode)?;
                match mono.mul(Monomial::from_generator(g)) {
                    Some((s, m)) => {
                        sign *= s;
                        mono = m;
                    }
                    None => {
                        sign = 0;
                        break;
                    }
                }
            }
            if sign != 0 {
                terms.push((mono, coef * f64::from(sign)));
            }
        }
        Ok(GrassmannElement::from_terms(self, terms))
    }
}
