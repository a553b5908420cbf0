//! Thermodynamic-limit substitution `y*_k y_k → N_k`.

use alloc::collections::BTreeMap;
use alloc::string::ToString;

use num_complex::Complex64;

use super::{GrassmannElement, Monomial};
use crate::{Error, Result};

/// Mean occupancy per mode (0-based mode index).
pub type Occupancy = BTreeMap<usize, f64>;

/// Replaces every bilinear `y*_k y_k` by `occupancy[k]` and sums to a number.
///
/// Each monomial must consist of complete pairs only. A canonical pair is
/// stored as `y_k y*_k = −y*_k y_k`, and pairs are even so they commute with
/// each other; a monomial with `p` pairs therefore carries `(−1)^p`.
pub fn substitute_bilinears(a: &GrassmannElement, occupancy: &Occupancy) -> Result<Complex64> {
    let mut total = Complex64::new(0.0, 0.0);
    for &(m, c) in a.terms() {
        let plain = m.0 & 0x5555_5555_5555_5555;
        if (m.0 >> 1) & 0x5555_5555_5555_5555 != plain {
            return Err(Error::NotPaired(m.to_string()));
        }
        let mut value = c;
        for g in Monomial(plain).generators() {
            let n = *occupancy.get(&g.mode).ok_or(Error::MissingOccupancy(g.mode))?;
            if !(n >= 0.0) {
                return Err(Error::Domain(alloc::format!("occupancy of mode {} is {n}", g.mode)));
            }
            value *= -n;
        }
        total += value;
    }
    Ok(total)
}
