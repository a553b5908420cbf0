//! Number-conserving two-body Hamiltonian on a momentum-labelled mode set.

use num_complex::Complex64;

use super::{FockOperator, ModeSystem};
use crate::grassmann::Algebra;
use crate::{Error, Result};

/// `Σ_k E_k a†_k a_k + (V₀/2V) Σ a†_{p1} a†_{p2} a_{p3} a_{p4}` over all mode
/// quadruples with `p1 + p2 = p3 + p4` (momentum tags of the system).
pub fn number_conserving_hamiltonian(
    system: &ModeSystem,
    kinetic: &[f64],
    v0_over_volume: f64,
    alg: Algebra,
) -> Result<FockOperator> {
    let n = system.n_modes();
    if kinetic.len() != n {
        return Err(Error::Domain(alloc::format!("{} kinetic energies for {n} modes", kinetic.len())));
    }
    let a: alloc::vec::Vec<FockOperator> = (0..n).map(|k| system.annihilation(k, alg)).collect::<Result<_>>()?;
    let ad: alloc::vec::Vec<FockOperator> = a.iter().map(FockOperator::adjoint).collect();
    let mut h = FockOperator::zero(n, alg);
    for k in 0..n {
        h = h.add(&ad[k].mul(&a[k])?.scale(Complex64::new(kinetic[k], 0.0)))?;
    }
    let labels = system.labels();
    let coupling = Complex64::new(v0_over_volume / 2.0, 0.0);
    for p1 in 0..n {
        for p2 in 0..n {
            for p3 in 0..n {
                for p4 in 0..n {
                    if labels[p1] + labels[p2] != labels[p3] + labels[p4] {
                        continue;
                    }
                    let term = ad[p1].mul(&ad[p2])?.mul(&a[p3])?.mul(&a[p4])?;
                    h = h.add(&term.scale(coupling))?;
                }
            }
        }
    }
    Ok(h)
}
