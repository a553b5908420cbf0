//! Identity suite run by `grassfock verify`.
//!
//! Every check computes the largest coefficient of `lhs − rhs` over all its
//! instances. Symbolic identities pass at [`ZERO_THRESHOLD`]; the two checks
//! that substitute occupancies compare relative to the value.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::berezin::{integrate_all, integrate_pair, integrate_sequence, left_derivative};
use crate::bogoliubov::{
    anomalous_coefficient, car_residual, check_canonicity, decompose_pair_hamiltonian, diagonalize,
    quasiparticle_vacuum_check, BogoliubovTransform, MacroscopicMode, PairTransform, THETA_REPRESENTATIVES,
};
use crate::fock::{
    coherent_state, displacement, displacement_exponential, number_conserving_hamiltonian, number_moments,
    overlap, phase_variance, resolution_of_identity, u1_operator, u1_rotate, CoherentLabel, FockOperator,
    FockVector, ModeSystem, MODE_CAP,
};
use crate::grassmann::{substitute_bilinears, Algebra, GeneratorId, GrassmannElement, Monomial, Occupancy};
use crate::physics::PhysicalParams;
use crate::{Error, Result, ZERO_THRESHOLD};

/// Relative tolerance of the occupancy-substitution checks.
pub const RELATIVE_TOLERANCE: f64 = 1e-12;

/// Random occupancy maps drawn by the fluctuation check.
pub const OCCUPANCY_SAMPLES: usize = 100;

/// Random triples drawn by the associativity check.
pub const ASSOCIATIVITY_SAMPLES: usize = 200;

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub identity: &'static str,
    /// The identity written out.
    pub eq: &'static str,
    pub modes: usize,
    pub pass: bool,
    pub max_residual: f64,
    /// Error raised while evaluating, if any.
    pub error: Option<String>,
}

struct Suite {
    modes: usize,
    checks: Vec<IdentityCheck>,
}

impl Suite {
    fn record(&mut self, identity: &'static str, eq: &'static str, tolerance: f64, f: impl FnOnce() -> Result<f64>) {
        self.record_at(identity, eq, self.modes, tolerance, f)
    }

    fn record_at(
        &mut self,
        identity: &'static str,
        eq: &'static str,
        modes: usize,
        tolerance: f64,
        f: impl FnOnce() -> Result<f64>,
    ) {
        let (max_residual, error) = match f() {
            Ok(r) => (r, None),
            Err(e) => (f64::INFINITY, Some(format!("{e}"))),
        };
        // NaN fails as well
        let pass = max_residual <= tolerance;
        self.checks.push(IdentityCheck { identity, eq, modes, pass, max_residual, error });
    }
}

/// Runs every identity at `modes` modes. `seed` drives the randomized
/// associativity, antihomomorphism and occupancy samples.
pub fn run_suite(modes: usize, seed: u64) -> Result<Vec<IdentityCheck>> {
    if modes == 0 {
        return Err(Error::NoModes);
    }
    if modes > MODE_CAP {
        return Err(Error::TooManyModes { requested: modes, cap: MODE_CAP });
    }
    let sys = ModeSystem::new(modes)?;
    let alg = Algebra::new(modes)?;
    let scalar = Algebra::new(0)?;
    let label = CoherentLabel::standard(modes)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = Suite { modes, checks: Vec::new() };
    let tol = ZERO_THRESHOLD;

    // Mode operators
    s.record("car_mixed", "{a_i, a†_j} = δ_ij", tol, || {
        let id = FockOperator::identity(modes, scalar);
        let zero = FockOperator::zero(modes, scalar);
        max_over_pairs(modes, |i, j| {
            let ac = sys.annihilation(i, scalar)?.anticommutator(&sys.creation(j, scalar)?)?;
            Ok(ac.residual(if i == j { &id } else { &zero }))
        })
    });
    s.record("car_annihilation", "{a_i, a_j} = 0", tol, || {
        max_over_pairs(modes, |i, j| {
            Ok(sys.annihilation(i, scalar)?.anticommutator(&sys.annihilation(j, scalar)?)?.max_abs())
        })
    });
    s.record("car_creation", "{a†_i, a†_j} = 0", tol, || {
        max_over_pairs(modes, |i, j| Ok(sys.creation(i, scalar)?.anticommutator(&sys.creation(j, scalar)?)?.max_abs()))
    });
    s.record("vacuum_annihilated", "a_k |0⟩ = 0", tol, || {
        max_over(modes, |k| Ok(sys.annihilation(k, scalar)?.apply(&FockVector::vacuum(modes, scalar))?.max_abs()))
    });

    // Grassmann kernel
    let generators: Vec<GrassmannElement> =
        (0..2 * modes).map(|r| alg.generator(GeneratorId::from_rank(r as u32))).collect::<Result<_>>()?;
    s.record("grassmann_anticommutation", "g_i g_j + g_j g_i = 0", tol, || {
        let mut worst = 0.0f64;
        for a in &generators {
            for b in &generators {
                worst = worst.max((a * b + b * a).max_abs());
            }
        }
        Ok(worst)
    });
    s.record("grassmann_nilpotency", "g_i g_i = 0", tol, || {
        Ok(generators.iter().map(|g| (g * g).max_abs()).fold(0.0, f64::max))
    });
    s.record("grassmann_operator_anticommutation", "y_j a_k = −a_k y_j", tol, || {
        let mut worst = 0.0f64;
        for k in 0..modes {
            let a = sys.annihilation(k, alg)?;
            for g in &generators {
                worst = worst.max(a.left_mul(g).add(&a.right_mul(g))?.max_abs());
            }
        }
        Ok(worst)
    });
    let samples: Vec<[GrassmannElement; 3]> =
        (0..ASSOCIATIVITY_SAMPLES).map(|_| [0, 1, 2].map(|_| random_element(&mut rng, alg))).collect();
    s.record("conjugation_antihomomorphism", "(ab)* = b* a*", tol, || {
        Ok(samples.iter().map(|[a, b, _]| (a * b).conjugate().residual(&(b.conjugate() * a.conjugate()))).fold(0.0, f64::max))
    });
    s.record("conjugation_involution", "(a*)* = a", tol, || {
        Ok(samples.iter().map(|[a, _, _]| a.conjugate().conjugate().residual(a)).fold(0.0, f64::max))
    });
    s.record("associativity", "(ab)c = a(bc)", tol, || {
        Ok(samples.iter().map(|[a, b, c]| ((a * b) * c).residual(&(a * &(b * c)))).fold(0.0, f64::max))
    });

    // Berezin calculus
    s.record("berezin_constant", "∫dg 1 = 0", tol, || {
        Ok(generators.iter().map(|g| integrate_sequence(&alg.one(), &[rank_of(g)]).max_abs()).fold(0.0, f64::max))
    });
    s.record("berezin_linear", "∫dg g = 1", tol, || {
        Ok(generators.iter().map(|g| integrate_sequence(g, &[rank_of(g)]).residual(&alg.one())).fold(0.0, f64::max))
    });
    let volume = generators.iter().fold(alg.one(), |acc, g| acc * g);
    s.record("measure_antisymmetry", "dg_i dg_j = −dg_j dg_i", tol, || {
        let ids: Vec<GeneratorId> = generators.iter().map(rank_of).collect();
        max_over_pairs(ids.len(), |i, j| {
            if i == j {
                return Ok(integrate_sequence(&volume, &[ids[i], ids[i]]).max_abs());
            }
            Ok((integrate_sequence(&volume, &[ids[i], ids[j]]) + integrate_sequence(&volume, &[ids[j], ids[i]])).max_abs())
        })
    });
    s.record("integration_is_differentiation", "∫dg f = ∂f/∂g", tol, || {
        let ids: Vec<GeneratorId> = generators.iter().map(rank_of).collect();
        let mut worst = 0.0f64;
        for [a, _, _] in samples.iter().take(20) {
            for &g in &ids {
                worst = worst.max(left_derivative(a, g).residual(&integral_by_factoring(a, g)));
            }
        }
        Ok(worst)
    });
    s.record("gaussian_normalization", "∫d²y_k e^{−y*_k y_k} = 1", tol, || {
        let mut worst = 0.0f64;
        for k in 0..modes {
            let gauss = (-(alg.y_star(k)? * alg.y(k)?)).exp()?;
            worst = worst.max(integrate_pair(&gauss, k).residual(&alg.one()));
        }
        let total = (-label.occupation()).exp()?;
        Ok(worst.max((integrate_all(&total) - 1.0).norm()))
    });

    // Displacement and coherent states
    let d = displacement(&label)?;
    let d_dag = d.adjoint();
    s.record("displacement_exponential", "∏_k[1 + a†y − y*a + (a†a − ½)y*y] = exp(Σ a†y − y*a)", tol, || {
        Ok(d.residual(&displacement_exponential(&label)?))
    });
    s.record("displacement_unitary", "D†D = DD† = I", tol, || {
        let id = FockOperator::identity(modes, alg);
        Ok(d_dag.mul(&d)?.residual(&id).max(d.mul(&d_dag)?.residual(&id)))
    });
    s.record("displaced_annihilation", "D† a_k D = a_k + y_k", tol, || {
        max_over(modes, |k| {
            let a = sys.annihilation(k, alg)?;
            let shifted = a.add(&FockOperator::from_grassmann(modes, &label.y(k)))?;
            Ok(d_dag.mul(&a)?.mul(&d)?.residual(&shifted))
        })
    });
    s.record("displaced_creation", "D† a†_k D = a†_k + y*_k", tol, || {
        max_over(modes, |k| {
            let ad = sys.creation(k, alg)?;
            let shifted = ad.add(&FockOperator::from_grassmann(modes, &label.y_star(k)))?;
            Ok(d_dag.mul(&ad)?.mul(&d)?.residual(&shifted))
        })
    });
    let ket = coherent_state(&label)?;
    s.record("eigenvalue", "a_k |y⟩ = y_k |y⟩", tol, || {
        max_over(modes, |k| Ok(sys.annihilation(k, alg)?.apply(&ket)?.residual(&ket.left_mul(&label.y(k)))))
    });
    s.record("overlap_formula", "⟨y'|y⟩ = exp(Σ y'*y − ½(y'*y' + y*y))", tol, || {
        let pair = Algebra::new(2 * modes)?;
        let o = overlap(&CoherentLabel::new(pair, 0, modes)?, &CoherentLabel::new(pair, modes, modes)?)?;
        Ok(o.residual)
    });
    s.record("self_overlap", "⟨y|y⟩ = 1", tol, || Ok(ket.inner(&ket)?.residual(&alg.one())));
    s.record("vacuum_overlap", "⟨0|y⟩ = exp(−½ Σ y*y)", tol, || {
        let expected = label.occupation().scale_real(-0.5).exp()?;
        Ok(FockVector::vacuum(modes, alg).inner(&ket)?.residual(&expected))
    });
    s.record("resolution_of_identity", "∫d²y |y⟩⟨y| = I", tol, || {
        Ok(resolution_of_identity(modes)?.residual(&FockOperator::identity(modes, alg)))
    });

    // U(1)
    s.record("u1_coherent_state", "e^{iθN}|y⟩ = |e^{iθ}y⟩, θ ∈ {π/2, π}", tol, || {
        let mut worst = 0.0f64;
        for theta in [FRAC_PI_2, PI] {
            worst = worst.max(u1_rotate(&ket, theta).residual(&coherent_state(&label.rotated(theta))?));
        }
        Ok(worst)
    });
    s.record("u1_operator_conjugation", "e^{−iθN} a_k e^{iθN} = e^{iθ} a_k", tol, || {
        let mut worst = 0.0f64;
        for theta in [FRAC_PI_2, PI, 0.7] {
            let (fwd, back) = (u1_operator(modes, scalar, theta), u1_operator(modes, scalar, -theta));
            for k in 0..modes {
                let a = sys.annihilation(k, scalar)?;
                worst = worst.max(back.mul(&a)?.mul(&fwd)?.residual(&a.scale(Complex64::from_polar(1.0, theta))));
            }
        }
        Ok(worst)
    });
    s.record("u1_overlap_invariance", "⟨e^{iθ}y'|e^{iθ}y⟩ = ⟨y'|y⟩", tol, || {
        let pair = Algebra::new(2 * modes)?;
        let (bra, ket) = (CoherentLabel::new(pair, 0, modes)?, CoherentLabel::new(pair, modes, modes)?);
        let base = overlap(&bra, &ket)?.matrix;
        let mut worst = 0.0f64;
        for theta in [FRAC_PI_2, PI] {
            worst = worst.max(overlap(&bra.rotated(theta), &ket.rotated(theta))?.matrix.residual(&base));
        }
        Ok(worst)
    });
    s.record("hamiltonian_u1_invariance", "e^{iθN} H e^{−iθN} = H", tol, || {
        let labelled = ModeSystem::with_labels(momentum_labels(modes))?;
        let kinetic: Vec<f64> = labelled.labels().iter().map(|&p| 0.5 * (p * p) as f64).collect();
        let h = number_conserving_hamiltonian(&labelled, &kinetic, 0.3, scalar)?;
        let mut worst = h.commutator(&labelled.number_operator(scalar))?.max_abs();
        for theta in [FRAC_PI_2, PI, 0.7] {
            let rotated = u1_operator(modes, scalar, theta).mul(&h)?.mul(&u1_operator(modes, scalar, -theta))?;
            worst = worst.max(rotated.residual(&h));
        }
        Ok(worst)
    });

    // Fluctuations
    let moments = number_moments(&label)?;
    s.record("number_fluctuation", "⟨ΔN²⟩ = Σ_k y*_k y_k = ⟨N⟩", tol, || {
        Ok(moments.variance.residual(&label.occupation()).max(moments.variance.residual(&moments.mean)))
    });
    let occupancies: Vec<Occupancy> = (0..OCCUPANCY_SAMPLES)
        .map(|_| (0..modes).map(|k| (k, rng.random_range(0.001..1000.0))).collect())
        .collect();
    s.record("number_fluctuation_substituted", "⟨ΔN²⟩|_{y*y→N} = Σ N_k", RELATIVE_TOLERANCE, || {
        let mut worst = 0.0f64;
        for occ in &occupancies {
            let variance = substitute_bilinears(&moments.variance, occ)?;
            let mean = substitute_bilinears(&moments.mean, occ)?;
            let expected: f64 = occ.values().sum();
            worst = worst.max((variance - expected).norm() / expected).max((mean - expected).norm() / expected);
        }
        Ok(worst)
    });
    s.record("number_phase_product", "⟨ΔN²⟩ ⟨Δθ²⟩ = ¼", RELATIVE_TOLERANCE, || {
        let mut worst = 0.0f64;
        for occ in &occupancies {
            let variance = substitute_bilinears(&moments.variance, occ)?.re;
            worst = worst.max((variance * phase_variance(occ)? - 0.25).abs() / 0.25);
        }
        Ok(worst)
    });

    // Quadratic Hamiltonian and quasi-particles
    let params = PhysicalParams::dimensionless(0.1 / (4.0 * PI), 1.0)?;
    let macroscopic = MacroscopicMode { k_f: 3.0, occupation: 1000.0 };
    let h = crate::bogoliubov::build_quadratic(&params, macroscopic, &[1.0, 2.0])?;
    let thetas: Vec<f64> = THETA_REPRESENTATIVES.iter().map(|&m| m as f64 * FRAC_PI_2).collect();
    s.record("macroscopic_nilpotency", "y*_F y*_F y_F y_F = 0, y_F y_F = 0", tol, || {
        let f = Algebra::new(1)?;
        let (y, ys) = (f.y(0)?, f.y_star(0)?);
        let quartic = &ys * &ys * &y * &y;
        Ok(quartic.max_abs().max(h.pair_creation_factor.max_abs()).max(h.pair_annihilation_factor.max_abs()))
    });
    s.record_at("bogoliubov_canonicity", "|u|² + |v|² = 1, {A_k, A†_k'} = δ_kk'", 2, tol, || {
        let mut worst = 0.0f64;
        for &theta in &thetas {
            let report = check_canonicity(&BogoliubovTransform::from_angles(&[theta]))?;
            worst = report.pair_residuals.iter().copied().fold(worst, f64::max);
            worst = worst.max(report.matrix_residual.unwrap_or(f64::INFINITY));
        }
        Ok(worst)
    });
    s.record_at("bogoliubov_composition", "T(θ₁) T(θ₂) = T(θ₁ + θ₂)", 2, tol, || {
        let mut worst = 0.0f64;
        for &a in &thetas {
            for &b in &[0.3, FRAC_PI_2, -1.1] {
                let c = PairTransform::from_angle(a).compose(&PairTransform::from_angle(b));
                let direct = PairTransform::from_angle(a + b);
                worst = worst.max((c.u - direct.u).norm()).max((c.v - direct.v).norm()).max((c.norm() - 1.0).abs());
                let ops = BogoliubovTransform { pairs: alloc::vec![c] }.quasiparticle_operators()?.1;
                worst = worst.max(car_residual(&ops)?);
            }
        }
        Ok(worst)
    });
    s.record_at("anomalous_coefficient", "2α_k u_k v_−k = 0 for θ ∈ (π/2)ℤ", 2, tol, || {
        let mut worst = 0.0f64;
        for &theta in &thetas {
            for p in &h.pairs {
                worst = worst.max(anomalous_coefficient(p.alpha, &PairTransform::from_angle(theta)).norm());
            }
        }
        Ok(worst)
    });
    s.record_at("ground_energy", "Ē = E_F + Σ 2α_k sin²2θ_k = E_F", 2, tol, || {
        let mut worst = 0.0f64;
        for &a in &thetas {
            for &b in &thetas {
                worst = worst.max((diagonalize(&h, Some(&[a, b]))?.ground_energy - h.ground_energy).abs());
            }
        }
        Ok(worst)
    });
    s.record_at("quasiparticle_energy", "ε_k = 2α_k cos2θ_k = E_k + 2ρg at θ = 0, ±π", 2, tol, || {
        let mut worst = 0.0f64;
        for theta in [0.0, PI, -PI] {
            let d = diagonalize(&h, Some(&[theta, theta]))?;
            for (q, p) in d.pairs.iter().zip(&h.pairs) {
                worst = worst.max((q.energy - (p.free_energy + 2.0 * params.density * h.coupling)).abs());
            }
        }
        Ok(worst)
    });
    s.record_at("matrix_diagonalization", "α(N_k + N_−k) = ½ε_k(N^A_k + N^A_−k) + C_k", 2, tol, || {
        let mut worst = 0.0f64;
        for &theta in &thetas {
            let d = diagonalize(&h, Some(&[theta, theta]))?;
            for q in &d.pairs {
                let dec = decompose_pair_hamiltonian(q.alpha, &q.transform)?;
                let constant = 2.0 * q.alpha * q.transform.v.norm_sqr();
                worst = worst
                    .max(dec.reconstruction_residual)
                    .max(dec.creation_pair.norm())
                    .max(dec.annihilation_pair.norm())
                    .max((dec.number - 0.5 * q.energy).norm())
                    .max((dec.constant - constant).norm());
            }
        }
        Ok(worst)
    });
    s.record_at("quasiparticle_vacuum", "A_k |0⟩ = 0 for θ ∈ {0, π}", 2, tol, || {
        let mut worst = 0.0f64;
        for theta in [0.0, PI] {
            let report = quasiparticle_vacuum_check(&diagonalize(&h, Some(&[theta, theta]))?)?;
            worst = worst.max(report.bare_vacuum_residual);
        }
        Ok(worst)
    });

    Ok(s.checks)
}

fn max_over(n: usize, mut f: impl FnMut(usize) -> Result<f64>) -> Result<f64> {
    (0..n).try_fold(0.0f64, |acc, k| Ok(acc.max(f(k)?)))
}

fn max_over_pairs(n: usize, mut f: impl FnMut(usize, usize) -> Result<f64>) -> Result<f64> {
    max_over(n, |i| max_over(n, |j| f(i, j)))
}

/// `∫dg f` from the rule `∫dg (g r) = r`: each monomial containing `g` is
/// rewritten as `± g · rest` through the product itself.
fn integral_by_factoring(f: &GrassmannElement, g: GeneratorId) -> GrassmannElement {
    let gm = Monomial::from_generator(g);
    let terms = f.terms().iter().filter(|(m, _)| m.contains(g)).map(|&(m, c)| {
        let rest = Monomial(m.0 & !gm.0);
        let (sign, product) = gm.mul(rest).expect("g is absent from rest");
        debug_assert_eq!(product, m);
        (rest, c * sign as f64)
    });
    GrassmannElement::from_terms(f.algebra(), terms)
}

fn rank_of(g: &GrassmannElement) -> GeneratorId {
    let m = g.terms()[0].0;
    GeneratorId::from_rank(m.0.trailing_zeros())
}

/// `0, 1, −1, 2, −2, …`
fn momentum_labels(n: usize) -> Vec<i64> {
    (0..n as i64).map(|i| if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) }).collect()
}

/// A handful of random monomials with small integer coefficients, so that
/// every product is exact in floating point.
fn random_element(rng: &mut ChaCha8Rng, alg: Algebra) -> GrassmannElement {
    let bits = alg.generator_count();
    let mask = if bits >= 64 { u64::MAX } else { (1u64 << bits) - 1 };
    let terms: Vec<(Monomial, Complex64)> = (0..rng.random_range(1..=6))
        .map(|_| {
            let c = Complex64::new(rng.random_range(-3..=3) as f64, rng.random_range(-3..=3) as f64);
            (Monomial(rng.random::<u64>() & mask), c)
        })
        .collect();
    GrassmannElement::from_terms(alg, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes_at_two_modes() {
        let checks = run_suite(2, 0).unwrap();
        assert!(checks.len() >= 20);
        for c in &checks {
            assert!(c.pass, "{} failed: residual {} {:?}", c.identity, c.max_residual, c.error);
        }
    }

    #[test]
    fn mode_count_is_capped() {
        assert_eq!(run_suite(99, 0).unwrap_err(), Error::TooManyModes { requested: 99, cap: MODE_CAP });
        assert_eq!(run_suite(0, 0).unwrap_err(), Error::NoModes);
    }

    #[test]
    fn labels_pair_up() {
        assert_eq!(momentum_labels(5), [0, 1, -1, 2, -2]);
    }
}
