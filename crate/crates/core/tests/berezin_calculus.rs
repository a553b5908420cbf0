use grassfock_core::berezin::{integrate, integrate_all, integrate_pair, integrate_sequence, left_derivative, IntegrationMeasure};
use grassfock_core::grassmann::{Algebra, GeneratorId, GrassmannElement, Monomial};
use grassfock_core::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_element(rng: &mut ChaCha8Rng, alg: Algebra) -> GrassmannElement {
    let mask = (1u64 << alg.generator_count()) - 1;
    GrassmannElement::from_terms(
        alg,
        (0..8).map(|_| (Monomial(rng.random::<u64>() & mask), Complex64::new(rng.random_range(-5..=5) as f64, 1.0))),
    )
}

/// `∫dg f` by writing each monomial that holds `g` as `± g · rest` with the
/// signs coming from multiplication.
fn integral_by_factoring(f: &GrassmannElement, g: GeneratorId) -> GrassmannElement {
    let gm = Monomial::from_generator(g);
    GrassmannElement::from_terms(
        f.algebra(),
        f.terms().iter().filter(|(m, _)| m.contains(g)).map(|&(m, c)| {
            let rest = Monomial(m.0 & !gm.0);
            let (sign, _) = gm.mul(rest).unwrap();
            (rest, c * sign as f64)
        }),
    )
}

#[test]
fn single_generator_rules() {
    let alg = Algebra::new(3).unwrap();
    for r in 0..6 {
        let g = GeneratorId::from_rank(r);
        let y = alg.generator(g).unwrap();
        assert!(integrate(&alg.one(), g).is_zero());
        assert_eq!(integrate(&y, g), alg.one());
        for other in (0..6).filter(|&o| o != r) {
            let h = alg.generator(GeneratorId::from_rank(other)).unwrap();
            // ∫dg (g h) = h, ∫dg (h g) = −h
            assert_eq!(integrate(&(&y * &h), g), h);
            assert_eq!(integrate(&(&h * &y), g), -&h);
            assert!(integrate(&h, g).is_zero());
        }
    }
}

#[test]
fn integration_equals_differentiation() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let alg = Algebra::new(4).unwrap();
    for _ in 0..200 {
        let f = random_element(&mut rng, alg);
        for r in 0..8 {
            let g = GeneratorId::from_rank(r);
            assert_eq!(integrate(&f, g), integral_by_factoring(&f, g));
            assert_eq!(left_derivative(&f, g), integral_by_factoring(&f, g));
        }
    }
}

#[test]
fn measure_is_antisymmetric() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let alg = Algebra::new(3).unwrap();
    for _ in 0..100 {
        let f = random_element(&mut rng, alg);
        for i in 0..6 {
            for j in 0..6 {
                let (gi, gj) = (GeneratorId::from_rank(i), GeneratorId::from_rank(j));
                let ij = integrate_sequence(&f, &[gi, gj]);
                let ji = integrate_sequence(&f, &[gj, gi]);
                assert_eq!(ij, -&ji);
                if i == j {
                    assert!(ij.is_zero());
                }
            }
        }
    }
}

#[test]
fn pair_measure_order() {
    let alg = Algebra::new(1).unwrap();
    let (y, ys) = (alg.y(0).unwrap(), alg.y_star(0).unwrap());
    // d²y = dy* dy, rightmost first
    let seq = [GeneratorId::conj(0), GeneratorId::plain(0)];
    for f in [&y * &ys, &ys * &y, alg.one(), y.clone()] {
        assert_eq!(integrate_pair(&f, 0), integrate_sequence(&f, &seq));
    }
    assert_eq!(integrate_pair(&(&y * &ys), 0), alg.one());
}

#[test]
fn gaussian_normalization_per_mode() {
    for n in 1..=6 {
        let alg = Algebra::new(n).unwrap();
        for k in 0..n {
            let gauss = (-(alg.y_star(k).unwrap() * alg.y(k).unwrap())).exp().unwrap();
            assert_eq!(integrate_pair(&gauss, k), alg.one());
        }
        let total = (0..n).fold(alg.zero(), |acc, k| acc + alg.y_star(k).unwrap() * alg.y(k).unwrap());
        assert_eq!(integrate_all(&(-total).exp().unwrap()), Complex64::new(1.0, 0.0));
    }
}

#[test]
fn measure_rejects_foreign_modes() {
    let alg = Algebra::new(2).unwrap();
    assert!(IntegrationMeasure::range(0..3).apply(&alg.one()).is_err());
    assert!(IntegrationMeasure::range(0..2).apply(&alg.one()).unwrap().is_zero());
}
