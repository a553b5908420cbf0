use grassfock_core::grassmann::{conjugation_sign, merge_sign, Algebra, GeneratorId, GrassmannElement, Monomial};
use grassfock_core::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Sign of sorting the concatenation `ranks(a) ++ ranks(b)` by adjacent swaps.
fn bubble_sort_sign(a: u64, b: u64) -> i8 {
    let mut ranks: Vec<u32> = (0..64).filter(|r| a >> r & 1 == 1).collect();
    ranks.extend((0..64).filter(|r| b >> r & 1 == 1));
    let mut swaps = 0;
    for i in 0..ranks.len() {
        for j in 0..ranks.len() - 1 - i {
            if ranks[j] > ranks[j + 1] {
                ranks.swap(j, j + 1);
                swaps += 1;
            }
        }
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Conjugation sign by literally reversing the rank list, starring, and
/// bubble-sorting back.
fn reversal_sign(mask: u64) -> i8 {
    let mut ranks: Vec<u32> = (0..64).filter(|r| mask >> r & 1 == 1).map(|r| r ^ 1).collect();
    ranks.reverse();
    let mut swaps = 0;
    for i in 0..ranks.len() {
        for j in 0..ranks.len().saturating_sub(1 + i) {
            if ranks[j] > ranks[j + 1] {
                ranks.swap(j, j + 1);
                swaps += 1;
            }
        }
    }
    if swaps % 2 == 0 {
        1
    } else {
        -1
    }
}

#[test]
fn merge_sign_matches_bubble_sort_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut mismatches = 0;
    for _ in 0..10_000 {
        let a: u64 = rng.random();
        let b: u64 = rng.random::<u64>() & !a;
        if merge_sign(a, b) != bubble_sort_sign(a, b) {
            mismatches += 1;
        }
    }
    assert_eq!(mismatches, 0);
}

#[test]
fn conjugation_sign_matches_reversal() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for mask in 0..(1u64 << 12) {
        assert_eq!(conjugation_sign(mask), reversal_sign(mask), "mask {mask:#b}");
    }
    for _ in 0..2_000 {
        let mask: u64 = rng.random();
        assert_eq!(conjugation_sign(mask), reversal_sign(mask));
    }
}

#[test]
fn generators_anticommute_and_square_to_zero() {
    for n in 1..=6 {
        let alg = Algebra::new(n).unwrap();
        let gens: Vec<_> = (0..2 * n as u32).map(|r| alg.generator(GeneratorId::from_rank(r)).unwrap()).collect();
        for (i, a) in gens.iter().enumerate() {
            assert!((a * a).is_zero());
            for b in &gens[i + 1..] {
                let ab = a * b;
                assert!(!ab.is_zero());
                assert_eq!((&ab + &(b * a)).max_abs(), 0.0);
            }
        }
    }
}

#[test]
fn monomials_graded_commute_exhaustively() {
    // A·B = (−1)^{|A||B|} B·A for every disjoint pair of monomials
    for n in 1..=4 {
        let size = 1u64 << (2 * n);
        for a in 0..size {
            for b in 0..size {
                let (ma, mb) = (Monomial(a), Monomial(b));
                match (ma.mul(mb), mb.mul(ma)) {
                    (None, None) => assert_ne!(a & b, 0),
                    (Some((s1, p1)), Some((s2, p2))) => {
                        assert_eq!(p1, p2);
                        let graded = if ma.degree() * mb.degree() % 2 == 1 { -1 } else { 1 };
                        assert_eq!(s1, graded * s2);
                    }
                    _ => panic!("asymmetric product for {a:#b}, {b:#b}"),
                }
            }
        }
    }
}

#[test]
fn maximal_product_spans_the_algebra() {
    let alg = Algebra::new(6).unwrap();
    let top = (0..12).fold(alg.one(), |acc, r| acc * alg.generator(GeneratorId::from_rank(r)).unwrap());
    assert_eq!(top.terms(), [(Monomial((1 << 12) - 1), Complex64::new(1.0, 0.0))]);
    let any = alg.y(3).unwrap();
    assert!((&top * &any).is_zero());
}

fn element(pairs: usize) -> impl Strategy<Value = GrassmannElement> {
    let bits = 2 * pairs;
    prop::collection::vec((0u64..(1u64 << bits), -4i32..=4, -4i32..=4), 0..8).prop_map(move |terms| {
        GrassmannElement::from_terms(
            Algebra::new(pairs).unwrap(),
            terms.into_iter().map(|(m, re, im)| (Monomial(m), Complex64::new(re as f64, im as f64))),
        )
    })
}

proptest! {
    #[test]
    fn product_is_associative(a in element(4), b in element(4), c in element(4)) {
        prop_assert_eq!((&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn product_distributes(a in element(3), b in element(3), c in element(3)) {
        prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
    }

    #[test]
    fn conjugation_is_an_antihomomorphism(a in element(4), b in element(4)) {
        prop_assert_eq!((&a * &b).conjugate(), b.conjugate() * a.conjugate());
        prop_assert_eq!(a.conjugate().conjugate(), a);
    }

    #[test]
    fn exponential_of_nilpotent_inverts(a in element(3)) {
        let a = &a - &a.algebra().scalar(a.scalar_part());
        let one = a.algebra().one();
        prop_assert_eq!(a.exp().unwrap() * (-&a).exp().unwrap(), one);
    }

    #[test]
    fn text_round_trips(a in element(3)) {
        let back = a.algebra().parse(&a.to_string()).unwrap();
        prop_assert_eq!(back, a);
    }
}

#[test]
fn exp_of_commuting_even_elements_multiplies() {
    let alg = Algebra::new(3).unwrap();
    let n = |k| alg.y_star(k).unwrap() * alg.y(k).unwrap();
    let sum = n(0) + n(1) + n(2);
    let product = n(0).exp().unwrap() * n(1).exp().unwrap() * n(2).exp().unwrap();
    assert_eq!(sum.exp().unwrap(), product);
}
