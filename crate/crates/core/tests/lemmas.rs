use dynatomic_core::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn maximal_words(d: u32, n: usize) -> Vec<Word> {
    exact_period_words(d, n).unwrap().into_iter().filter(|w| w.maximal_rotation() == *w).collect()
}

/// Divisor scan: the shortest prefix whose power rebuilds the word.
fn root_oracle(digits: &[u8]) -> (Vec<u8>, usize) {
    let n = digits.len();
    for p in 1..=n {
        if n % p != 0 {
            continue;
        }
        let u = &digits[..p];
        let rebuilt: Vec<u8> = u.iter().copied().cycle().take(n).collect();
        if rebuilt == digits {
            return (u.to_vec(), n / p);
        }
    }
    unreachable!()
}

#[test]
fn realization_of_kneading_sequences() {
    for d in 2..=5 {
        for n in 2..=8 {
            for w in maximal_words(d, n) {
                let theta = Angle::from_word(&w);
                let nu = theta.kneading_sequence().unwrap();
                assert_eq!(nu.body(), &w.digits()[..n - 1], "d={d} theta={theta}");
                assert!(w.last() as u32 <= d - 2, "d={d} theta={theta}");
            }
        }
    }
}

#[test]
fn primitive_root_matches_divisor_scan() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..10_000 {
        let d = rng.gen_range(2..=4u32);
        let len = rng.gen_range(1..=12usize);
        let mut digits: Vec<u8> = (0..len).map(|_| rng.gen_range(0..d) as u8).collect();
        if rng.gen_bool(0.5) {
            let k = rng.gen_range(2..=4);
            digits = digits.iter().copied().cycle().take(len * k).collect();
        }
        let w = Word::new(digits.clone(), d).unwrap();
        let (root, k) = w.primitive_root();
        let (oracle_root, oracle_k) = root_oracle(&digits);
        assert_eq!(root.digits(), &oracle_root[..]);
        assert_eq!(k, oracle_k);
        assert_eq!(root.pow(k), w);
    }
}

#[test]
fn last_digit_variants_of_powers_are_primitive() {
    for d in 2..=4u32 {
        for len in 2..=16usize {
            for p in (1..len).filter(|p| len % p == 0) {
                let count = (d as u64).pow(p as u32);
                for index in 0..count {
                    let u = Word::from_index(index, p, d).unwrap();
                    if !u.is_primitive() {
                        continue;
                    }
                    let w = u.pow(len / p);
                    for e in 0..d as u8 {
                        if e != w.last() {
                            assert!(w.with_last(e).unwrap().is_primitive(), "{w} -> {e}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn cyclic_expressions_are_unique() {
    for d in 2..=4u32 {
        for n in 2..=8usize {
            let count = (d as u64).pow(n as u32 - 1);
            for index in 0..count {
                let body = Word::from_index(index, n - 1, d).unwrap();
                let nu = KneadingSequence::new(body.digits().to_vec(), d).unwrap();
                let all = all_cyclic_expressions(&nu);
                assert!(all.len() <= 1, "{nu}");
                assert_eq!(cyclic_expression(&nu), all.into_iter().next());
            }
        }
    }
}

#[test]
fn connection_reaches_the_special_orbit() {
    for d in 2..=4u32 {
        for n in 2..=7usize {
            let special = special_word(d, n).unwrap();
            let bound = (d - 1) * n as u32 - 1;
            for w in exact_period_words(d, n).unwrap() {
                let plan = connect(d, n, &w).unwrap();
                assert!(plan.digit_sums.windows(2).all(|p| p[0] < p[1]));
                assert!(*plan.digit_sums.last().unwrap() <= bound);
                let image = plan.apply(&w);
                assert_eq!(image, plan.target);
                assert_eq!(image.maximal_rotation(), special, "d={d} n={n} start={w}");
            }
            assert!(transitivity_certificate(d, n, 1 << 24).unwrap().connected, "d={d} n={n}");
        }
    }
}

#[test]
fn transposed_pairs_have_exact_period() {
    for d in 2..=4u32 {
        for n in 2..=7usize {
            for w in maximal_words(d, n) {
                let theta = Angle::from_word(&w);
                match classify_angle(&theta).unwrap() {
                    ParabolicClass::PrimitiveCertified => {
                        let mv = move_for_primitive(&theta).unwrap();
                        if let MoveKind::Transposition { a, b } = mv.kind {
                            assert!(a.is_primitive() && b.is_primitive());
                        }
                    }
                    ParabolicClass::SatelliteCandidate { .. } => {
                        let fam = beta_family(&theta).unwrap();
                        for beta in fam.betas {
                            assert_eq!(beta.angle.period().unwrap(), n);
                            assert!(beta.a.is_primitive() && beta.b.is_primitive());
                        }
                    }
                    ParabolicClass::SpecialSatellite { eta } => {
                        assert!(theta.orbit().unwrap().contains(&eta));
                    }
                }
            }
        }
    }
}

#[test]
fn acyclic_kneading_is_never_a_candidate() {
    for d in 2..=4u32 {
        for n in 2..=7usize {
            for w in maximal_words(d, n) {
                let theta = Angle::from_word(&w);
                let acyclic = cyclic_expression(&theta.kneading_sequence().unwrap()).is_none();
                let class = classify_angle(&theta).unwrap();
                if acyclic {
                    assert_eq!(class, ParabolicClass::PrimitiveCertified);
                }
            }
        }
    }
}

fn periodic_angle() -> impl Strategy<Value = Angle> {
    (2u32..=4, 2usize..=8).prop_flat_map(|(d, n)| {
        let den = (d as u64).pow(n as u32) - 1;
        (1..den).prop_map(move |p| Angle::new(p, den, d).unwrap())
    })
}

proptest! {
    #[test]
    fn expansion_round_trip(theta in periodic_angle()) {
        let w = theta.d_expansion().unwrap();
        prop_assert_eq!(Angle::from_word(&w), theta);
    }

    #[test]
    fn kneading_is_the_own_itinerary(theta in periodic_angle()) {
        let n = theta.period().unwrap();
        let nu = theta.kneading_sequence().unwrap();
        prop_assert_eq!(nu.period(), n);
        if n > 1 {
            let it = itinerary_of_angle(&theta, &theta, n - 1).unwrap();
            prop_assert_eq!(it.digits(), nu.body());
        }
    }

    #[test]
    fn itineraries_commute_with_the_shift(theta in periodic_angle(), p in 0u64..1000) {
        let den = theta.denominator();
        let t = Angle::new(p % den, den, theta.degree()).unwrap();
        let n = theta.period().unwrap().max(2);
        if let (Ok(a), Ok(b)) = (itinerary_of_angle(&t, &theta, n + 1), itinerary_of_angle(&t.tau(), &theta, n)) {
            prop_assert_eq!(&a.digits()[1..], b.digits());
        }
    }

    #[test]
    fn moves_are_involutions(theta in periodic_angle()) {
        if theta.period().unwrap() >= 2 {
            if let Ok(Some(mv)) = predicted_move(&theta) {
                for w in exact_period_words(theta.degree(), theta.period().unwrap()).unwrap() {
                    let image = mv.apply(&w);
                    prop_assert_eq!(image.len(), w.len());
                    if matches!(mv.kind, MoveKind::Transposition { .. }) {
                        prop_assert_eq!(mv.apply(&image), w);
                    }
                }
            }
        }
    }
}
