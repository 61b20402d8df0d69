use dynatomic::quad_diff::{contraction_check, pushforward, pushforward_bruteforce, qd_norm, PoleTolerance, QuadDiff, Region, Term};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: PoleTolerance = PoleTolerance { merge: 1e-9, collision: 1e-6 };

fn point(rng: &mut ChaCha8Rng, r: f64) -> C64 {
    C64::from_polar(r * rng.gen::<f64>().sqrt(), std::f64::consts::TAU * rng.gen::<f64>())
}

fn random_qd(rng: &mut ChaCha8Rng, doubles: bool) -> QuadDiff {
    let terms = (0..rng.gen_range(1..5)).map(|_| {
        let mut a = point(rng, 2.0);
        if a.norm() < 0.05 {
            a += 0.1;
        }
        Term { a, c2: if doubles { point(rng, 1.0) } else { C64::new(0.0, 0.0) }, c1: point(rng, 2.0) }
    });
    QuadDiff::from_terms(terms, TOL).unwrap()
}

#[test]
fn closed_form_matches_preimage_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for case in 0..50 {
        let d = 2 + case % 3;
        let c = point(&mut rng, 1.5);
        let q = random_qd(&mut rng, case % 2 == 0);
        let push = pushforward(d, c, &q, TOL).unwrap();
        let poles: Vec<C64> = push.terms().iter().map(|t| t.a).collect();
        let mut checked = 0;
        while checked < 100 {
            let z = point(&mut rng, 3.0);
            if poles.iter().any(|p| (z - p).norm() < 0.05) {
                continue;
            }
            let exact = pushforward_bruteforce(d, c, &q, z).unwrap();
            worst = worst.max((push.eval(z) - exact).norm() / exact.norm());
            checked += 1;
        }
    }
    assert!(worst < 1e-9, "worst relative error {worst:e}");
}

#[test]
fn dz2_over_z_is_killed() {
    for d in 2..6 {
        let q = QuadDiff::simple(C64::new(0.0, 0.0), C64::new(1.0, 0.0));
        assert!(pushforward(d, C64::new(0.4, -0.7), &q, TOL).unwrap().is_zero());
    }
}

#[test]
fn pushforward_is_linear_and_never_fixes_simple_poles() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let c = point(&mut rng, 1.0);
        let (p, q) = (random_qd(&mut rng, false), random_qd(&mut rng, true));
        let k = point(&mut rng, 2.0);
        let lhs = pushforward(2, c, &p.add(&q.scale(k), TOL).unwrap(), TOL).unwrap();
        let rhs = pushforward(2, c, &p, TOL).unwrap().add(&pushforward(2, c, &q, TOL).unwrap().scale(k), TOL).unwrap();
        assert!(lhs.sub(&rhs, TOL).unwrap().max_coefficient() < 1e-9 * (1.0 + lhs.max_coefficient()));
        // a nonzero Q with simple poles off the critical point is moved
        let diff = pushforward(2, c, &p, TOL).unwrap().sub(&p, TOL).unwrap();
        assert!(!diff.is_zero());
    }
}

#[test]
fn norm_of_dz2_over_z_is_two_pi_r() {
    let q = QuadDiff::simple(C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    for r in [1.0, 2.5] {
        let n = qd_norm(&q, &Region::Disk { center: C64::new(0.0, 0.0), radius: r }).unwrap();
        assert!((n.value / (std::f64::consts::TAU * r) - 1.0).abs() < 1e-3);
    }
}

#[test]
fn contraction_for_random_simple_poles() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let c = point(&mut rng, 1.0);
        let q = random_qd(&mut rng, false);
        let report = contraction_check(2, c, &q, 3.0, TOL).unwrap();
        assert!(report.holds, "{report:?}");
    }
}
