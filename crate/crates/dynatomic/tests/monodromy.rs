use std::collections::BTreeSet;

use dynatomic::config::Config;
use dynatomic::core::{exact_period_words, Angle, Word};
use dynatomic::error::Error;
use dynatomic::monodromy::{check_loop_disk, label_angle, label_roots, loop_indices, loop_permutation};
use dynatomic::rays::parameter_ray_point;
use num_complex::Complex64 as C64;

fn angle(p: u64, q: u64, d: u32) -> Angle {
    Angle::new(p, q, d).unwrap()
}

fn words(cycles: Vec<Vec<Word>>) -> Vec<Vec<String>> {
    cycles.iter().map(|c| c.iter().map(|w| w.to_string()).collect()).collect()
}

#[test]
fn labels_are_the_exact_period_words() {
    let cfg = Config::default();
    for (d, p, q, n) in [(2, 2, 3, 2), (2, 6, 7, 3), (3, 3, 4, 2)] {
        let base = label_angle(&angle(p, q, d), n, true).unwrap();
        let c = parameter_ray_point(d, &base, 1.0, &cfg.ray).unwrap();
        let labeled = label_roots(d, c, &base, n, &cfg.ray).unwrap();
        let got: BTreeSet<Word> = labeled.labeled().map(|(w, _)| w.clone()).collect();
        let expected: BTreeSet<Word> = exact_period_words(d, n).unwrap().into_iter().collect();
        assert_eq!(got, expected, "d={d} theta={p}/{q}");
        assert_eq!(labeled.labeled().count(), expected.len());
    }
}

#[test]
fn labels_below_the_wake_side_also_work() {
    // just below 4/7 lies inside the wake of -7/4, where companion rays
    // still land together; the sector itineraries remain a bijection
    let cfg = Config::default();
    let base = label_angle(&angle(4, 7, 2), 3, false).unwrap();
    let c = parameter_ray_point(2, &base, 1.0, &cfg.ray).unwrap();
    let labeled = label_roots(2, c, &base, 3, &cfg.ray).unwrap();
    assert_eq!(labeled.labeled().count(), 6);
}

#[test]
fn airplane_root_exchanges_100_and_101() {
    let report = loop_permutation(2, &angle(4, 7, 2), 3, 1e-2, 1, &Config::default()).unwrap();
    assert!((report.center - C64::new(-1.75, 0.0)).norm() < 1e-12);
    assert_eq!(report.observed[&Word::parse("100", 2).unwrap()].to_string(), "101");
    assert!(report.matches());
    assert_eq!(words(report.cycles()), vec![vec!["001", "011"], vec!["010", "110"], vec!["100", "101"]]);
}

#[test]
fn satellite_roots_rotate_orbits() {
    let report = loop_permutation(2, &angle(6, 7, 2), 3, 1e-2, 1, &Config::default()).unwrap();
    assert!(report.matches());
    assert_eq!(words(report.cycles()), vec![vec!["011", "101", "110"]]);
    let report = loop_permutation(2, &angle(2, 3, 2), 2, 1e-2, 1, &Config::default()).unwrap();
    assert!(report.matches());
    assert_eq!(words(report.cycles()), vec![vec!["01", "10"]]);
}

#[test]
fn cubic_cases() {
    let report = loop_permutation(3, &angle(3, 4, 3), 2, 1e-2, 1, &Config::default()).unwrap();
    assert!(report.matches());
    assert_eq!(words(report.cycles()), vec![vec!["02", "12"], vec!["20", "21"]]);
    let report = loop_permutation(3, &angle(79, 80, 3), 4, 1e-2, 1, &Config::default()).unwrap();
    assert!(report.matches());
    assert_eq!(words(report.cycles()), vec![vec!["1222", "2122", "2212", "2221"]]);
}

#[test]
fn orientation_and_composition() {
    let cfg = Config::default();
    let theta = angle(6, 7, 2);
    let once = loop_permutation(2, &theta, 3, 1e-2, 1, &cfg).unwrap();
    let back = loop_permutation(2, &theta, 3, 1e-2, -1, &cfg).unwrap();
    let twice = loop_permutation(2, &theta, 3, 1e-2, 2, &cfg).unwrap();
    for (x, y) in &once.observed {
        assert_eq!(&back.observed[y], x);
        assert_eq!(&twice.observed[x], &once.observed[y]);
    }
    assert!(back.matches() && twice.matches());
    let twice = loop_permutation(2, &angle(4, 7, 2), 3, 1e-2, 2, &cfg).unwrap();
    assert!(twice.observed.iter().all(|(x, y)| x == y));
}

#[test]
fn generic_loops_are_trivial() {
    for (d, c, n) in [(2, C64::new(0.0, 0.0), 3), (3, C64::new(0.1, 0.2), 2), (2, C64::new(-1.0, 0.3), 4)] {
        let perm = loop_indices(d, c, 1e-2, n, 1).unwrap();
        assert!(perm.iter().enumerate().all(|(i, j)| i == *j), "d={d} c={c}");
    }
}

#[test]
fn crowded_disks_are_rejected() {
    let c0 = C64::new(-1.75, 0.0);
    assert!(check_loop_disk(2, c0, 1e-2, 3, 256).unwrap());
    assert!(matches!(check_loop_disk(2, c0, 2.5, 3, 256), Err(Error::CrowdedLoop(_))));
    assert!(!check_loop_disk(3, c0, 1e-2, 4, 256).unwrap());
}

#[test]
fn report_json_shape() {
    let report = loop_permutation(2, &angle(2, 3, 2), 2, 1e-2, 1, &Config::default()).unwrap();
    let v: serde_json::Value = serde_json::to_value(&report).unwrap();
    for key in ["center", "radius", "cycles", "predicted_cycles", "match"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["match"], true);
    assert_eq!(v["cycles"][0][0], "01");
}
