//! The acceptance suite: twelve criteria, each a finite check with a
//! runtime budget.

use std::time::Instant;

use dynatomic_core::{
    all_cyclic_expressions, connect, cyclic_expression, exact_period_words, special_word, transitivity_certificate, Angle,
    KneadingSequence, Word,
};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::Config;
use crate::error::Result;
use crate::exact::{iterate_poly, parabolic_parameters, vanishes_at, ExactPoly2, IterateCache};
use crate::monodromy::{loop_indices, loop_permutation};
use crate::orbit::jet_normal_form;
use crate::parabolic::{orbit_splitting, snap_parabolic};
use crate::quad_diff::{
    case2_certificate, contraction_check, double_pole_certificate, pushforward, pushforward_bruteforce, qd_norm, PoleTolerance,
    QuadDiff, Region, Term,
};
use crate::rays::land_parameter_ray;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit_seconds: f64,
}

type Check = fn(&Config) -> Result<(bool, String)>;

/// `(id, name, runtime budget in seconds, check)`.
pub const CRITERIA: [(usize, &str, f64, Check); 12] = [
    (1, "kneading golden tests", 1.0, kneading_golden),
    (2, "realization of kneading sequences", 60.0, realization),
    (3, "word lemmas", 60.0, word_lemmas),
    (4, "connectivity of the itinerary graph", 120.0, connectivity),
    (5, "Levin pushforward", 10.0, levin),
    (6, "norm identity and contraction", 30.0, norms),
    (7, "exact dynatomic division", 30.0, division),
    (8, "parabolic enumeration", 30.0, enumeration),
    (9, "smoothness certificates", 60.0, certificates),
    (10, "ray landing", 120.0, ray_landing),
    (11, "orbit splitting", 30.0, splitting),
    (12, "numeric monodromy", 300.0, monodromy),
];

pub fn run(id: usize, config: &Config) -> Option<CheckResult> {
    let &(id, name, limit, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let outcome = check(config);
    let seconds = start.elapsed().as_secs_f64();
    let (ok, detail) = match outcome {
        Ok(v) => v,
        Err(e) => (false, format!("error: {e}")),
    };
    let detail = if seconds > limit { format!("{detail}; over the {limit} s budget") } else { detail };
    Some(CheckResult { id, name, pass: ok && seconds <= limit, detail, seconds, limit_seconds: limit })
}

pub fn run_all(config: &Config) -> Vec<CheckResult> {
    CRITERIA.iter().filter_map(|c| run(c.0, config)).collect()
}

fn angle(p: u64, q: u64, d: u32) -> Result<Angle> {
    Ok(Angle::new(p, q, d)?)
}

fn kneading_golden(_: &Config) -> Result<(bool, String)> {
    let cases = [(1, 7, 3, "12102*"), (27, 28, 3, "22200*"), (28, 31, 4, "3213*"), (13, 14, 3, "22100*")];
    let mut wrong = Vec::new();
    for (p, q, d, expected) in cases {
        let got = angle(p, q, d)?.kneading_sequence()?.to_string();
        if got != expected {
            wrong.push(format!("{p}/{q}: {got}"));
        }
    }
    Ok((wrong.is_empty(), if wrong.is_empty() { "4 of 4 match".into() } else { wrong.join(", ") }))
}

fn maximal_words(d: u32, n: usize) -> Result<Vec<Word>> {
    Ok(exact_period_words(d, n)?.into_iter().filter(|w| w.maximal_rotation() == *w).collect())
}

fn realization(_: &Config) -> Result<(bool, String)> {
    let (mut checked, mut exceptions) = (0, 0);
    for d in 2..=5 {
        for n in 2..=8 {
            for w in maximal_words(d, n)? {
                let nu = Angle::from_word(&w).kneading_sequence()?;
                if nu.body() != &w.digits()[..n - 1] || w.last() as u32 > d - 2 {
                    exceptions += 1;
                }
                checked += 1;
            }
        }
    }
    Ok((exceptions == 0, format!("{checked} maximal angles, {exceptions} exceptions")))
}

/// Divisor scan: the shortest prefix whose power rebuilds the word.
fn root_by_divisor_scan(digits: &[u8]) -> (Vec<u8>, usize) {
    let n = digits.len();
    for p in (1..=n).filter(|p| n % p == 0) {
        if digits.iter().enumerate().all(|(i, &x)| x == digits[i % p]) {
            return (digits[..p].to_vec(), n / p);
        }
    }
    (digits.to_vec(), 1)
}

fn word_lemmas(config: &Config) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut failures = 0;
    for _ in 0..10_000 {
        let d = rng.gen_range(2..=4u32);
        let len = rng.gen_range(1..=12usize);
        let mut digits: Vec<u8> = (0..len).map(|_| rng.gen_range(0..d) as u8).collect();
        if rng.gen_bool(0.5) {
            let k = rng.gen_range(2..=4);
            digits = digits.iter().copied().cycle().take(len * k).collect();
        }
        let w = Word::new(digits.clone(), d)?;
        let (root, k) = w.primitive_root();
        let (oracle, oracle_k) = root_by_divisor_scan(&digits);
        if root.digits() != &oracle[..] || k != oracle_k || root.pow(k) != w {
            failures += 1;
        }
    }
    let mut variants = 0;
    for d in 2..=4u32 {
        for len in 2..=16usize {
            for p in (1..len).filter(|p| len % p == 0) {
                for index in 0..(d as u64).pow(p as u32) {
                    let u = Word::from_index(index, p, d)?;
                    if !u.is_primitive() {
                        continue;
                    }
                    let w = u.pow(len / p);
                    for e in (0..d as u8).filter(|&e| e != w.last()) {
                        variants += 1;
                        if !w.with_last(e)?.is_primitive() {
                            failures += 1;
                        }
                    }
                }
            }
        }
    }
    let mut sequences = 0;
    for d in 2..=4u32 {
        for n in 2..=8usize {
            for index in 0..(d as u64).pow(n as u32 - 1) {
                let body = Word::from_index(index, n - 1, d)?;
                let nu = KneadingSequence::new(body.digits().to_vec(), d)?;
                let all = all_cyclic_expressions(&nu);
                if all.len() > 1 || cyclic_expression(&nu) != all.into_iter().next() {
                    failures += 1;
                }
                sequences += 1;
            }
        }
    }
    Ok((failures == 0, format!("10000 random roots, {variants} last-digit variants, {sequences} kneading sequences, {failures} failures")))
}

fn connectivity(config: &Config) -> Result<(bool, String)> {
    let (mut plans, mut failures) = (0, Vec::new());
    for d in 2..=4u32 {
        for n in 2..=7usize {
            let special = special_word(d, n)?;
            let bound = (d - 1) * n as u32 - 1;
            for w in exact_period_words(d, n)? {
                let plan = connect(d, n, &w)?;
                let increasing = plan.digit_sums.windows(2).all(|p| p[0] < p[1]);
                let total = plan.digit_sums.last().unwrap() - plan.digit_sums[0];
                let image = plan.apply(&w);
                if !increasing || total > bound || image != plan.target || image.maximal_rotation() != special {
                    failures.push(format!("d={d} n={n} {w}"));
                }
                plans += 1;
            }
            if !transitivity_certificate(d, n, config.enumeration_budget)?.connected {
                failures.push(format!("d={d} n={n} not connected"));
            }
        }
    }
    Ok((failures.is_empty(), format!("{plans} plans; failures: {}", if failures.is_empty() { "none".into() } else { failures.join(", ") })))
}

fn tolerance(config: &Config) -> PoleTolerance {
    PoleTolerance { merge: config.merge_tol, collision: config.collision_tol }
}

fn disk_point(rng: &mut ChaCha8Rng, r: f64) -> C64 {
    C64::from_polar(r * rng.gen::<f64>().sqrt(), std::f64::consts::TAU * rng.gen::<f64>())
}

fn random_qd(rng: &mut ChaCha8Rng, doubles: bool, tol: PoleTolerance) -> Result<QuadDiff> {
    let count = rng.gen_range(1..5);
    let terms: Vec<Term> = (0..count)
        .map(|_| {
            let mut a = disk_point(rng, 2.0);
            if a.norm() < 0.05 {
                a += 0.1;
            }
            let c2 = if doubles { disk_point(rng, 1.0) } else { C64::new(0.0, 0.0) };
            Term { a, c2, c1: disk_point(rng, 2.0) }
        })
        .collect();
    QuadDiff::from_terms(terms, tol)
}

/// Worst relative error of the closed-form pushforward against preimage
/// sums. With `degree = None` the cases cycle through `d = 2, 3, 4` and
/// alternate between simple and double poles.
pub fn levin_sample(config: &Config, degree: Option<u32>, cases: usize, points: usize) -> Result<f64> {
    let tol = tolerance(config);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut worst: f64 = 0.0;
    for case in 0..cases {
        let d = degree.unwrap_or(2 + case as u32 % 3);
        let c = disk_point(&mut rng, 1.5);
        let q = random_qd(&mut rng, case % 2 == 0, tol)?;
        let push = pushforward(d, c, &q, tol)?;
        let mut checked = 0;
        while checked < points {
            let z = disk_point(&mut rng, 3.0);
            if push.terms().iter().any(|t| (z - t.a).norm() < 0.05) {
                continue;
            }
            let oracle = pushforward_bruteforce(d, c, &q, z)?;
            worst = worst.max((push.eval(z) - oracle).norm() / oracle.norm());
            checked += 1;
        }
    }
    Ok(worst)
}

/// Smallest margin `||Q||_V - ||Q||_U` over random simple-pole `Q`, and
/// whether every case satisfied the full chain of inequalities.
pub fn contraction_sample(config: &Config, d: u32, cases: usize, radius: f64) -> Result<(bool, f64)> {
    let tol = tolerance(config);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (mut holds, mut margin) = (true, f64::INFINITY);
    for _ in 0..cases {
        let c = disk_point(&mut rng, 1.0);
        let q = random_qd(&mut rng, false, tol)?;
        let report = contraction_check(d, c, &q, radius, tol)?;
        holds &= report.holds;
        margin = margin.min(report.disk.value - report.preimage.value);
    }
    Ok((holds, margin))
}

fn levin(config: &Config) -> Result<(bool, String)> {
    let worst = levin_sample(config, None, 50, 100)?;
    let killed = pushforward(2, C64::new(0.3, -0.4), &QuadDiff::simple(C64::new(0.0, 0.0), C64::new(1.0, 0.0)), tolerance(config))?.is_zero();
    Ok((worst < 1e-9 && killed, format!("worst relative error {worst:.3e} over 5000 points; f_*(dz^2/z) = 0: {killed}")))
}

fn norms(config: &Config) -> Result<(bool, String)> {
    let q = QuadDiff::simple(C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    let mut ok = true;
    let mut detail = Vec::new();
    for r in [1.0, 2.5] {
        let n = qd_norm(&q, &Region::Disk { center: C64::new(0.0, 0.0), radius: r })?;
        let rel = (n.value / (std::f64::consts::TAU * r) - 1.0).abs();
        ok &= rel < 1e-3;
        detail.push(format!("R={r}: rel err {rel:.2e}"));
    }
    let (holds, margin) = contraction_sample(config, 2, 20, 3.0)?;
    ok &= holds && margin > 0.0;
    detail.push(format!("20 contractions, smallest margin {margin:.3e}"));
    Ok((ok, detail.join("; ")))
}

fn division(_: &Config) -> Result<(bool, String)> {
    let mut failures = Vec::new();
    let mut count = 0;
    for d in 2..=3u32 {
        let mut cache = IterateCache::default();
        for m in 1..=6usize {
            for s in 1..=6 / m {
                let q = crate::exact::dynatomic_factor_cached(&mut cache, d, m, s)?;
                let pm = cache.p(d, m).clone();
                if q.mul(&pm) != *cache.p(d, m * s) {
                    failures.push(format!("d={d} m={m} s={s}"));
                }
                count += 1;
            }
        }
    }
    let p1 = iterate_poly(2, 1).sub(&ExactPoly2::monomial(1, 0));
    let expected = ExactPoly2::monomial(2, 0).sub(&ExactPoly2::monomial(1, 0)).add(&ExactPoly2::monomial(0, 1));
    let unit = crate::exact::dynatomic_factor(2, 1, 1)? == ExactPoly2::monomial(0, 0);
    let ok = failures.is_empty() && p1 == expected && unit;
    Ok((ok, format!("{count} divisions exact, f_c(z) - z = z^2 - z + c: {}, quotient 1: {unit}", p1 == expected)))
}

fn enumeration(config: &Config) -> Result<(bool, String)> {
    let mut ok = true;
    let mut detail = Vec::new();
    for (n, p, q) in [(1usize, 1i64, 4i64), (2, -3, 4), (3, -7, 4)] {
        let report = parabolic_parameters(2, n, config.resultant_degree_budget)?;
        let target = C64::new(p as f64 / q as f64, 0.0);
        let found = report.parameters.iter().any(|x| (x.c - target).norm() < 1e-10);
        let worst = report.parameters.iter().map(|x| x.residuals().0.max(x.residuals().1)).fold(0.0, f64::max);
        let exact = crate::exact::parabolic_resultant(2, n, config.resultant_degree_budget)?;
        ok &= found && worst < 1e-8 && vanishes_at(&exact, p, q);
        detail.push(format!("n={n}: {} parameters, {p}/{q} found: {found}, worst residual {worst:.1e}", report.parameters.len()));
    }
    Ok((ok, detail.join("; ")))
}

fn certificates(config: &Config) -> Result<(bool, String)> {
    let tol = tolerance(config);
    let mut ok = true;
    let mut detail = Vec::new();
    let airplane = snap_parabolic(2, C64::new(-1.75, 0.0), 3)?;
    let root = land_parameter_ray(3, &angle(9, 26, 3)?, &config.ray)?;
    let cubic = root.parabolic.ok_or(crate::error::Error::NonConvergence("landing of 9/26"))?;
    for (name, d, c0, z0, ell) in [
        ("1/4", 2, C64::new(0.25, 0.0), C64::new(0.5, 0.0), 1),
        ("-7/4", 2, airplane.c, airplane.z, 3),
        ("gamma(9/26)", 3, cubic.c, cubic.z, 3),
    ] {
        let r = case2_certificate(d, c0, z0, ell, tol)?;
        ok &= r.residual < 1e-6 && r.dp_dc.norm() > 0.05;
        detail.push(format!("case2 {name}: residual {:.1e}, |dP/dc| {:.3}", r.residual, r.dp_dc.norm()));
    }
    let r = double_pole_certificate(2, C64::new(-0.75, 0.0), C64::new(-0.5, 0.0), 1, tol)?;
    ok &= (r.rho_dot - 1.0).norm() < 1e-6 && r.residual < 1e-10;
    detail.push(format!("double pole -3/4: rho_dot {:.9}, residual {:.1e}", r.rho_dot.re, r.residual));
    let lambda = C64::from_polar(1.0, std::f64::consts::TAU / 3.0);
    let r = double_pole_certificate(2, lambda / 2.0 - lambda * lambda / 4.0, lambda / 2.0, 1, tol)?;
    ok &= r.rho_dot.norm() > 0.1 && r.residual < 1e-8;
    detail.push(format!("double pole rabbit root: |rho_dot| {:.3}, residual {:.1e}", r.rho_dot.norm(), r.residual));
    let jet = jet_normal_form(2, C64::new(-0.75, 0.0), C64::new(-0.5, 0.0), 1, 2, 1e-8)?;
    let jet_ok = jet.a0.norm() < 1e-8 && jet.a2.norm() < 1e-8 && (jet.a1 - 1.0).norm() < 1e-8;
    ok &= jet_ok;
    detail.push(format!("jet (0, 1, 0): {jet_ok}"));
    Ok((ok, detail.join("; ")))
}

fn ray_landing(config: &Config) -> Result<(bool, String)> {
    // landing estimate and the deepest raw sample
    let land = |p: u64, q: u64, d: u32| -> Result<Option<(C64, C64)>> {
        let ray = land_parameter_ray(d, &angle(p, q, d)?, &config.ray)?;
        Ok(ray.converged.then(|| (ray.landing_estimate, ray.last_sample())))
    };
    let mut ok = true;
    let mut detail = Vec::new();
    for (d, a, b, q) in [(3, 7, 9, 26), (3, 11, 19, 80), (4, 1, 4, 15)] {
        let (gap, raw) = match (land(a, q, d)?, land(b, q, d)?) {
            (Some(x), Some(y)) => ((x.0 - y.0).norm(), (x.1 - y.1).norm()),
            _ => (f64::INFINITY, f64::INFINITY),
        };
        ok &= gap < 1e-4;
        detail.push(format!("d={d} {a}/{q} & {b}/{q}: {gap:.1e} (raw samples {raw:.1e})"));
    }
    let gap = land(2, 3, 2)?.map_or(f64::INFINITY, |x| (x.0 - C64::new(-0.75, 0.0)).norm());
    ok &= gap < 1e-4;
    detail.push(format!("d=2 2/3 to -3/4: {gap:.1e}"));
    Ok((ok, detail.join("; ")))
}

fn splitting(config: &Config) -> Result<(bool, String)> {
    let a = orbit_splitting(2, C64::new(-0.75, 0.0), 2, 1e-3, config.cluster_factor)?;
    let b = orbit_splitting(2, C64::new(-1.75, 0.0), 3, 1e-3, config.cluster_factor)?;
    let ok = a.lengths == (1, 2) && b.lengths == (3, 3);
    Ok((ok, format!("-3/4: {:?}, -7/4: {:?}", a.lengths, b.lengths)))
}

fn monodromy(config: &Config) -> Result<(bool, String)> {
    let r = config.loop_radius;
    let mut ok = true;
    let mut detail = Vec::new();
    for (d, p, q, n) in [(2, 4, 7, 3), (2, 6, 7, 3), (3, 3, 4, 2), (3, 79, 80, 4)] {
        let report = loop_permutation(d, &angle(p, q, d)?, n, r, 1, config)?;
        let cycles: Vec<String> =
            report.cycles().iter().map(|c| c.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ")).collect();
        ok &= report.matches();
        if (d, p, q) == (2, 4, 7) {
            let exchanged = report.observed.get(&Word::parse("100", 2)?).map(|w| w.to_string()) == Some("101".into());
            ok &= exchanged && (report.center - C64::new(-1.75, 0.0)).norm() < 1e-10;
        }
        if (d, p, q) == (3, 3, 4) {
            ok &= report.observed.get(&Word::parse("20", 3)?).map(|w| w.to_string()) == Some("21".into());
        }
        detail.push(format!("d={d} {p}/{q}: ({}) match {}", cycles.join(")("), report.matches()));
    }
    let identity = loop_indices(2, C64::new(0.0, 0.0), r, 3, 1)?.iter().enumerate().all(|(i, j)| i == *j);
    ok &= identity;
    detail.push(format!("generic loop identity: {identity}"));
    Ok((ok, detail.join("; ")))
}
