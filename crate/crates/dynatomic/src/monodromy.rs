//! Analytic continuation of the period-`n` root set around loops in the
//! parameter plane, compared with the combinatorial prediction.

use std::collections::{BTreeMap, BTreeSet};

use dynatomic_core::engine::{permutation_cycles, predicted_move};
use dynatomic_core::parabolic::itinerary_of_angle;
use dynatomic_core::{Angle, Word};
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Config, RaySchedule};
use crate::exact::{parabolic_parameters, resultant_degree_bound};
use crate::error::{Error, Result};
use crate::orbit::{dpn_dc, iterate_derivs};
use crate::rays::{land_dynamical_ray, land_parameter_ray, parameter_ray_point, potential, trace_dynamical_ray, RayKind};
use crate::roots::{newton_ratio, periodic_points, period_of};

const MAX_CORRECTOR: usize = 5;
const SAFETY: f64 = 0.3;
const MIN_STEP: f64 = 1e-10;

/// All roots of `f_c^n(z) = z` at one parameter, with itinerary labels on
/// the roots of exact period `n`.
#[derive(Clone, Debug)]
pub struct LabeledRoots {
    pub c: C64,
    pub roots: Vec<C64>,
    pub labels: Vec<Option<Word>>,
}

impl LabeledRoots {
    pub fn labeled(&self) -> impl Iterator<Item = (&Word, C64)> {
        self.labels.iter().zip(&self.roots).filter_map(|(l, z)| l.as_ref().map(|l| (l, *z)))
    }
}

/// Signed number of times the segment `a -> b` crosses the polyline `cut`,
/// counting crossings from its right to its left as positive when the
/// polyline is followed in order.
fn crossings(a: C64, b: C64, cut: &[C64]) -> i64 {
    let cross = |u: C64, v: C64| u.re * v.im - u.im * v.re;
    let mut net = 0;
    for e in cut.windows(2) {
        let (p, q) = (e[0], e[1]);
        let (s, t) = (b - a, q - p);
        let den = cross(s, t);
        if den == 0.0 {
            continue;
        }
        let u = cross(p - a, t) / den;
        let v = cross(p - a, s) / den;
        if (0.0..1.0).contains(&u) && (0.0..1.0).contains(&v) {
            net += if cross(t, s) > 0.0 { 1 } else { -1 };
        }
    }
    net
}

/// Index of the sector of the plane cut by the `d` rays that crash into the
/// critical point, for `c` on the parameter ray of `theta`. `cut` is the ray
/// `R_c(theta)` from `c` out to far away, the image of those rays.
///
/// The image `w = f(z)` is moved straight out to `|w| = 1e8`; the preimage
/// follows in closed form, its argument gives the sector near infinity, and
/// each crossing of the cut moves the preimage into the neighbouring sector.
fn sector(d: u32, c: C64, theta: f64, cut: &[C64], z: C64) -> u8 {
    let w = z.powu(d) + c;
    let far = if w.norm() > 0.0 { w / w.norm() * 1e8 } else { C64::new(1e8, 0.0) };
    let end = z * ((far - c) / (w - c)).powf(1.0 / d as f64);
    let a = (end.arg() / std::f64::consts::TAU).rem_euclid(1.0);
    let at_infinity = (0..d).filter(|&k| (theta + k as f64) / (d as f64) < a).count() as i64;
    (at_infinity - crossings(w, far, cut)).rem_euclid(d as i64) as u8
}

/// Itineraries of all roots at `c` with respect to the dynamical partition
/// of `c` on the parameter ray of `theta`.
pub fn sector_itineraries(d: u32, c: C64, theta: &Angle, roots: &[C64], n: usize, schedule: &RaySchedule) -> Result<Vec<Word>> {
    let g = potential(RayKind::Parameter, d, c, schedule.escape_radius).ok_or(Error::NonConvergence("potential of c"))?;
    let ray = trace_dynamical_ray(d, c, theta, g, schedule)?;
    let mut cut = vec![c];
    cut.extend(ray.samples.iter().rev().copied());
    cut.push(C64::from_polar(1e12, std::f64::consts::TAU * theta.to_f64()));
    roots
        .iter()
        .map(|&z0| {
            let mut z = z0;
            let mut digits = Vec::with_capacity(n);
            for _ in 0..n {
                digits.push(sector(d, c, theta.to_f64(), &cut, z));
                z = z.powu(d) + c;
            }
            Ok(Word::new(digits, d)?)
        })
        .collect()
}

/// Labels the roots at `c`, a point outside the Multibrot set on the
/// parameter ray of `theta_base`, by their itineraries for the partition
/// cut at the rays crashing into the critical point. Every dynamical ray of
/// exact period `n` that does not bifurcate is landed, and its itinerary
/// must agree with the label of the root it lands on.
pub fn label_roots(d: u32, c: C64, theta_base: &Angle, n: usize, schedule: &RaySchedule) -> Result<LabeledRoots> {
    let roots = periodic_points(d, c, n)?;
    let itineraries = sector_itineraries(d, c, theta_base, &roots, n, schedule)?;
    let den = (d as u64).pow(n as u32) - 1;
    let angles: Vec<Angle> = (1..den)
        .map(|k| Angle::new(k, den, d))
        .collect::<std::result::Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|t| t.period().ok() == Some(n))
        .collect();
    let landings: Vec<Option<(C64, Word)>> = angles
        .par_iter()
        .map(|t| -> Result<Option<(C64, Word)>> {
            match land_dynamical_ray(d, c, t, schedule) {
                Ok(path) if path.converged => Ok(Some((path.landing_estimate, itinerary_of_angle(t, theta_base, n)?))),
                Ok(_) | Err(Error::Bifurcation(_)) => Ok(None),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    for (z, word) in landings.into_iter().flatten() {
        let (i, dist) = nearest(&roots, z);
        if dist > 1e-6 * (1.0 + z.norm()) {
            return Err(Error::UnmatchedRoot(z));
        }
        if itineraries[i] != word {
            return Err(Error::LabelConflict(roots[i]));
        }
    }
    let mut seen = BTreeSet::new();
    let mut labels = Vec::with_capacity(roots.len());
    for (z, word) in roots.iter().zip(itineraries) {
        let exact = period_of(d, c, *z, n, 1e-8) == n;
        if exact != word.is_primitive() || (exact && !seen.insert(word.clone())) {
            return Err(Error::LabelConflict(*z));
        }
        labels.push(exact.then_some(word));
    }
    Ok(LabeledRoots { c, roots, labels })
}

fn nearest(points: &[C64], z: C64) -> (usize, f64) {
    points
        .iter()
        .enumerate()
        .map(|(i, p)| (i, (p - z).norm()))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty root set")
}

fn min_separation(z: &[C64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            best = best.min((z[i] - z[j]).norm());
        }
    }
    best
}

fn correct(d: u32, c: C64, mut z: C64, n: usize) -> Option<C64> {
    for _ in 0..MAX_CORRECTOR {
        let w = newton_ratio(d, c, z, n);
        if !w.is_finite() {
            return None;
        }
        z -= w;
        if w.norm() <= 1e-12 * (1.0 + z.norm()) {
            return Some(z);
        }
    }
    None
}

fn advance(d: u32, n: usize, from: C64, to: C64, roots: &[C64], limit: f64) -> Option<Vec<C64>> {
    let step = |z: &C64| {
        let der = iterate_derivs(d, from, *z, n);
        let slope = -dpn_dc(d, from, *z, n) / (der.dz - 1.0);
        let z1 = correct(d, to, z + slope * (to - from), n)?;
        ((z1 - z).norm() < limit).then_some(z1)
    };
    if roots.len() >= 32 {
        roots.par_iter().map(step).collect()
    } else {
        roots.iter().map(step).collect()
    }
}

/// Continues every root along `path(s)`, `s` from 0 to 1. Each step must
/// move every root by less than `0.3` times the smallest distance between
/// roots; otherwise the step is halved. Returns the roots at `path(1)` and,
/// when `record` is set, the trajectory of each root.
pub fn continue_roots(
    d: u32,
    n: usize,
    roots: &[C64],
    path: impl Fn(f64) -> C64,
    max_step: f64,
    record: bool,
) -> Result<(Vec<C64>, Vec<Vec<C64>>)> {
    let mut z = roots.to_vec();
    let mut trails: Vec<Vec<C64>> = if record { z.iter().map(|&x| vec![x]).collect() } else { Vec::new() };
    let mut s = 0.0;
    let mut h = max_step;
    while s < 1.0 {
        let s1 = (s + h).min(1.0);
        let (from, to) = (path(s), path(s1));
        let limit = SAFETY * min_separation(&z);
        if !(limit > 0.0) {
            return Err(Error::TrackingAmbiguity(from));
        }
        match advance(d, n, from, to, &z, limit) {
            Some(next) => {
                z = next;
                s = s1;
                if record {
                    for (t, x) in trails.iter_mut().zip(&z) {
                        t.push(*x);
                    }
                }
                h = (2.0 * h).min(max_step);
            }
            None => {
                h /= 2.0;
                if h < MIN_STEP {
                    return Err(Error::StepUnderflow(from));
                }
            }
        }
    }
    Ok((z, trails))
}

/// The permutation `i -> j` sending each start root to the start root its
/// continuation ends at.
fn match_permutation(start: &[C64], end: &[C64], c: C64) -> Result<Vec<usize>> {
    let limit = SAFETY * min_separation(start);
    let mut seen = vec![false; start.len()];
    let mut perm = Vec::with_capacity(end.len());
    for z in end {
        let (j, dist) = nearest(start, *z);
        if dist >= limit || seen[j] {
            return Err(Error::TrackingAmbiguity(c));
        }
        seen[j] = true;
        perm.push(j);
    }
    Ok(perm)
}

fn circle(c0: C64, r: f64, phi0: f64, turns: f64) -> impl Fn(f64) -> C64 {
    move |s| c0 + C64::from_polar(r, phi0 + std::f64::consts::TAU * turns * s)
}

fn circle_step(turns: f64) -> f64 {
    1.0 / (64.0 * turns.abs().max(1.0))
}

/// Index permutation of all roots of `f_c^n(z) = z` after `turns`
/// counterclockwise turns around the circle of radius `r` about `center`,
/// based at `center + r`.
pub fn loop_indices(d: u32, center: C64, r: f64, n: usize, turns: i32) -> Result<Vec<usize>> {
    let base = center + r;
    let start = periodic_points(d, base, n)?;
    let (end, _) = continue_roots(d, n, &start, circle(center, r, 0.0, turns as f64), circle_step(turns as f64), false)?;
    match_permutation(&start, &end, base)
}

#[derive(Clone, Debug)]
pub struct PermutationReport {
    pub degree: u32,
    pub angle: Angle,
    pub n: usize,
    pub center: C64,
    pub base_point: C64,
    pub radius: f64,
    pub turns: i32,
    /// Labeled roots at the base point.
    pub labels: Vec<(Word, C64)>,
    pub observed: BTreeMap<Word, Word>,
    pub predicted: Option<BTreeMap<Word, Word>>,
    /// Trajectories of the labeled roots around the loop.
    pub paths: Vec<(Word, Vec<C64>)>,
}

impl PermutationReport {
    pub fn cycles(&self) -> Vec<Vec<Word>> {
        let support: BTreeSet<Word> = self.observed.keys().cloned().collect();
        permutation_cycles(&support, |x| self.observed[x].clone())
    }

    pub fn predicted_cycles(&self) -> Option<Vec<Vec<Word>>> {
        let predicted = self.predicted.as_ref()?;
        let support: BTreeSet<Word> = predicted.keys().cloned().collect();
        Some(permutation_cycles(&support, |x| predicted[x].clone()))
    }

    pub fn matches(&self) -> bool {
        self.predicted.as_ref() == Some(&self.observed)
    }
}

#[derive(Serialize)]
struct ReportJson {
    center: C64,
    base_point: C64,
    radius: f64,
    angle: String,
    turns: i32,
    cycles: Vec<Vec<String>>,
    predicted_cycles: Option<Vec<Vec<String>>>,
    #[serde(rename = "match")]
    matches: bool,
}

fn strings(cycles: Vec<Vec<Word>>) -> Vec<Vec<String>> {
    cycles.into_iter().map(|c| c.iter().map(Word::to_string).collect()).collect()
}

impl Serialize for PermutationReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ReportJson {
            center: self.center,
            base_point: self.base_point,
            radius: self.radius,
            angle: self.angle.to_string(),
            turns: self.turns,
            cycles: strings(self.cycles()),
            predicted_cycles: self.predicted_cycles().map(strings),
            matches: self.matches(),
        }
        .serialize(s)
    }
}

/// Angle next to `theta`, above it or below it, whose parameter ray
/// carries the labels: no angle of period `n` lies strictly between its
/// partition and that of `theta`.
pub fn label_angle(theta: &Angle, n: usize, above: bool) -> Result<Angle> {
    let d = theta.degree() as u64;
    let den = 2 * d * (d.pow(n as u32) - 1);
    let num = theta.numerator() * (den / theta.denominator());
    Ok(Angle::new(if above { num + 1 } else { num - 1 }, den, theta.degree())?)
}

/// Checks that no parabolic parameter of ray period dividing `n` other
/// than `center` lies in the closed disk of radius `r`, when the exact
/// parameters are within `budget`. Returns whether the check was made.
pub fn check_loop_disk(d: u32, center: C64, r: f64, n: usize, budget: usize) -> Result<bool> {
    if resultant_degree_bound(d, n) > budget {
        return Ok(false);
    }
    let report = parabolic_parameters(d, n, budget)?;
    for p in &report.parameters {
        let dist = (p.c - center).norm();
        if dist > 1e-8 && dist <= r {
            return Err(Error::CrowdedLoop(dist));
        }
    }
    Ok(true)
}

/// Monodromy of the period-`n` roots around the landing point of the
/// parameter ray at `theta`, traversed `turns` times counterclockwise on a
/// circle of radius `r`.
///
/// Roots are labeled on the ray just above `theta` at potential 1, carried
/// along that equipotential and down the ray at `theta` until within `10 r`
/// of the landing point, then radially onto the circle and along it to the
/// base point at angle 0.
pub fn loop_permutation(d: u32, theta: &Angle, n: usize, r: f64, turns: i32, config: &Config) -> Result<PermutationReport> {
    let schedule = &config.ray;
    let ray = land_parameter_ray(d, theta, schedule)?;
    let center = match (&ray.parabolic, ray.converged) {
        (Some(p), true) => p.c,
        _ => return Err(Error::NonConvergence("parameter ray landing")),
    };
    check_loop_disk(d, center, r, n, config.resultant_degree_budget)?;
    let base_angle = label_angle(theta, n, true)?;
    let start = parameter_ray_point(d, &base_angle, 1.0, schedule)?;
    let labeled = label_roots(d, start, &base_angle, n, schedule)?;

    let first = ray.potentials.iter().position(|&g| g <= 1.0).unwrap_or(0);
    let mut waypoints = vec![start];
    for &x in &ray.samples[first..] {
        waypoints.push(x);
        if (x - center).norm() <= 10.0 * r {
            break;
        }
    }
    let near = *waypoints.last().unwrap();
    if (near - center).norm() > 10.0 * r {
        return Err(Error::NonConvergence("ray approach to the landing point"));
    }
    let phi = (near - center).arg();
    waypoints.push(center + C64::from_polar(r, phi));

    let mut z = labeled.roots.clone();
    for pair in waypoints.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        z = continue_roots(d, n, &z, |s| a + (b - a) * s, 1.0, false)?.0;
    }
    // counterclockwise arc to the base point at angle 0
    let arc = (std::f64::consts::TAU - phi.rem_euclid(std::f64::consts::TAU)) / std::f64::consts::TAU;
    if arc > 0.0 {
        z = continue_roots(d, n, &z, circle(center, r, phi, arc), circle_step(arc), false)?.0;
    }
    let base_point = center + r;
    let (end, trails) = continue_roots(d, n, &z, circle(center, r, 0.0, turns as f64), circle_step(turns as f64), true)?;
    let perm = match_permutation(&z, &end, base_point)?;

    let mut observed = BTreeMap::new();
    for (i, j) in perm.iter().enumerate() {
        match (&labeled.labels[i], &labeled.labels[*j]) {
            (Some(a), Some(b)) => {
                observed.insert(a.clone(), b.clone());
            }
            (None, None) => {}
            _ => return Err(Error::TrackingAmbiguity(base_point)),
        }
    }
    let predicted = predicted_move(theta)?.map(|mut mv| {
        mv.winding = turns;
        observed.keys().map(|w| (w.clone(), mv.apply(w))).collect()
    });
    let labels = labeled.labels.iter().zip(&z).filter_map(|(l, x)| l.clone().map(|l| (l, *x))).collect();
    let paths = labeled.labels.iter().zip(trails).filter_map(|(l, t)| l.clone().map(|l| (l, t))).collect();
    Ok(PermutationReport { degree: d, angle: *theta, n, center, base_point, radius: r, turns, labels, observed, predicted, paths })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn label_angles_straddle_theta() {
        let theta = Angle::new(4, 7, 2).unwrap();
        let b = label_angle(&theta, 3, false).unwrap();
        assert_eq!((b.numerator(), b.denominator()), (15, 28));
        let b = label_angle(&theta, 3, true).unwrap();
        assert_eq!((b.numerator(), b.denominator()), (17, 28));
    }

    #[test]
    fn small_generic_loop_is_trivial() {
        let perm = loop_indices(2, C64::new(0.0, 0.0), 1e-2, 3, 1).unwrap();
        assert!(perm.iter().enumerate().all(|(i, j)| i == *j));
    }
}
