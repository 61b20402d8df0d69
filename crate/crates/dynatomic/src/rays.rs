//! External rays of `f_c` and parameter rays of the Multibrot set, traced
//! by Newton continuation down a ladder of potentials.

use dynatomic_core::Angle;
use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::config::RaySchedule;
use crate::error::{Error, Result};
use crate::parabolic::{snap_parabolic, ParabolicPoint};
use crate::roots::polish;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RayKind {
    Dynamical(C64),
    Parameter,
}

#[derive(Clone, Debug, Serialize)]
pub struct RayPath {
    #[serde(serialize_with = "serialize_angle")]
    pub angle: Angle,
    /// Ordered by decreasing potential.
    pub samples: Vec<C64>,
    pub potentials: Vec<f64>,
    pub landing_estimate: C64,
    pub converged: bool,
    /// The parabolic parameter a periodic parameter ray was refined to.
    pub parabolic: Option<ParabolicPoint>,
}

fn serialize_angle<S: serde::Serializer>(a: &Angle, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(a)
}

impl RayPath {
    pub fn last_sample(&self) -> C64 {
        *self.samples.last().unwrap()
    }
}

/// `w = f_c^m(x)` (dynamical) or `f_c^m(c)` with `c = x` (parameter), its
/// derivative in `x`, the smallest `|w_j|` for `j < m`, and the rounding
/// floor of `log w`.
fn orbit_with_derivative(kind: RayKind, d: u32, x: C64, m: usize) -> (C64, C64, f64, f64) {
    let (c, plus) = match kind {
        RayKind::Dynamical(c) => (c, 0.0),
        RayKind::Parameter => (x, 1.0),
    };
    let mut w = x;
    let mut dw = C64::new(1.0, 0.0);
    let mut smallest = f64::INFINITY;
    let mut sensitivity = 0.0;
    for _ in 0..m {
        smallest = smallest.min(w.norm());
        sensitivity += w.norm() / dw.norm();
        let wd1 = w.powu(d - 1);
        dw = d as f64 * wd1 * dw + plus;
        w = wd1 * w + c;
    }
    let floor = 64.0 * f64::EPSILON * (dw / w).norm() * (sensitivity + w.norm() / dw.norm());
    (w, dw, smallest, floor)
}

/// Whether the first `m` iterates of `y` stay in the same inverse branch as
/// those of `x`: each `f^j(y)` must be much closer to `f^j(x)` than to its
/// rotations by `d`-th roots of unity, which have the same image.
fn same_branch(c: C64, d: u32, x: C64, y: C64, m: usize) -> bool {
    let gap = 0.25 * 2.0 * (std::f64::consts::PI / d as f64).sin();
    let (mut a, mut b) = (x, y);
    for _ in 0..m {
        if (a - b).norm() > gap * b.norm() {
            return false;
        }
        a = a.powu(d) + c;
        b = b.powu(d) + c;
    }
    true
}

fn wrap(x: f64) -> f64 {
    let t = std::f64::consts::TAU;
    x - t * (x / t).round()
}

/// Accepted `|log f^m - (d^m G + 2 pi i tau^m t)|`, where the real part of
/// the target is at least `log R`, unless rounding allows no better.
const RESIDUAL_TOL: f64 = 1e-9;

struct Tracer<'a> {
    kind: RayKind,
    d: u32,
    angle: &'a Angle,
    schedule: &'a RaySchedule,
    log_r: f64,
}

impl Tracer<'_> {
    fn depth(&self, g: f64) -> usize {
        let mut m = 0;
        let mut scaled = g;
        while scaled < self.log_r {
            scaled *= self.d as f64;
            m += 1;
        }
        m
    }

    /// Newton for the point of potential `g` seeded at `x`.
    fn solve(&self, x0: C64, g: f64) -> Option<(C64, f64)> {
        let m = self.depth(g);
        let scaled = g * (self.d as f64).powi(m as i32);
        let arg = std::f64::consts::TAU * self.angle.tau_iterate(m).to_f64();
        let mut x = x0;
        let mut last = f64::INFINITY;
        let mut res = f64::INFINITY;
        let mut tol = RESIDUAL_TOL;
        for _ in 0..self.schedule.max_newton {
            let (w, dw, smallest, floor) = orbit_with_derivative(self.kind, self.d, x, m);
            tol = RESIDUAL_TOL.max(floor);
            if !(w.is_finite() && dw.is_finite()) || w.norm() == 0.0 {
                return None;
            }
            let lw = w.ln();
            let residual = C64::new(lw.re - scaled, wrap(lw.im - arg));
            res = residual.norm();
            let step = residual * w / dw;
            let relative = step / x;
            // Far from the set w behaves like a power of x, for which the
            // multiplicative update is exact.
            let next = if relative.norm() > 0.1 { x * (-relative).exp() } else { x - step };
            last = (next - x).norm();
            x = next;
            if !x.is_finite() {
                return None;
            }
            if res < tol && last < 1e-15 * (1.0 + x.norm()) {
                return Some((x, smallest));
            }
        }
        (res < tol && last < 1e-12 * (1.0 + x.norm())).then(|| (x, orbit_with_derivative(self.kind, self.d, x, m).2))
    }
}

/// Traces the ray down to `stop` potential, calling `checkpoint` whenever
/// the potential has dropped by `check_factor` below `first_check`; the trace ends
/// early when it returns `Some`.
fn trace<T>(
    kind: RayKind,
    d: u32,
    angle: &Angle,
    schedule: &RaySchedule,
    stop: f64,
    first_check: f64,
    check_factor: f64,
    mut checkpoint: impl FnMut(C64) -> Result<Option<T>>,
) -> Result<(Vec<C64>, Vec<f64>, Option<T>)> {
    let tracer = Tracer { kind, d, angle, schedule, log_r: schedule.escape_radius.ln() };
    let base_ratio = 0.5f64.powf(1.0 / schedule.rungs_per_halving as f64);
    let mut g = tracer.log_r;
    let mut x = C64::from_polar(schedule.escape_radius, std::f64::consts::TAU * angle.to_f64());
    let mut samples = vec![x];
    let mut potentials = vec![g];
    let mut ratio = base_ratio;
    let mut last_move = x.norm();
    let mut next_check = first_check;
    while g > stop {
        let g_next = (g * ratio).max(stop);
        match tracer.solve(x, g_next) {
            Some((y, smallest))
                if (y - x).norm() <= 4.0 * last_move + 1e-9 * (1.0 + x.norm())
                    && match kind {
                        RayKind::Dynamical(c) => same_branch(c, d, x, y, tracer.depth(g_next)),
                        RayKind::Parameter => true,
                    } =>
            {
                if let RayKind::Dynamical(_) = kind {
                    if smallest < 1e-9 {
                        return Err(Error::Bifurcation(y));
                    }
                }
                last_move = (y - x).norm();
                x = y;
                g = g_next;
                samples.push(x);
                potentials.push(g);
                ratio = (ratio * ratio).max(base_ratio);
            }
            _ => {
                ratio = ratio.sqrt();
                if 1.0 - ratio < schedule.min_ratio_step {
                    return Err(Error::NewtonDivergence(g));
                }
                continue;
            }
        }
        if g <= next_check {
            next_check = g / check_factor;
            if let Some(t) = checkpoint(x)? {
                return Ok((samples, potentials, Some(t)));
            }
        }
    }
    Ok((samples, potentials, None))
}

/// Traces `R_c(t)` down to `target` potential. For periodic `t` the landing
/// estimate is the nearby periodic point found by Newton on `f_c^n(z) = z`.
pub fn trace_dynamical_ray(d: u32, c: C64, t: &Angle, target: f64, schedule: &RaySchedule) -> Result<RayPath> {
    let (samples, potentials, _) = trace(RayKind::Dynamical(c), d, t, schedule, target, target, 1.0, |_| Ok(None::<()>))?;
    let last = *samples.last().unwrap();
    let (landing_estimate, converged) = match t.period() {
        Ok(n) => {
            let z = polish(d, c, last, n, 50);
            let ok = (crate::orbit::iterate(d, c, z, n) - z).norm() < 1e-10 * (1.0 + z.norm()) && (z - last).norm() < 1e-3;
            (z, ok)
        }
        Err(_) => (last, true),
    };
    Ok(RayPath { angle: *t, samples, potentials, landing_estimate, converged, parabolic: None })
}

/// Traces `R_c(t)` until its samples settle on a periodic point, which is
/// returned as the landing estimate. Cheaper than a fixed target potential
/// when the landing point is strongly repelling.
pub fn land_dynamical_ray(d: u32, c: C64, t: &Angle, schedule: &RaySchedule) -> Result<RayPath> {
    let n = t.period()?;
    let mut previous: Option<C64> = None;
    let (samples, potentials, found) = trace(RayKind::Dynamical(c), d, t, schedule, schedule.floor_potential, 1.0, 1.0, |x| {
        let z = polish(d, c, x, n, 50);
        let good = (crate::orbit::iterate(d, c, z, n) - z).norm() < 1e-10 * (1.0 + z.norm()) && (z - x).norm() < 1e-6;
        let agreed = good && previous.is_some_and(|p| (p - z).norm() < 1e-10);
        previous = good.then_some(z);
        Ok(agreed.then_some(z))
    })?;
    let last = *samples.last().unwrap();
    Ok(RayPath {
        angle: *t,
        samples,
        potentials,
        landing_estimate: found.unwrap_or(last),
        converged: found.is_some(),
        parabolic: None,
    })
}

/// Traces `R_{M_d}(theta)` down to `target` potential without landing
/// refinement.
pub fn trace_parameter_ray(d: u32, theta: &Angle, target: f64, schedule: &RaySchedule) -> Result<RayPath> {
    let (samples, potentials, _) = trace(RayKind::Parameter, d, theta, schedule, target, target, 1.0, |_| Ok(None::<()>))?;
    let last = *samples.last().unwrap();
    Ok(RayPath { angle: *theta, samples, potentials, landing_estimate: last, converged: true, parabolic: None })
}

/// Lands a periodic parameter ray: the ray is followed until refinement
/// of successive samples to a parabolic parameter of ray period `n` gives
/// the same point three times while the samples approach it.
pub fn land_parameter_ray(d: u32, theta: &Angle, schedule: &RaySchedule) -> Result<RayPath> {
    let n = theta.period()?;
    let mut history: Vec<(C64, f64)> = Vec::new();
    let (samples, potentials, found) = trace(RayKind::Parameter, d, theta, schedule, schedule.floor_potential, schedule.target_potential, 256.0, |x| {
        let Ok(p) = snap_parabolic(d, x, n) else {
            history.clear();
            return Ok(None);
        };
        let dist = (x - p.c).norm();
        if history.last().is_some_and(|(c, prev)| (c - p.c).norm() > 1e-10 || dist > *prev) {
            history.clear();
        }
        history.push((p.c, dist));
        Ok((history.len() >= 3).then_some(p))
    })?;
    let last = *samples.last().unwrap();
    Ok(RayPath {
        angle: *theta,
        samples,
        potentials,
        landing_estimate: found.map_or(last, |p| p.c),
        converged: found.is_some(),
        parabolic: found,
    })
}

/// A point on `R_{M_d}(theta)` at potential `g`.
pub fn parameter_ray_point(d: u32, theta: &Angle, g: f64, schedule: &RaySchedule) -> Result<C64> {
    Ok(trace_parameter_ray(d, theta, g, schedule)?.last_sample())
}

/// `log |phi|` at `x` computed from the orbit, for residual checks.
pub fn potential(kind: RayKind, d: u32, x: C64, escape_radius: f64) -> Option<f64> {
    let c = match kind {
        RayKind::Dynamical(c) => c,
        RayKind::Parameter => x,
    };
    let mut w = x;
    let mut scale = 1.0;
    for _ in 0..10_000 {
        if w.norm() > escape_radius {
            return Some(w.norm().ln() * scale);
        }
        w = w.powu(d) + c;
        scale /= d as f64;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn schedule() -> RaySchedule {
        RaySchedule::default()
    }

    #[test]
    fn zero_ray_of_z_squared() {
        let a = Angle::new(0, 1, 2).unwrap();
        let ray = trace_dynamical_ray(2, C64::new(0.0, 0.0), &a, 1e-6, &schedule()).unwrap();
        assert!(ray.samples.iter().all(|z| z.im.abs() < 1e-9 && z.re > 0.99));
        assert!((ray.landing_estimate - 1.0).norm() < 1e-12);
        assert!(ray.potentials.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn samples_have_their_potential() {
        let a = Angle::new(1, 7, 2).unwrap();
        let c = C64::new(-0.2, 0.7);
        let ray = trace_dynamical_ray(2, c, &a, 1e-3, &schedule()).unwrap();
        for (z, g) in ray.samples.iter().zip(&ray.potentials).skip(1) {
            let pot = potential(RayKind::Dynamical(c), 2, *z, 1e6).unwrap();
            assert!((pot - g).abs() < 1e-9 * g.max(1e-3), "{pot} {g}");
        }
    }

    #[test]
    fn parameter_ray_of_two_thirds() {
        let a = Angle::new(2, 3, 2).unwrap();
        let ray = land_parameter_ray(2, &a, &schedule()).unwrap();
        assert!(ray.converged);
        assert!((ray.landing_estimate - C64::new(-0.75, 0.0)).norm() < 1e-10);
    }
}
