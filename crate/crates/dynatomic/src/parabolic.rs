//! Parabolic parameters: refinement, parabolic cycles and the splitting of
//! period-`n` orbits nearby.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::orbit::{iterate, iterate_derivs};
use crate::roots::periodic_points;

/// A parabolic parameter with a cycle of period `period` whose multiplier
/// is `exp(2 pi i numer/denom)`, seen from ray period `ray_period`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParabolicPoint {
    pub d: u32,
    pub c: C64,
    pub z: C64,
    pub period: usize,
    pub ray_period: usize,
    pub numer: usize,
    pub denom: usize,
}

impl ParabolicPoint {
    pub fn is_primitive(&self) -> bool {
        self.period == self.ray_period
    }

    pub fn multiplier_target(&self) -> C64 {
        C64::from_polar(1.0, std::f64::consts::TAU * self.numer as f64 / self.denom as f64)
    }

    /// `|f^p(z) - z|` and `|(f^p)'(z) - lambda|`.
    pub fn residuals(&self) -> (f64, f64) {
        let der = iterate_derivs(self.d, self.c, self.z, self.period);
        ((der.z - self.z).norm(), (der.dz - self.multiplier_target()).norm())
    }

    pub fn cycle(&self) -> Vec<C64> {
        let mut out = vec![self.z];
        for _ in 1..self.period {
            let next = iterate(self.d, self.c, *out.last().unwrap(), 1);
            out.push(next);
        }
        out
    }
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|m| n % m == 0).collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Newton on `(f^p(z) - z, (f^p)'(z) - lambda)` in `(z, c)`. The system is
/// regular at primitive roots (where `dP/dc` and the second derivative are
/// nonzero) and at satellite roots (where `lambda != 1`).
pub fn refine_parabolic(d: u32, mut c: C64, mut z: C64, p: usize, lambda: C64) -> Result<(C64, C64)> {
    for _ in 0..60 {
        let der = iterate_derivs(d, c, z, p);
        let f1 = der.z - z;
        let f2 = der.dz - lambda;
        let (a, b, cc, dd) = (der.dz - 1.0, der.dc, der.dzz, der.dzc);
        let det = a * dd - b * cc;
        if det.norm() == 0.0 || !det.is_finite() {
            return Err(Error::NonConvergence("parabolic refinement"));
        }
        let dz = (dd * f1 - b * f2) / det;
        let dc = (a * f2 - cc * f1) / det;
        z -= dz;
        c -= dc;
        if !(z.is_finite() && c.is_finite()) {
            return Err(Error::NonConvergence("parabolic refinement"));
        }
        if dz.norm() + dc.norm() < 1e-15 * (1.0 + z.norm() + c.norm()) {
            return Ok((c, z));
        }
    }
    let der = iterate_derivs(d, c, z, p);
    if (der.z - z).norm() < 1e-12 && (der.dz - lambda).norm() < 1e-10 {
        Ok((c, z))
    } else {
        Err(Error::NonConvergence("parabolic refinement"))
    }
}

/// Refines an approximate parabolic parameter of ray period `n`. Among the
/// cycles whose multiplier is nearly an `(n/p)`-th root of unity, the one
/// of smallest period is used unless a markedly better candidate exists.
pub fn snap_parabolic(d: u32, c_guess: C64, n: usize) -> Result<ParabolicPoint> {
    let mut candidates: Vec<(usize, f64, C64, C64)> = Vec::new();
    for p in divisors(n) {
        let s = (n / p) as u32;
        for z in periodic_points(d, c_guess, p)? {
            let lambda = iterate_derivs(d, c_guess, z, p).dz;
            candidates.push((p, (lambda.powu(s) - 1.0).norm(), z, lambda));
        }
    }
    let best = candidates.iter().map(|x| x.1).fold(f64::INFINITY, f64::min);
    let (p, _, z, lambda) = candidates
        .iter()
        .filter(|x| x.1 <= (3.0 * best).max(1e-9))
        .min_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)))
        .copied()
        .ok_or(Error::NonConvergence("parabolic snap"))?;
    let s = n / p;
    let turns = lambda.arg() / std::f64::consts::TAU * s as f64;
    let k = (turns.round() as i64).rem_euclid(s as i64) as usize;
    let g = gcd(k, s);
    let (numer, denom) = if k == 0 { (0, 1) } else { (k / g, s / g) };
    let target = C64::from_polar(1.0, std::f64::consts::TAU * numer as f64 / denom as f64);
    let (c, z) = refine_parabolic(d, c_guess, z, p, target)?;
    Ok(ParabolicPoint { d, c, z, period: p, ray_period: n, numer, denom })
}

/// Points of period dividing `n` at `c0` where `(f^n)'` is within `tol` of 1,
/// with numerically coincident roots merged.
pub fn parabolic_points(d: u32, c0: C64, n: usize, tol: f64) -> Result<Vec<C64>> {
    let mut out: Vec<C64> = Vec::new();
    for z in periodic_points(d, c0, n)? {
        if (iterate_derivs(d, c0, z, n).dz - 1.0).norm() < tol && out.iter().all(|w| (w - z).norm() > 1e-5) {
            out.push(z);
        }
    }
    Ok(out)
}

/// Orbits of `f_c` on the roots of `f_c^n(z) - z`, each as a list of
/// indices into `roots`.
pub fn orbits_of(d: u32, c: C64, roots: &[C64]) -> Vec<Vec<usize>> {
    let nearest = |w: C64| {
        roots
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - w).norm().total_cmp(&(b.1 - w).norm()))
            .map(|x| x.0)
            .unwrap()
    };
    let image: Vec<usize> = roots.iter().map(|&z| nearest(iterate(d, c, z, 1))).collect();
    let mut seen = vec![false; roots.len()];
    let mut out = Vec::new();
    for start in 0..roots.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            orbit.push(i);
            i = image[i];
        }
        out.push(orbit);
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitReport {
    pub c0: C64,
    pub radius: f64,
    pub parabolic_orbit: Vec<C64>,
    /// Lengths of the two nearby orbits, ascending.
    pub lengths: (usize, usize),
}

/// Samples `c = c0 + r e^{i phi}` and reports the lengths of the periodic
/// orbits that stay within `cluster_factor * sqrt(r)` of the parabolic
/// cycle of `c0`.
pub fn orbit_splitting(d: u32, c0: C64, n: usize, r: f64, cluster_factor: f64) -> Result<SplitReport> {
    let parabolic = parabolic_points(d, c0, n, 1e-3)?;
    if parabolic.is_empty() {
        return Err(Error::NotParabolic((iterate_derivs(d, c0, c0, n).dz - 1.0).norm()));
    }
    let radius = cluster_factor * r.sqrt();
    let mut lengths: Option<(usize, usize)> = None;
    for k in 0..4 {
        let c = c0 + C64::from_polar(r, std::f64::consts::FRAC_PI_2 * k as f64 + 0.1);
        let roots = periodic_points(d, c, n)?;
        let mut near: Vec<usize> = orbits_of(d, c, &roots)
            .into_iter()
            .filter(|orbit| {
                orbit.iter().all(|&i| parabolic.iter().any(|p| (roots[i] - p).norm() < radius))
            })
            .map(|orbit| orbit.len())
            .collect();
        near.sort_unstable();
        if near.len() != 2 {
            return Err(Error::ClusterAmbiguous(format!("{} nearby orbits at radius {r:e}", near.len())));
        }
        let pair = (near[0], near[1]);
        if lengths.is_some_and(|l| l != pair) {
            return Err(Error::ClusterAmbiguous("orbit lengths vary around the circle".into()));
        }
        lengths = Some(pair);
    }
    Ok(SplitReport { c0, radius: r, parabolic_orbit: parabolic, lengths: lengths.unwrap() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snaps_known_roots() {
        let p = snap_parabolic(2, C64::new(-0.74, 0.01), 2).unwrap();
        assert!((p.c - C64::new(-0.75, 0.0)).norm() < 1e-13);
        assert_eq!((p.period, p.numer, p.denom), (1, 1, 2));
        let p = snap_parabolic(2, C64::new(-1.76, 0.001), 3).unwrap();
        assert!((p.c - C64::new(-1.75, 0.0)).norm() < 1e-13, "{p:?}");
        assert!(p.is_primitive());
        let p = snap_parabolic(2, C64::new(0.26, 0.0), 1).unwrap();
        assert!((p.c - C64::new(0.25, 0.0)).norm() < 1e-13);
        let p = snap_parabolic(2, C64::new(-0.12, 0.74), 3).unwrap();
        let mu = C64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        assert!((p.c - (mu / 2.0 - mu * mu / 4.0)).norm() < 1e-13);
        assert_eq!((p.period, p.denom), (1, 3));
    }

    #[test]
    fn splitting() {
        let s = orbit_splitting(2, C64::new(-0.75, 0.0), 2, 1e-3, 10.0).unwrap();
        assert_eq!(s.lengths, (1, 2));
        let s = orbit_splitting(2, C64::new(-1.75, 0.0), 3, 1e-3, 10.0).unwrap();
        assert_eq!(s.lengths, (3, 3));
    }
}
