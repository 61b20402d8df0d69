//! Simultaneous root finding and periodic points of `f_c`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::orbit::{iterate, iterate_derivs};

/// Aberth-Ehrlich iteration with Gauss-Seidel updates. `newton(z)` must
/// return `p(z)/p'(z)`. Initial guesses are equally spaced on a circle of
/// radius `radius`. Returns the approximations and whether every root met
/// `tol`; multiple roots converge only linearly and may not.
pub fn aberth_raw(degree: usize, radius: f64, newton: impl Fn(C64) -> C64, max_iter: usize, tol: f64) -> (Vec<C64>, bool) {
    let mut z: Vec<C64> = (0..degree)
        .map(|k| C64::from_polar(radius, std::f64::consts::TAU * (k as f64 + 0.25) / degree as f64))
        .collect();
    let mut done = vec![false; degree];
    for _ in 0..max_iter {
        for i in 0..degree {
            if done[i] {
                continue;
            }
            let ratio = newton(z[i]);
            let mut sum = C64::new(0.0, 0.0);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    sum += (z[i] - zj).inv();
                }
            }
            let w = ratio / (1.0 - ratio * sum);
            if w.is_finite() {
                z[i] -= w;
                done[i] = w.norm() < tol * (1.0 + z[i].norm());
            } else if !ratio.is_finite() {
                z[i] *= 0.5;
            }
        }
        if done.iter().all(|&x| x) {
            return (z, true);
        }
    }
    (z, false)
}

pub fn aberth(degree: usize, radius: f64, newton: impl Fn(C64) -> C64, max_iter: usize, tol: f64) -> Result<Vec<C64>> {
    match aberth_raw(degree, radius, newton, max_iter, tol) {
        (z, true) => Ok(z),
        _ => Err(Error::NonConvergence("Aberth iteration")),
    }
}

/// Newton correction for `f_c^n(z) - z`, robust against overflow far
/// from the filled Julia set.
pub fn newton_ratio(d: u32, c: C64, z: C64, n: usize) -> C64 {
    let mut x = z;
    let mut dx = C64::new(1.0, 0.0);
    for k in 0..n {
        if x.norm() > 1e60 {
            // z_k/z_k' propagates as r * (1 + c/z^d) / d.
            let mut r = x / dx;
            for _ in k..n {
                let xd = x.powu(d);
                r = r * (xd + c) / (d as f64 * xd);
                x = xd + c;
                if !x.is_finite() {
                    break;
                }
            }
            return r;
        }
        dx *= d as f64 * x.powu(d - 1);
        x = x.powu(d) + c;
    }
    (x - z) / (dx - 1.0)
}

/// Radius of a disk containing the filled Julia set of `f_c`.
pub fn escape_radius(d: u32, c: C64) -> f64 {
    c.norm().max(2.0f64.powf(1.0 / (d as f64 - 1.0))) + 0.1
}

/// Residual scale for `f_c^n(z) - z`: rounding in the iteration grows
/// with the derivative.
pub fn residual_scale(d: u32, c: C64, z: C64, n: usize) -> f64 {
    let der = iterate_derivs(d, c, z, n);
    1.0 + der.dz.norm() * (1.0 + z.norm())
}

/// Newton polish on `f_c^n(z) = z`.
pub fn polish(d: u32, c: C64, mut z: C64, n: usize, steps: usize) -> C64 {
    for _ in 0..steps {
        let w = newton_ratio(d, c, z, n);
        if !w.is_finite() {
            break;
        }
        z -= w;
        if w.norm() < 1e-16 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

fn sort_points(v: &mut [C64]) {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// All `d^n` roots of `f_c^n(z) - z`, sorted by `(re, im)`.
pub fn periodic_points(d: u32, c: C64, n: usize) -> Result<Vec<C64>> {
    let degree = (d as usize).pow(n as u32);
    let radius = escape_radius(d, c);
    let (mut roots, converged) = aberth_raw(degree, radius, |z| newton_ratio(d, c, z, n), 1000, 1e-14);
    if !converged && roots.iter().any(|&z| !(relative_residual(d, c, z, n) < 1e-8)) {
        return Err(Error::NonConvergence("periodic points"));
    }
    for z in roots.iter_mut() {
        *z = polish(d, c, *z, n, 3);
    }
    sort_points(&mut roots);
    Ok(roots)
}

/// `|f_c^n(z) - z|` relative to [`residual_scale`].
pub fn relative_residual(d: u32, c: C64, z: C64, n: usize) -> f64 {
    (iterate(d, c, z, n) - z).norm() / residual_scale(d, c, z, n)
}

/// The smallest `m | n` with `f_c^m(z) = z` within `tol` (relative).
pub fn period_of(d: u32, c: C64, z: C64, n: usize, tol: f64) -> usize {
    (1..=n)
        .filter(|m| n % m == 0)
        .find(|&m| relative_residual(d, c, z, m) < tol)
        .unwrap_or(n)
}

/// Roots of exact period `n`: those that are not roots of `f^m - z` for a
/// proper divisor `m`. Unreliable near parabolic parameters.
pub fn exact_period_points(d: u32, c: C64, n: usize) -> Result<Vec<C64>> {
    Ok(periodic_points(d, c, n)?.into_iter().filter(|&z| period_of(d, c, z, n, 1e-8) == n).collect())
}

/// Number of points of exact period `n`: sum over `m | n` of
/// `mu(n/m) d^m`.
pub fn exact_period_count(d: u32, n: usize) -> usize {
    fn mobius(mut k: usize) -> i64 {
        let mut result = 1;
        let mut p = 2;
        while p * p <= k {
            if k % p == 0 {
                k /= p;
                if k % p == 0 {
                    return 0;
                }
                result = -result;
            }
            p += 1;
        }
        if k > 1 {
            result = -result;
        }
        result
    }
    let total: i64 = (1..=n).filter(|m| n % m == 0).map(|m| mobius(n / m) * (d as i64).pow(m as u32)).sum();
    total as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_z4_minus_z() {
        let roots = periodic_points(2, C64::new(0.0, 0.0), 2).unwrap();
        let omega = C64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        for expected in [C64::new(0.0, 0.0), C64::new(1.0, 0.0), omega, omega.conj()] {
            assert!(roots.iter().any(|r| (r - expected).norm() < 1e-12));
        }
    }

    #[test]
    fn period_two_orbit_of_basilica() {
        let c = C64::new(-1.0, 0.0);
        let exact = exact_period_points(2, c, 2).unwrap();
        assert_eq!(exact.len(), 2);
        assert!(exact.iter().any(|z| z.norm() < 1e-12));
        assert!(exact.iter().any(|z| (z + 1.0).norm() < 1e-12));
    }

    #[test]
    fn cubic_period_three_residuals() {
        let c = C64::new(0.3, 0.1);
        let roots = periodic_points(3, c, 3).unwrap();
        assert_eq!(roots.len(), 27);
        for z in &roots {
            assert!(relative_residual(3, c, *z, 3) < 1e-10);
        }
        let sum: C64 = roots.iter().sum();
        // f^3(z) - z = z^27 + 9c z^25 + ..., so the roots sum to zero
        assert!(sum.norm() < 1e-9);
        assert_eq!(exact_period_points(3, c, 3).unwrap().len(), exact_period_count(3, 3));
    }

    #[test]
    fn multiple_roots_at_parabolic_parameter() {
        let c = C64::new(-0.75, 0.0);
        let roots = periodic_points(2, c, 2).unwrap();
        let near = roots.iter().filter(|z| (*z + 0.5).norm() < 1e-4).count();
        assert_eq!(near, 3);
    }

    #[test]
    fn counts() {
        assert_eq!(exact_period_count(2, 3), 6);
        assert_eq!(exact_period_count(2, 4), 12);
        assert_eq!(exact_period_count(3, 4), 72);
        assert_eq!(exact_period_count(2, 6), 54);
    }
}
