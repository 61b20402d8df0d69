//! Orbits of `f_c(z) = z^d + c`, their derivatives, and order-3 jets.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

#[inline]
pub fn f(d: u32, c: C64, z: C64) -> C64 {
    z.powu(d) + c
}

/// `f_c^n(z)`.
pub fn iterate(d: u32, c: C64, mut z: C64, n: usize) -> C64 {
    for _ in 0..n {
        z = f(d, c, z);
    }
    z
}

/// Value and first and second partial derivatives of `z_n = f_c^n(z)`.
#[derive(Clone, Copy, Debug)]
pub struct Derivs {
    pub z: C64,
    /// d z_n / d z
    pub dz: C64,
    /// d z_n / d c
    pub dc: C64,
    /// d^2 z_n / d z^2
    pub dzz: C64,
    /// d^2 z_n / d z d c
    pub dzc: C64,
}

pub fn iterate_derivs(d: u32, c: C64, z0: C64, n: usize) -> Derivs {
    let df = d as f64;
    let mut z = z0;
    let (mut dz, mut dc, mut dzz, mut dzc) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    for _ in 0..n {
        let zd2 = z.powu(d - 2);
        let zd1 = zd2 * z;
        let fp = df * zd1;
        let fpp = df * (df - 1.0) * zd2;
        dzz = fpp * dz * dz + fp * dzz;
        dzc = fpp * dc * dz + fp * dzc;
        dz *= fp;
        dc = fp * dc + 1.0;
        z = zd1 * z + c;
    }
    Derivs { z, dz, dc, dzz, dzc }
}

/// Orbit `z_0, ..., z_len` with `delta_k = d z_k^(d-1)` and their
/// product over the first `len` points.
#[derive(Clone, Debug)]
pub struct OrbitData {
    pub d: u32,
    pub c: C64,
    pub z: Vec<C64>,
    pub delta: Vec<C64>,
    pub rho: C64,
}

impl OrbitData {
    pub fn new(d: u32, c: C64, z0: C64, len: usize) -> OrbitData {
        let mut z = Vec::with_capacity(len + 1);
        let mut delta = Vec::with_capacity(len);
        let mut x = z0;
        z.push(x);
        for _ in 0..len {
            delta.push(d as f64 * x.powu(d - 1));
            x = f(d, c, x);
            z.push(x);
        }
        let rho = delta.iter().product();
        OrbitData { d, c, z, delta, rho }
    }

    /// `rho_k = delta_{len-1} ... delta_k`, so `rho_0` is the multiplier.
    pub fn tail_products(&self) -> Vec<C64> {
        let len = self.delta.len();
        let mut out = vec![C64::new(1.0, 0.0); len + 1];
        for k in (0..len).rev() {
            out[k] = out[k + 1] * self.delta[k];
        }
        out
    }
}

/// `d/dc f_c^n(z)` as `1 + delta_{n-1} + delta_{n-1} delta_{n-2} + ...
/// + delta_{n-1} ... delta_1`.
pub fn dpn_dc(d: u32, c: C64, z: C64, n: usize) -> C64 {
    let orbit = OrbitData::new(d, c, z, n);
    let mut sum = C64::new(0.0, 0.0);
    let mut prod = C64::new(1.0, 0.0);
    for k in (1..=n).rev() {
        sum += prod;
        if k > 1 {
            prod *= orbit.delta[k - 1];
        }
    }
    sum
}

/// Taylor coefficients `a0 + a1 h + a2 h^2` modulo `h^3`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet3 {
    pub a0: C64,
    pub a1: C64,
    pub a2: C64,
}

impl Jet3 {
    pub fn identity() -> Jet3 {
        Jet3 { a0: C64::new(0.0, 0.0), a1: C64::new(1.0, 0.0), a2: C64::new(0.0, 0.0) }
    }

    /// `self o inner`, dropping terms of order 3 and above.
    pub fn compose(&self, inner: &Jet3) -> Jet3 {
        let (b0, b1, b2) = (inner.a0, inner.a1, inner.a2);
        Jet3 {
            a0: self.a0 + self.a1 * b0 + self.a2 * b0 * b0,
            a1: self.a1 * b1 + 2.0 * self.a2 * b0 * b1,
            a2: self.a1 * b2 + self.a2 * (b1 * b1 + 2.0 * b0 * b2),
        }
    }

    /// Jet of `h -> f_c(base + h) - target`.
    pub fn of_step(d: u32, c: C64, base: C64, target: C64) -> Jet3 {
        let df = d as f64;
        Jet3 {
            a0: f(d, c, base) - target,
            a1: df * base.powu(d - 1),
            a2: df * (df - 1.0) / 2.0 * base.powu(d - 2),
        }
    }
}

/// Order-3 jet at 0 of `F^s`, where `F(h) = f^m(z0 + h) - z0`.
///
/// For a multiplier `rho` with `rho^s = 1`, `rho != 1`, the quadratic
/// coefficient of `F^s` is `a rho^(s-1) (1 + rho + ... + rho^(s-1)) = 0`,
/// so the expected jet is `(0, 1, 0)`.
pub fn jet_normal_form(d: u32, c0: C64, z0: C64, m: usize, s: usize, tol: f64) -> Result<Jet3> {
    let orbit = OrbitData::new(d, c0, z0, m);
    let rho = orbit.rho;
    if (rho.powu(s as u32) - 1.0).norm() > tol || (rho - 1.0).norm() < tol {
        return Err(Error::MultiplierMismatch(rho));
    }
    let mut jet_f = Jet3::identity();
    for k in 0..m {
        let target = if k + 1 == m { z0 } else { orbit.z[k + 1] };
        jet_f = Jet3::of_step(d, c0, orbit.z[k], target).compose(&jet_f);
    }
    let mut out = Jet3::identity();
    for _ in 0..s {
        out = jet_f.compose(&out);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn derivative_in_c() {
        assert_eq!(dpn_dc(2, c(0.25, 0.0), c(0.5, 0.0), 1), c(1.0, 0.0));
        // fixed point -1/2 of z^2 - 3/4: delta = -1, so 1 + delta = 0
        assert!(dpn_dc(2, c(-0.75, 0.0), c(-0.5, 0.0), 2).norm() < 1e-15);
        let (d, cc, z, n) = (3, c(0.1, 0.3), c(0.2, -0.4), 4);
        let h = 1e-6;
        let fd = (iterate(d, cc + h, z, n) - iterate(d, cc - h, z, n)) / (2.0 * h);
        let exact = dpn_dc(d, cc, z, n);
        assert!((fd - exact).norm() / exact.norm() < 1e-8);
        assert!((iterate_derivs(d, cc, z, n).dc - exact).norm() < 1e-12 * exact.norm());
    }

    #[test]
    fn second_derivatives_match_differences() {
        let (d, cc, z, n) = (3, c(-0.2, 0.5), c(0.3, 0.1), 3);
        let h = 1e-5;
        let a = iterate_derivs(d, cc, z, n);
        let dzz = (iterate_derivs(d, cc, z + h, n).dz - iterate_derivs(d, cc, z - h, n).dz) / (2.0 * h);
        let dzc = (iterate_derivs(d, cc + h, z, n).dz - iterate_derivs(d, cc - h, z, n).dz) / (2.0 * h);
        assert!((dzz - a.dzz).norm() < 1e-6 * a.dzz.norm());
        assert!((dzc - a.dzc).norm() < 1e-6 * a.dzc.norm());
    }

    #[test]
    fn jets() {
        let j = jet_normal_form(2, c(-0.75, 0.0), c(-0.5, 0.0), 1, 2, 1e-9).unwrap();
        assert!(j.a0.norm() < 1e-12 && (j.a1 - 1.0).norm() < 1e-12 && j.a2.norm() < 1e-12);
        let mu = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let c0 = mu / 2.0 - mu * mu / 4.0;
        let j = jet_normal_form(2, c0, mu / 2.0, 1, 3, 1e-9).unwrap();
        assert!(j.a0.norm() < 1e-12 && (j.a1 - 1.0).norm() < 1e-12 && j.a2.norm() < 1e-12);
        assert!(matches!(jet_normal_form(2, c(0.25, 0.0), c(0.5, 0.0), 1, 2, 1e-9), Err(Error::MultiplierMismatch(_))));
    }
}
