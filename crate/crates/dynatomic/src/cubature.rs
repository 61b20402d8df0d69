//! Globally adaptive Gauss cubature over polar rectangles.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64 as C64;

const G4_X: [f64; 4] = [-0.861_136_311_594_052_6, -0.339_981_043_584_856_3, 0.339_981_043_584_856_3, 0.861_136_311_594_052_6];
const G4_W: [f64; 4] = [0.347_854_845_137_453_9, 0.652_145_154_862_546_1, 0.652_145_154_862_546_1, 0.347_854_845_137_453_9];
const G3_X: [f64; 3] = [-0.774_596_669_241_483_4, 0.0, 0.774_596_669_241_483_4];
const G3_W: [f64; 3] = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];

#[derive(Clone, Copy, Debug)]
struct Cell {
    r: (f64, f64),
    phi: (f64, f64),
    value: f64,
    error: f64,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Cell {}
impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then(self.r.0.total_cmp(&other.r.0))
            .then(self.phi.0.total_cmp(&other.phi.0))
    }
}

fn rule<const N: usize>(f: &impl Fn(C64) -> f64, center: C64, r: (f64, f64), phi: (f64, f64), x: &[f64; N], w: &[f64; N]) -> f64 {
    let (rh, rm) = ((r.1 - r.0) / 2.0, (r.1 + r.0) / 2.0);
    let (ph, pm) = ((phi.1 - phi.0) / 2.0, (phi.1 + phi.0) / 2.0);
    let mut sum = 0.0;
    for i in 0..N {
        let rho = rm + rh * x[i];
        for j in 0..N {
            let t = pm + ph * x[j];
            sum += w[i] * w[j] * rho * f(center + C64::from_polar(rho, t));
        }
    }
    sum * rh * ph
}

fn cell(f: &impl Fn(C64) -> f64, center: C64, r: (f64, f64), phi: (f64, f64)) -> Cell {
    let value = rule(f, center, r, phi, &G4_X, &G4_W);
    let coarse = rule(f, center, r, phi, &G3_X, &G3_W);
    Cell { r, phi, value, error: (value - coarse).abs() }
}

/// Integral of `f` over the annulus `r0 <= |z - center| <= r1` with an
/// error estimate. Cells with the largest estimated error are bisected
/// along their longer side until the total error is below
/// `rel_tol * |value|` or `max_cells` is reached.
pub fn integrate_annulus(f: impl Fn(C64) -> f64, center: C64, r0: f64, r1: f64, rel_tol: f64, max_cells: usize) -> (f64, f64) {
    let (nr, nphi) = (4, 16);
    let mut heap = BinaryHeap::new();
    for i in 0..nr {
        for j in 0..nphi {
            let r = (r0 + (r1 - r0) * i as f64 / nr as f64, r0 + (r1 - r0) * (i + 1) as f64 / nr as f64);
            let tau = std::f64::consts::TAU;
            let phi = (tau * j as f64 / nphi as f64, tau * (j + 1) as f64 / nphi as f64);
            heap.push(cell(&f, center, r, phi));
        }
    }
    loop {
        let (value, error) = heap.iter().fold((0.0, 0.0), |acc, c| (acc.0 + c.value, acc.1 + c.error));
        if error <= rel_tol * value.abs() || heap.len() >= max_cells {
            return (value, error);
        }
        // refine a batch of the worst cells before re-summing
        for _ in 0..(heap.len() / 8).max(1) {
            let worst = heap.pop().unwrap();
            let radial = worst.r.1 - worst.r.0;
            let angular = (worst.r.0 + worst.r.1) / 2.0 * (worst.phi.1 - worst.phi.0);
            if radial >= angular {
                let mid = (worst.r.0 + worst.r.1) / 2.0;
                heap.push(cell(&f, center, (worst.r.0, mid), worst.phi));
                heap.push(cell(&f, center, (mid, worst.r.1), worst.phi));
            } else {
                let mid = (worst.phi.0 + worst.phi.1) / 2.0;
                heap.push(cell(&f, center, worst.r, (worst.phi.0, mid)));
                heap.push(cell(&f, center, worst.r, (mid, worst.phi.1)));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn area_and_moments() {
        let (v, _) = integrate_annulus(|_| 1.0, C64::new(0.0, 0.0), 0.0, 2.0, 1e-12, 10_000);
        assert!((v - 4.0 * std::f64::consts::PI).abs() < 1e-12);
        let (v, _) = integrate_annulus(|z| z.re * z.re, C64::new(1.0, 0.0), 0.0, 1.0, 1e-12, 10_000);
        // integral of x^2 over the unit disk centred at 1: pi/4 + pi
        assert!((v - 1.25 * std::f64::consts::PI).abs() < 1e-10);
    }

    #[test]
    fn off_center_singularity() {
        // |z - 0.5|^{-1} over the unit disk
        let (v, err) = integrate_annulus(|z| 1.0 / (z - 0.5).norm(), C64::new(0.0, 0.0), 0.0, 1.0, 1e-7, 200_000);
        // closed form: 4 E(1/2) with the complete elliptic integral E(k), k = 0.5
        let exact = 4.0 * 1.467_462_209_339_427_2;
        assert!((v - exact).abs() < 1e-5, "{v} {err}");
    }
}
