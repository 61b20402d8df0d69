//! Quadratic differentials `q(z) dz^2` with poles of order at most two,
//! their pushforward under `z^d + c`, norms, and the smoothness
//! certificates at parabolic parameters.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::cubature::integrate_annulus;
use crate::error::{Error, Result};
use crate::orbit::{dpn_dc, iterate_derivs, OrbitData};

/// `c2/(z - a)^2 + c1/(z - a)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Term {
    pub a: C64,
    pub c2: C64,
    pub c1: C64,
}

/// A finite sum of principal parts with distinct poles.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
#[serde(transparent)]
pub struct QuadDiff {
    terms: Vec<Term>,
}

/// Pole merging thresholds: poles closer than `merge` are identified,
/// poles between `merge` and `collision` apart are an error.
#[derive(Clone, Copy, Debug)]
pub struct PoleTolerance {
    pub merge: f64,
    pub collision: f64,
}

impl Default for PoleTolerance {
    fn default() -> Self {
        PoleTolerance { merge: 1e-9, collision: 1e-6 }
    }
}

impl QuadDiff {
    pub fn zero() -> QuadDiff {
        QuadDiff::default()
    }

    pub fn simple(a: C64, c1: C64) -> QuadDiff {
        QuadDiff { terms: vec![Term { a, c2: C64::new(0.0, 0.0), c1 }] }
    }

    pub fn double(a: C64, c2: C64, c1: C64) -> QuadDiff {
        QuadDiff { terms: vec![Term { a, c2, c1 }] }
    }

    /// Builds a differential from raw terms, merging coincident poles.
    pub fn from_terms(terms: impl IntoIterator<Item = Term>, tol: PoleTolerance) -> Result<QuadDiff> {
        let mut out: Vec<Term> = Vec::new();
        for t in terms {
            let mut placed = false;
            for s in out.iter_mut() {
                let dist = (s.a - t.a).norm();
                if dist <= tol.merge {
                    s.c2 += t.c2;
                    s.c1 += t.c1;
                    placed = true;
                    break;
                }
                if dist < tol.collision {
                    return Err(Error::PoleCollision(dist));
                }
            }
            if !placed {
                out.push(t);
            }
        }
        out.retain(|t| t.c2 != C64::new(0.0, 0.0) || t.c1 != C64::new(0.0, 0.0));
        out.sort_by(|x, y| x.a.re.total_cmp(&y.a.re).then(x.a.im.total_cmp(&y.a.im)));
        Ok(QuadDiff { terms: out })
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.terms.iter().map(|t| {
            let u = (z - t.a).inv();
            t.c2 * u * u + t.c1 * u
        }).sum()
    }

    /// Sum of the moduli of the individual terms at `z`.
    pub fn eval_abs_terms(&self, z: C64) -> f64 {
        self.terms.iter().map(|t| {
            let u = (z - t.a).inv();
            (t.c2 * u * u).norm() + (t.c1 * u).norm()
        }).sum()
    }

    pub fn scale(&self, k: C64) -> QuadDiff {
        QuadDiff { terms: self.terms.iter().map(|t| Term { a: t.a, c2: t.c2 * k, c1: t.c1 * k }).collect() }
    }

    pub fn add(&self, other: &QuadDiff, tol: PoleTolerance) -> Result<QuadDiff> {
        QuadDiff::from_terms(self.terms.iter().chain(&other.terms).copied(), tol)
    }

    pub fn sub(&self, other: &QuadDiff, tol: PoleTolerance) -> Result<QuadDiff> {
        self.add(&other.scale(C64::new(-1.0, 0.0)), tol)
    }

    /// Largest coefficient modulus.
    pub fn max_coefficient(&self) -> f64 {
        self.terms.iter().map(|t| t.c2.norm().max(t.c1.norm())).fold(0.0, f64::max)
    }

    pub fn has_double_pole(&self) -> bool {
        self.terms.iter().any(|t| t.c2 != C64::new(0.0, 0.0))
    }
}

/// `f_* Q` for `f(z) = z^d + c` by the closed forms
/// `c1/(z-a) -> c1/f'(a) (1/(z-f(a)) - 1/(z-c))`,
/// `c2/(z-a)^2 -> c2/(z-f(a))^2 - c2 (d-1)/(a f'(a)) (1/(z-f(a)) - 1/(z-c))`
/// and `dz^2/z -> 0`.
pub fn pushforward(d: u32, c: C64, q: &QuadDiff, tol: PoleTolerance) -> Result<QuadDiff> {
    let zero = C64::new(0.0, 0.0);
    let mut out = Vec::with_capacity(2 * q.terms.len());
    for t in &q.terms {
        if t.a == zero {
            if t.c2 != zero {
                return Err(Error::DoublePoleAtZero);
            }
            continue;
        }
        let fa = t.a.powu(d) + c;
        let dfa = d as f64 * t.a.powu(d - 1);
        let k = t.c1 / dfa - t.c2 * (d as f64 - 1.0) / (t.a * dfa);
        out.push(Term { a: fa, c2: t.c2, c1: k });
        out.push(Term { a: c, c2: zero, c1: -k });
    }
    QuadDiff::from_terms(out, tol)
}

/// `sum over f(w) = z of q(w)/f'(w)^2`, the transfer operator evaluated
/// from the `d` preimages.
pub fn pushforward_bruteforce(d: u32, c: C64, q: &QuadDiff, z: C64) -> Result<C64> {
    let u = z - c;
    if u.norm() < 1e-8 * (1.0 + c.norm()) {
        return Err(Error::NearCriticalValue);
    }
    let root = u.powf(1.0 / d as f64);
    let mut sum = C64::new(0.0, 0.0);
    for k in 0..d {
        let w = root * C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / d as f64);
        let dfw = d as f64 * w.powu(d - 1);
        sum += q.eval(w) / (dfw * dfw);
    }
    Ok(sum)
}

/// Sum of `|q(w)/f'(w)^2|` over the preimages, the integrand of the norm on
/// `f^{-1}(V)` after changing variables.
fn pullback_abs(d: u32, c: C64, q: &QuadDiff, z: C64) -> f64 {
    let root = (z - c).powf(1.0 / d as f64);
    (0..d)
        .map(|k| {
            let w = root * C64::from_polar(1.0, std::f64::consts::TAU * k as f64 / d as f64);
            let dfw = d as f64 * w.powu(d - 1);
            q.eval(w).norm() / dfw.norm_sqr()
        })
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Region {
    Disk { center: C64, radius: f64 },
    Annulus { center: C64, inner: f64, outer: f64 },
}

impl Region {
    fn bounds(&self) -> (C64, f64, f64) {
        match *self {
            Region::Disk { center, radius } => (center, 0.0, radius),
            Region::Annulus { center, inner, outer } => (center, inner, outer),
        }
    }

    fn contains(&self, z: C64) -> bool {
        let (center, r0, r1) = self.bounds();
        let r = (z - center).norm();
        r >= r0 && r <= r1
    }
}

/// Cubature accuracy for norms.
pub const NORM_REL_TOL: f64 = 1e-7;
const NORM_MAX_CELLS: usize = 400_000;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Norm {
    pub value: f64,
    pub error: f64,
}

fn norm_of(f: impl Fn(C64) -> f64, region: &Region) -> Norm {
    let (center, r0, r1) = region.bounds();
    let (value, error) = integrate_annulus(f, center, r0, r1, NORM_REL_TOL, NORM_MAX_CELLS);
    Norm { value, error }
}

/// `||Q||_U = integral over U of |q|`.
pub fn qd_norm(q: &QuadDiff, region: &Region) -> Result<Norm> {
    if q.terms.iter().any(|t| t.c2 != C64::new(0.0, 0.0) && region.contains(t.a)) {
        return Err(Error::DoublePoleInRegion);
    }
    if q.is_zero() {
        return Ok(Norm { value: 0.0, error: 0.0 });
    }
    Ok(norm_of(|z| q.eval(z).norm(), region))
}

#[derive(Clone, Debug, Serialize)]
pub struct ContractionReport {
    pub radius: f64,
    /// `||f_* Q||_V`
    pub pushforward: Norm,
    /// `||Q||_U` with `U = f^{-1}(V)`
    pub preimage: Norm,
    /// `||Q||_V`
    pub disk: Norm,
    pub holds: bool,
}

/// Checks `||f_* Q||_V <= ||Q||_U < ||Q||_V` for `V = {|z| < R}` and a
/// nonzero `Q` with simple poles.
pub fn contraction_check(d: u32, c: C64, q: &QuadDiff, radius: f64, tol: PoleTolerance) -> Result<ContractionReport> {
    if (radius.powi(d as i32) - radius) <= c.norm() {
        return Err(Error::RegionNotCompactlyContained);
    }
    if q.has_double_pole() {
        return Err(Error::DoublePoleInRegion);
    }
    let v = Region::Disk { center: C64::new(0.0, 0.0), radius };
    let push = pushforward(d, c, q, tol)?;
    let pushforward = qd_norm(&push, &v)?;
    let preimage = norm_of(|z| pullback_abs(d, c, q, z), &v);
    let disk = qd_norm(q, &v)?;
    let holds = pushforward.value + pushforward.error < preimage.value - preimage.error
        && preimage.value + preimage.error < disk.value - disk.error;
    Ok(ContractionReport { radius, pushforward, preimage, disk, holds })
}

#[derive(Clone, Debug, Serialize)]
pub struct Case2Report {
    pub c0: C64,
    pub orbit: Vec<C64>,
    pub multiplier: C64,
    /// `dP_l/dc` at `(c0, z0)`.
    pub dp_dc: C64,
    /// Largest coefficient of `f_* Q - Q + (dP/dc) dz^2/(z - c0)`.
    pub residual: f64,
}

/// For `(f^l)'(z0) = 1`, `Q = sum rho_k/(z - z_k)` with
/// `rho_k = delta_{l-1} ... delta_k` satisfies
/// `f_* Q = Q - (dP_l/dc) dz^2/(z - c0)`.
pub fn case2_certificate(d: u32, c0: C64, z0: C64, ell: usize, tol: PoleTolerance) -> Result<Case2Report> {
    let orbit = OrbitData::new(d, c0, z0, ell);
    let closure = (orbit.z[ell] - z0).norm();
    let flatness = (orbit.rho - 1.0).norm();
    if closure > 1e-8 * (1.0 + z0.norm()) || flatness > 1e-6 {
        return Err(Error::NotParabolic(closure.max(flatness)));
    }
    let rho = orbit.tail_products();
    let q = QuadDiff::from_terms((0..ell).map(|k| Term { a: orbit.z[k], c2: C64::new(0.0, 0.0), c1: rho[k] }), tol)?;
    let dp_dc = dpn_dc(d, c0, z0, ell);
    let push = pushforward(d, c0, &q, tol)?;
    let identity = push.sub(&q, tol)?.add(&QuadDiff::simple(c0, dp_dc), tol)?;
    Ok(Case2Report {
        c0,
        orbit: orbit.z[..ell].to_vec(),
        multiplier: orbit.rho,
        dp_dc,
        residual: identity.max_coefficient(),
    })
}

/// The tuple `mu_0, ..., mu_{m-1}` with
/// `mu_{k+1} = mu_k/(d z_k^(d-1)) - (d-1)/(d z_k^d)`, indices mod `m`.
#[derive(Clone, Debug, Serialize)]
pub struct MuTuple {
    pub mu: Vec<C64>,
    /// Relative mismatch when the recursion is run once around the cycle.
    pub closure_error: f64,
    /// `|1 - 1/rho|`, the conditioning of the cyclic system.
    pub conditioning: f64,
}

pub fn mu_tuple(d: u32, orbit: &OrbitData) -> Result<MuTuple> {
    let m = orbit.delta.len();
    let step = |k: usize, mu: C64| {
        let z = orbit.z[k];
        mu / orbit.delta[k] - (d as f64 - 1.0) / (d as f64 * z.powu(d))
    };
    let mut from_zero = C64::new(0.0, 0.0);
    for k in 0..m {
        from_zero = step(k, from_zero);
    }
    let conditioning = (1.0 - orbit.rho.inv()).norm();
    if conditioning < 1e-8 {
        return Err(Error::NearSingular(conditioning));
    }
    // going around once maps mu_0 to mu_0/rho + from_zero
    let mu0 = from_zero / (1.0 - orbit.rho.inv());
    let mut mu = vec![mu0];
    for k in 0..m {
        let next = step(k, mu[k]);
        mu.push(next);
    }
    let closure_error = (mu[m] - mu0).norm() / mu0.norm().max(1e-300);
    mu.pop();
    Ok(MuTuple { mu, closure_error, conditioning })
}

/// Multiplier of the `m`-periodic point continued from `(c0, z0)` to `c`.
fn continued_multiplier(d: u32, c: C64, mut z: C64, m: usize) -> Result<C64> {
    for _ in 0..50 {
        let der = iterate_derivs(d, c, z, m);
        let step = (der.z - z) / (der.dz - 1.0);
        z -= step;
        if step.norm() < 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    let der = iterate_derivs(d, c, z, m);
    if (der.z - z).norm() > 1e-10 * (1.0 + z.norm()) {
        return Err(Error::NonConvergence("periodic point continuation"));
    }
    Ok(der.dz)
}

/// `d rho/dc` along the periodic branch by central differences with one
/// Richardson step.
pub fn multiplier_derivative(d: u32, c0: C64, z0: C64, m: usize, h: f64) -> Result<C64> {
    let diff = |h: f64| -> Result<C64> {
        let plus = continued_multiplier(d, c0 + h, z0, m)?;
        let minus = continued_multiplier(d, c0 - h, z0, m)?;
        Ok((plus - minus) / (2.0 * h))
    };
    let coarse = diff(h)?;
    let fine = diff(h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

#[derive(Clone, Debug, Serialize)]
pub struct DoublePoleReport {
    pub c0: C64,
    pub multiplier: C64,
    pub mu: MuTuple,
    /// `d rho/dc` from finite differences.
    pub rho_dot: C64,
    /// `sum mu_{k+1}`, which should equal `rho_dot/rho`.
    pub mu_sum: C64,
    /// Largest coefficient of `f_* Q - Q + (rho_dot/rho) dz^2/(z - c0)`.
    pub residual: f64,
    /// `|mu_sum - rho_dot/rho|`.
    pub identity_error: f64,
}

/// With `Q = sum 1/(z - z_k)^2 + mu_k/(z - z_k)` over a cycle of multiplier
/// `rho != 1`, `f_* Q = Q - (rho_dot/rho) dz^2/(z - c0)`.
pub fn double_pole_certificate(d: u32, c0: C64, z0: C64, m: usize, tol: PoleTolerance) -> Result<DoublePoleReport> {
    let orbit = OrbitData::new(d, c0, z0, m);
    let closure = (orbit.z[m] - z0).norm();
    if closure > 1e-8 * (1.0 + z0.norm()) {
        return Err(Error::NotParabolic(closure));
    }
    if (orbit.rho - 1.0).norm() < 1e-6 {
        return Err(Error::MultiplierOne);
    }
    let mu = mu_tuple(d, &orbit)?;
    let q = QuadDiff::from_terms(
        (0..m).map(|k| Term { a: orbit.z[k], c2: C64::new(1.0, 0.0), c1: mu.mu[k] }),
        tol,
    )?;
    let rho_dot = multiplier_derivative(d, c0, z0, m, 1e-3)?;
    let ratio = rho_dot / orbit.rho;
    let push = pushforward(d, c0, &q, tol)?;
    let identity = push.sub(&q, tol)?.add(&QuadDiff::simple(c0, ratio), tol)?;
    let mu_sum: C64 = (0..m).map(|k| mu.mu[(k + 1) % m]).sum();
    Ok(DoublePoleReport {
        c0,
        multiplier: orbit.rho,
        identity_error: (mu_sum - ratio).norm(),
        mu,
        rho_dot,
        mu_sum,
        residual: identity.max_coefficient(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    const TOL: PoleTolerance = PoleTolerance { merge: 1e-9, collision: 1e-6 };

    #[test]
    fn levin_examples() {
        assert!(pushforward(2, c(0.3, 0.2), &QuadDiff::simple(c(0.0, 0.0), c(1.0, 0.0)), TOL).unwrap().is_zero());
        let p = pushforward(2, c(0.0, 0.0), &QuadDiff::simple(c(1.0, 0.0), c(1.0, 0.0)), TOL).unwrap();
        let expected = QuadDiff::from_terms(
            [Term { a: c(1.0, 0.0), c2: c(0.0, 0.0), c1: c(0.5, 0.0) }, Term { a: c(0.0, 0.0), c2: c(0.0, 0.0), c1: c(-0.5, 0.0) }],
            TOL,
        )
        .unwrap();
        assert_eq!(p, expected);
        let v = pushforward_bruteforce(2, c(0.0, 0.0), &QuadDiff::simple(c(1.0, 0.0), c(1.0, 0.0)), c(4.0, 0.0)).unwrap();
        assert!((v - 0.5 * (1.0 / 3.0 - 0.25)).norm() < 1e-15);
        let v = pushforward_bruteforce(2, c(0.0, 0.0), &QuadDiff::simple(c(0.0, 0.0), c(1.0, 0.0)), c(1.0, 0.0)).unwrap();
        assert!(v.norm() < 1e-16);
        assert!(matches!(
            pushforward(2, c(0.0, 0.0), &QuadDiff::double(c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)), TOL),
            Err(Error::DoublePoleAtZero)
        ));
    }

    #[test]
    fn double_pole_formula_matches_oracle() {
        let q = QuadDiff::double(c(-0.5, 0.0), c(1.0, 0.0), c(0.0, 0.0));
        let cc = c(-0.75, 0.0);
        let p = pushforward(2, cc, &q, TOL).unwrap();
        for z in [c(0.3, 0.4), c(-1.2, 0.7), c(2.0, -1.0)] {
            let exact = pushforward_bruteforce(2, cc, &q, z).unwrap();
            assert!((p.eval(z) - exact).norm() < 1e-12 * exact.norm());
        }
    }

    #[test]
    fn norm_of_dz2_over_z() {
        for r in [1.0, 2.5] {
            let n = qd_norm(&QuadDiff::simple(c(0.0, 0.0), c(1.0, 0.0)), &Region::Disk { center: c(0.0, 0.0), radius: r }).unwrap();
            assert!((n.value - std::f64::consts::TAU * r).abs() < 1e-12);
        }
        assert_eq!(qd_norm(&QuadDiff::zero(), &Region::Disk { center: c(0.0, 0.0), radius: 1.0 }).unwrap().value, 0.0);
        assert!(matches!(
            qd_norm(&QuadDiff::double(c(0.1, 0.0), c(1.0, 0.0), c(0.0, 0.0)), &Region::Disk { center: c(0.0, 0.0), radius: 1.0 }),
            Err(Error::DoublePoleInRegion)
        ));
    }

    #[test]
    fn contraction_for_one_pole() {
        let r = contraction_check(2, c(0.0, 0.0), &QuadDiff::simple(c(1.0, 0.0), c(1.0, 0.0)), 3.0, TOL).unwrap();
        assert!(r.holds, "{r:?}");
        assert!(matches!(
            contraction_check(2, c(0.0, 0.0), &QuadDiff::simple(c(1.0, 0.0), c(1.0, 0.0)), 1.0, TOL),
            Err(Error::RegionNotCompactlyContained)
        ));
    }

    #[test]
    fn certificates_at_simple_roots() {
        let r = case2_certificate(2, c(0.25, 0.0), c(0.5, 0.0), 1, TOL).unwrap();
        assert!((r.dp_dc - 1.0).norm() < 1e-15);
        assert!(r.residual < 1e-12);
        let r = double_pole_certificate(2, c(-0.75, 0.0), c(-0.5, 0.0), 1, TOL).unwrap();
        assert!((r.rho_dot - 1.0).norm() < 1e-9, "{r:?}");
        assert!((r.mu.mu[0] + 1.0).norm() < 1e-15);
        assert!(r.residual < 1e-10);
        assert!(matches!(double_pole_certificate(2, c(0.25, 0.0), c(0.5, 0.0), 1, TOL), Err(Error::MultiplierOne)));
    }

    #[test]
    fn collisions_abort() {
        let terms = [Term { a: c(0.0, 0.0), c2: c(0.0, 0.0), c1: c(1.0, 0.0) }, Term { a: c(1e-7, 0.0), c2: c(0.0, 0.0), c1: c(1.0, 0.0) }];
        assert!(matches!(QuadDiff::from_terms(terms, TOL), Err(Error::PoleCollision(_))));
    }
}
