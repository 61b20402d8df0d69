//! Exact integer polynomials in `(c, z)`: iterates of `z^d + c`, the
//! dynatomic division and the parabolic resultant.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_complex::Complex64 as C64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parabolic::{snap_parabolic, ParabolicPoint};
use crate::roots::aberth_raw;

/// Univariate integer polynomial, lowest degree first.
pub type IntPoly = Vec<BigInt>;

/// Dense polynomial in `(c, z)`: `coeffs[i][j]` multiplies `z^i c^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPoly2 {
    coeffs: Vec<Vec<BigInt>>,
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
}

fn add_into(acc: &mut Vec<BigInt>, other: &[BigInt], sign: i32) {
    if acc.len() < other.len() {
        acc.resize(other.len(), BigInt::zero());
    }
    for (a, b) in acc.iter_mut().zip(other) {
        if sign >= 0 {
            *a += b;
        } else {
            *a -= b;
        }
    }
}

fn mul_poly(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl ExactPoly2 {
    pub fn zero() -> ExactPoly2 {
        ExactPoly2 { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Vec<BigInt>>) -> ExactPoly2 {
        for row in coeffs.iter_mut() {
            trim(row);
        }
        while coeffs.last().is_some_and(|r| r.is_empty()) {
            coeffs.pop();
        }
        ExactPoly2 { coeffs }
    }

    /// `z^i c^j`.
    pub fn monomial(i: usize, j: usize) -> ExactPoly2 {
        let mut coeffs = vec![Vec::new(); i + 1];
        coeffs[i] = vec![BigInt::zero(); j + 1];
        coeffs[i][j] = BigInt::one();
        ExactPoly2 { coeffs }
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.coeffs.get(i).and_then(|r| r.get(j)).cloned().unwrap_or_default()
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `z` (`None` for the zero polynomial).
    pub fn degree_z(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn degree_c(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|r| r.len().checked_sub(1)).max()
    }

    pub fn add(&self, other: &ExactPoly2) -> ExactPoly2 {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &ExactPoly2) -> ExactPoly2 {
        self.combine(other, -1)
    }

    fn combine(&self, other: &ExactPoly2, sign: i32) -> ExactPoly2 {
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < other.coeffs.len() {
            coeffs.resize(other.coeffs.len(), Vec::new());
        }
        for (row, o) in coeffs.iter_mut().zip(&other.coeffs) {
            add_into(row, o, sign);
        }
        ExactPoly2::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &ExactPoly2) -> ExactPoly2 {
        if self.is_zero() || other.is_zero() {
            return ExactPoly2::zero();
        }
        let mut coeffs = vec![Vec::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = mul_poly(a, b);
                add_into(&mut coeffs[i + j], &prod, 1);
            }
        }
        ExactPoly2::from_coeffs(coeffs)
    }

    /// Coefficients in `z` after substituting an integer for `c`.
    pub fn eval_c(&self, c: &BigInt) -> IntPoly {
        let mut out: IntPoly = self
            .coeffs
            .iter()
            .map(|row| row.iter().rev().fold(BigInt::zero(), |acc, x| acc * c + x))
            .collect();
        trim(&mut out);
        out
    }

    pub fn eval_rational(&self, c: &BigRational, z: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, row| {
            let r = row.iter().rev().fold(BigRational::zero(), |a, x| a * c + BigRational::from_integer(x.clone()));
            acc * z + r
        })
    }

    pub fn eval(&self, c: C64, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, row| {
            let r = row.iter().rev().fold(C64::new(0.0, 0.0), |a, x| a * c + x.to_f64().unwrap_or(f64::NAN));
            acc * z + r
        })
    }

    pub fn derivative_z(&self) -> ExactPoly2 {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, row)| row.iter().map(|x| x * BigInt::from(i)).collect())
            .collect();
        ExactPoly2::from_coeffs(coeffs)
    }

    /// Coefficients as decimal strings, `[[z^0 c^0, z^0 c^1, ...], ...]`.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.coeffs.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }

    /// Division by a polynomial monic in `z`; errors unless exact.
    pub fn div_exact_monic(&self, divisor: &ExactPoly2) -> Result<ExactPoly2> {
        let m = divisor.degree_z().ok_or(Error::InexactDivision)?;
        if divisor.coeffs[m] != vec![BigInt::one()] {
            return Err(Error::InexactDivision);
        }
        let Some(top) = self.degree_z() else { return Ok(ExactPoly2::zero()) };
        if top < m {
            return Err(Error::InexactDivision);
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Vec::new(); top - m + 1];
        let terms: Vec<(usize, &Vec<BigInt>)> =
            divisor.coeffs[..m].iter().enumerate().filter(|(_, r)| !r.is_empty()).collect();
        for i in (m..=top).rev() {
            let q = std::mem::take(&mut rem[i]);
            if q.is_empty() {
                continue;
            }
            for (j, row) in &terms {
                let prod = mul_poly(&q, row);
                add_into(&mut rem[i - m + j], &prod, -1);
                trim(&mut rem[i - m + j]);
            }
            quot[i - m] = q;
        }
        if rem.iter().any(|r| r.iter().any(|x| !x.is_zero())) {
            return Err(Error::InexactDivision);
        }
        Ok(ExactPoly2::from_coeffs(quot))
    }
}

/// Multiplies dense polynomials in `(w, c)` with nonnegative coefficients by
/// packing them into one big integer.
fn kronecker_mul(a: &[Vec<BigUint>], b: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let width_a = a.iter().map(|r| r.len()).max().unwrap_or(0);
    let width_b = b.iter().map(|r| r.len()).max().unwrap_or(0);
    let stride = width_a + width_b - 1;
    let sum = |p: &[Vec<BigUint>]| p.iter().flatten().fold(BigUint::zero(), |acc, x| acc + x);
    let bound = sum(a) * sum(b);
    let words = (bound.bits() as usize + 1).div_ceil(32);
    let pack = |p: &[Vec<BigUint>]| {
        let mut digits = vec![0u32; (p.len() * stride + 1) * words];
        for (i, row) in p.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                let at = (i * stride + j) * words;
                for (k, w) in x.to_u32_digits().into_iter().enumerate() {
                    digits[at + k] = w;
                }
            }
        }
        BigUint::new(digits)
    };
    let product = (pack(a) * pack(b)).to_u32_digits();
    let rows = a.len() + b.len() - 1;
    (0..rows)
        .map(|i| {
            (0..stride)
                .map(|j| {
                    let at = (i * stride + j) * words;
                    if at >= product.len() {
                        BigUint::zero()
                    } else {
                        BigUint::from_slice(&product[at..(at + words).min(product.len())])
                    }
                })
                .collect()
        })
        .collect()
}

/// `f_c^n(z)` as an exact polynomial, `n >= 1`.
pub fn iterate_poly(d: u32, n: usize) -> ExactPoly2 {
    // G_1(w) = w + c and G_{k+1} = G_k^d + c, so that f^n(z) = G_n(z^d).
    let one = BigUint::one();
    let mut g: Vec<Vec<BigUint>> = vec![vec![BigUint::zero(), one.clone()], vec![one.clone()]];
    for _ in 1..n {
        let mut power = g.clone();
        for _ in 1..d {
            power = kronecker_mul(&power, &g);
        }
        if power[0].len() < 2 {
            power[0].resize(2, BigUint::zero());
        }
        power[0][1] += &one;
        g = power;
    }
    let du = d as usize;
    let mut coeffs = vec![Vec::new(); (g.len() - 1) * du + 1];
    for (i, row) in g.into_iter().enumerate() {
        coeffs[i * du] = row.into_iter().map(|x| BigInt::from_biguint(Sign::Plus, x)).collect();
    }
    ExactPoly2::from_coeffs(coeffs)
}

/// Cache of `f^k(z) - z` for one degree.
#[derive(Default)]
pub struct IterateCache {
    map: HashMap<(u32, usize), ExactPoly2>,
}

impl IterateCache {
    /// `P_n(c, z) = f_c^n(z) - z`.
    pub fn p(&mut self, d: u32, n: usize) -> &ExactPoly2 {
        self.map.entry((d, n)).or_insert_with(|| iterate_poly(d, n).sub(&ExactPoly2::monomial(1, 0)))
    }
}

/// The quotient `P` in `f^{ms}(z) - z = (f^m(z) - z) P(c, z)`.
pub fn dynatomic_factor(d: u32, m: usize, s: usize) -> Result<ExactPoly2> {
    let mut cache = IterateCache::default();
    dynatomic_factor_cached(&mut cache, d, m, s)
}

pub fn dynatomic_factor_cached(cache: &mut IterateCache, d: u32, m: usize, s: usize) -> Result<ExactPoly2> {
    let num = cache.p(d, m * s).clone();
    let den = cache.p(d, m);
    num.div_exact_monic(den)
}

fn to_rational(p: &[BigInt]) -> Vec<BigRational> {
    p.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

fn trim_q(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
}

fn rem_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let n = b.len() - 1;
    let lead = &b[n];
    while r.len() > n {
        let top = r.len() - 1;
        let q = &r[top] / lead;
        for (j, bj) in b.iter().enumerate() {
            let t = &q * bj;
            r[top - n + j] -= t;
        }
        r.pop();
        trim_q(&mut r);
    }
    r
}

/// `Res(a, b)` of two univariate polynomials given with exact leading
/// coefficients.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut a = to_rational(a);
    let mut b = to_rational(b);
    trim_q(&mut a);
    trim_q(&mut b);
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let mut acc = BigRational::one();
    loop {
        let (m, n) = (a.len() - 1, b.len() - 1);
        if n == 0 {
            acc *= num_traits::pow(b[0].clone(), m);
            break;
        }
        if m == 0 {
            acc *= num_traits::pow(a[0].clone(), n);
            break;
        }
        let r = rem_q(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        // Res(a, b) = (-1)^{mn} Res(b, a) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r)
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc *= num_traits::pow(b[n].clone(), m - (r.len() - 1));
        a = b;
        b = r;
    }
    debug_assert!(acc.is_integer());
    acc.to_integer()
}

/// Coefficients of the polynomial of degree `< xs.len()` through the
/// given integer points, if they are all integers.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Option<IntPoly> {
    let n = xs.len();
    let mut dd: Vec<BigRational> = to_rational(ys);
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / BigRational::from_integer(&xs[i] - &xs[i - level]);
        }
    }
    let mut coeffs = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        // coeffs <- coeffs * (x - xs[k]) + dd[k]
        let mut next = vec![BigRational::zero(); n];
        for i in 0..n - 1 {
            next[i + 1] += &coeffs[i];
            next[i] -= &coeffs[i] * BigRational::from_integer(xs[k].clone());
        }
        next[0] += &dd[k];
        coeffs = next;
    }
    let mut out = Vec::with_capacity(n);
    for c in coeffs {
        if !c.is_integer() {
            return None;
        }
        out.push(c.to_integer());
    }
    trim(&mut out);
    Some(out)
}

fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn primitive(p: &[BigInt]) -> IntPoly {
    let g = content(p);
    let mut out: IntPoly = if g.is_zero() { p.to_vec() } else { p.iter().map(|x| x / &g).collect() };
    if out.last().is_some_and(|x| x.is_negative()) {
        for x in out.iter_mut() {
            *x = -&*x;
        }
    }
    out
}

/// Pseudo-remainder of `a` by `b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let mut r = a.to_vec();
    let n = b.len() - 1;
    let lead = &b[n];
    while r.len() > n && !r.is_empty() {
        let top = r.len() - 1;
        let q = r[top].clone();
        for x in r.iter_mut() {
            *x *= lead;
        }
        for (j, bj) in b.iter().enumerate() {
            r[top - n + j] -= &q * bj;
        }
        trim(&mut r);
        r = primitive_keep_sign(&r);
    }
    r
}

fn primitive_keep_sign(p: &[BigInt]) -> IntPoly {
    let g = content(p);
    if g.is_zero() || g.is_one() {
        p.to_vec()
    } else {
        p.iter().map(|x| x / &g).collect()
    }
}

/// Primitive gcd over the integers.
pub fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> IntPoly {
    let (mut a, mut b) = (primitive(a), primitive(b));
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = primitive(&prem(&a, &b));
        a = b;
        b = r;
    }
    primitive(&a)
}

/// Exact division of integer polynomials.
pub fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Result<IntPoly> {
    let mut r = a.to_vec();
    trim(&mut r);
    let n = b.len() - 1;
    if r.len() < b.len() {
        return if r.is_empty() { Ok(Vec::new()) } else { Err(Error::InexactDivision) };
    }
    let mut q = vec![BigInt::zero(); r.len() - n];
    while r.len() > n {
        let top = r.len() - 1;
        let (coef, rest) = r[top].div_rem(&b[n]);
        if !rest.is_zero() {
            return Err(Error::InexactDivision);
        }
        for (j, bj) in b.iter().enumerate() {
            r[top - n + j] -= &coef * bj;
        }
        q[top - n] = coef;
        r.pop();
        trim(&mut r);
    }
    if !r.is_empty() {
        return Err(Error::InexactDivision);
    }
    Ok(q)
}

fn derivative(p: &[BigInt]) -> IntPoly {
    p.iter().enumerate().skip(1).map(|(i, x)| x * BigInt::from(i)).collect()
}

/// Upper bound for the `c`-degree of `Res_z(P_n, dP_n/dz)`: with `c` of
/// weight `d` both polynomials are weighted of degrees `N = d^n` and
/// `N - 1`, so the resultant has weight at most `N (N - 1)`.
pub fn resultant_degree_bound(d: u32, n: usize) -> usize {
    let big_n = (d as usize).pow(n as u32);
    big_n * (big_n - 1) / d as usize
}

#[derive(Clone, Debug, Serialize)]
pub struct ParabolicReport {
    pub d: u32,
    pub n: usize,
    /// `X(c)`, lowest degree first, as decimal strings.
    pub resultant: Vec<String>,
    pub squarefree_degree: usize,
    pub parameters: Vec<ParabolicPoint>,
}

/// `X(c) = Res_z(f_c^n(z) - z, (f_c^n)'(z) - 1)`, exactly.
pub fn parabolic_resultant(d: u32, n: usize, budget: usize) -> Result<IntPoly> {
    let bound = resultant_degree_bound(d, n);
    if bound > budget {
        return Err(Error::BudgetExceeded(format!("resultant of c-degree up to {bound} (d={d}, n={n})")));
    }
    let p = iterate_poly(d, n).sub(&ExactPoly2::monomial(1, 0));
    let dp = p.derivative_z();
    let xs: Vec<BigInt> = (0..bound + 4).map(|i| BigInt::from(i as i64 - (bound as i64 + 4) / 2)).collect();
    let ys: Vec<BigInt> = xs.par_iter().map(|x| resultant(&p.eval_c(x), &dp.eval_c(x))).collect();
    let k = bound + 1;
    let poly = interpolate(&xs[..k], &ys[..k]).ok_or(Error::InexactDivision)?;
    for (x, y) in xs[k..].iter().zip(&ys[k..]) {
        if &eval_int(&poly, x) != y {
            return Err(Error::InexactDivision);
        }
    }
    Ok(poly)
}

/// Numerical roots of an integer polynomial with exact squarefree part.
pub fn squarefree_roots(poly: &[BigInt]) -> Result<(IntPoly, Vec<C64>)> {
    let g = poly_gcd(poly, &derivative(poly));
    let sf = primitive(&poly_div_exact(poly, &g)?);
    let deg = sf.len() - 1;
    if deg == 0 {
        return Ok((sf, Vec::new()));
    }
    let shift = sf.iter().map(|x| x.bits()).max().unwrap_or(0).saturating_sub(900);
    let coeffs: Vec<f64> = sf.iter().map(|x| (x >> shift).to_f64().unwrap_or(0.0)).collect();
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|x| x / lead).collect();
    let radius = 1.0 + monic[..deg].iter().map(|x| x.abs()).fold(0.0, f64::max).min(1e6);
    let cauchy = monic[..deg]
        .iter()
        .enumerate()
        .map(|(i, x)| (x.abs() * deg as f64).powf(1.0 / (deg - i) as f64))
        .fold(0.0, f64::max);
    let newton = |z: C64| {
        let mut p = C64::new(0.0, 0.0);
        let mut dp = C64::new(0.0, 0.0);
        for &a in monic.iter().rev() {
            dp = dp * z + p;
            p = p * z + a;
        }
        p / dp
    };
    let (roots, _) = aberth_raw(deg, cauchy.min(radius).max(0.5), newton, 5000, 1e-15);
    Ok((sf, roots))
}

/// Parabolic parameters of ray period `n`: exact resultant, its squarefree
/// part, and each numerical root refined through the dynamics.
pub fn parabolic_parameters(d: u32, n: usize, budget: usize) -> Result<ParabolicReport> {
    let x = parabolic_resultant(d, n, budget)?;
    let (sf, roots) = squarefree_roots(&x)?;
    let mut parameters: Vec<ParabolicPoint> = Vec::new();
    let snapped: Vec<Result<ParabolicPoint>> = roots.par_iter().map(|&c| snap_parabolic(d, c, n)).collect();
    for p in snapped {
        let p = p?;
        if parameters.iter().all(|q| (q.c - p.c).norm() > 1e-9) {
            parameters.push(p);
        }
    }
    parameters.sort_by(|a, b| a.c.re.total_cmp(&b.c.re).then(a.c.im.total_cmp(&b.c.im)));
    Ok(ParabolicReport {
        d,
        n,
        resultant: x.iter().map(|v| v.to_string()).collect(),
        squarefree_degree: sf.len() - 1,
        parameters,
    })
}

/// Whether `X(p/q) = 0` exactly.
pub fn vanishes_at(poly: &[BigInt], p: i64, q: i64) -> bool {
    let x = BigRational::new(BigInt::from(p), BigInt::from(q));
    poly.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + BigRational::from_integer(c.clone())).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> IntPoly {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn second_iterate() {
        // (z^2 + c)^2 + c = z^4 + 2c z^2 + c^2 + c
        let p = iterate_poly(2, 2);
        assert_eq!(p.rows(), &[ints(&[0, 1, 1]), vec![], ints(&[0, 2]), vec![], ints(&[1])][..]);
    }

    #[test]
    fn kronecker_matches_naive() {
        // f^3 = (f^2)^3 + c, multiplied out naively
        let g = iterate_poly(3, 2);
        let direct = g.mul(&g).mul(&g).add(&ExactPoly2::monomial(0, 1));
        assert_eq!(iterate_poly(3, 3), direct);
    }

    #[test]
    fn first_factors() {
        assert_eq!(dynatomic_factor(2, 1, 1).unwrap(), ExactPoly2::monomial(0, 0));
        // (f^2 - z)/(f - z) = z^2 + z + c + 1
        let q = dynatomic_factor(2, 1, 2).unwrap();
        assert_eq!(q.rows(), &[ints(&[1, 1]), ints(&[1]), ints(&[1])][..]);
        let q = dynatomic_factor(3, 1, 2).unwrap();
        assert_eq!(q.degree_z(), Some(6));
    }

    #[test]
    fn inexact_division_is_reported() {
        let num = iterate_poly(2, 3).sub(&ExactPoly2::monomial(1, 0));
        let den = iterate_poly(2, 2).sub(&ExactPoly2::monomial(1, 0));
        assert!(matches!(num.div_exact_monic(&den), Err(Error::InexactDivision)));
    }

    #[test]
    fn univariate_resultants() {
        // product of b over the roots 0, 1 of a
        assert_eq!(resultant(&ints(&[0, -1, 1]), &ints(&[-1, 2])), BigInt::from(-1));
        assert_eq!(resultant(&ints(&[-2, 1]), &ints(&[-5, 1])), BigInt::from(-3));
        assert_eq!(resultant(&ints(&[-1, 0, 1]), &ints(&[-1, 1])), BigInt::zero());
    }

    #[test]
    fn period_one_resultant() {
        let x = parabolic_resultant(2, 1, 256).unwrap();
        // Res(z^2 - z + c, 2z - 1) = 4c - 1
        assert_eq!(x, ints(&[-1, 4]));
        assert!(vanishes_at(&x, 1, 4));
    }

    #[test]
    fn period_two_resultant() {
        let x = parabolic_resultant(2, 2, 256).unwrap();
        assert!(vanishes_at(&x, -3, 4));
        assert!(vanishes_at(&x, 1, 4));
        let report = parabolic_parameters(2, 2, 256).unwrap();
        assert_eq!(report.squarefree_degree, 2);
        assert_eq!(report.parameters.len(), 2);
    }

    #[test]
    fn gcd_and_division() {
        // (x - 1)^2 (x + 2) and its derivative share x - 1
        let p = ints(&[2, -3, 0, 1]);
        assert_eq!(poly_gcd(&p, &derivative(&p)), ints(&[-1, 1]));
        assert_eq!(poly_div_exact(&p, &ints(&[-1, 1])).unwrap(), ints(&[-2, 1, 1]));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = ints(&[3, 0, -2, 5]);
        let xs = ints(&[-2, -1, 0, 1]);
        let ys: Vec<BigInt> = xs.iter().map(|x| eval_int(&p, x)).collect();
        assert_eq!(interpolate(&xs, &ys).unwrap(), p);
    }
}
