use core::cmp::Ordering;
use core::fmt;

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::kneading::KneadingSequence;
use crate::word::Word;

pub(crate) const MAX_DEN: u64 = 1 << 56;

pub(crate) fn check_degree(d: u32) -> Result<()> {
    if (2..=10).contains(&d) {
        Ok(())
    } else {
        Err(Error::InvalidDegree(d))
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// A rational point of the circle R/Z, tagged with the degree of the
/// angle-multiplying map `t -> d t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Angle {
    num: u64,
    den: u64,
    degree: u32,
}

impl Angle {
    /// Builds `num/den mod 1` in lowest terms.
    pub fn new(num: u64, den: u64, degree: u32) -> Result<Self> {
        check_degree(degree)?;
        if den == 0 || den >= MAX_DEN {
            return Err(Error::InvalidDenominator);
        }
        let num = num % den;
        let g = gcd(num, den);
        let (num, den) = if num == 0 { (0, 1) } else { (num / g, den / g) };
        Ok(Angle { num, den, degree })
    }

    pub fn zero(degree: u32) -> Result<Self> {
        Angle::new(0, 1, degree)
    }

    /// Parses `"p/q"` (or a bare integer, read mod 1).
    pub fn parse(s: &str, degree: u32) -> Result<Self> {
        let bad = || Error::Parse(s.into());
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: u64 = p.parse().map_err(|_| bad())?;
        let q: u64 = q.parse().map_err(|_| bad())?;
        Angle::new(p, q, degree)
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn to_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_periodic(&self) -> bool {
        gcd(self.den, self.degree as u64) == 1
    }

    /// Exact period under `tau`, i.e. the multiplicative order of `d`
    /// modulo the denominator.
    pub fn period(&self) -> Result<usize> {
        if !self.is_periodic() {
            return Err(Error::NotPeriodic(*self));
        }
        if self.den == 1 {
            return Ok(1);
        }
        let d = self.degree as u128;
        let q = self.den as u128;
        let mut x = d % q;
        let mut k = 1usize;
        while x != 1 {
            x = x * d % q;
            k += 1;
        }
        Ok(k)
    }

    /// `tau(theta) = d theta mod 1`.
    pub fn tau(&self) -> Angle {
        let num = (self.num as u128 * self.degree as u128 % self.den as u128) as u64;
        Angle::new(num, self.den, self.degree).expect("reduced input stays valid")
    }

    pub fn tau_iterate(&self, k: usize) -> Angle {
        let mut a = *self;
        for _ in 0..k {
            a = a.tau();
        }
        a
    }

    /// First digit of the d-ary expansion, `floor(d theta)`.
    pub fn leading_digit(&self) -> u8 {
        (self.num as u128 * self.degree as u128 / self.den as u128) as u8
    }

    /// One exact period of the d-ary expansion.
    pub fn d_expansion(&self) -> Result<Word> {
        let n = self.period()?;
        let mut digits = Vec::with_capacity(n);
        let mut a = *self;
        for _ in 0..n {
            digits.push(a.leading_digit());
            a = a.tau();
        }
        Word::new(digits, self.degree)
    }

    /// The angle with periodic expansion `.(w)(w)(w)...`.
    pub fn from_word(w: &Word) -> Angle {
        let d = w.degree() as u128;
        let mut num: u128 = 0;
        let mut den: u128 = 1;
        for &e in w.digits() {
            num = num * d + e as u128;
            den *= d;
        }
        den -= 1;
        if num == den {
            num = 0;
        }
        let g = {
            let (mut a, mut b) = (num, den);
            while b != 0 {
                let t = a % b;
                a = b;
                b = t;
            }
            a
        };
        let (num, den) = if num == 0 { (0, 1) } else { (num / g, den / g) };
        Angle::new(num as u64, den as u64, w.degree()).expect("word angles fit the denominator bound")
    }

    /// The forward orbit `theta, tau(theta), ...` over one period.
    pub fn orbit(&self) -> Result<Vec<Angle>> {
        let n = self.period()?;
        let mut out = Vec::with_capacity(n);
        let mut a = *self;
        for _ in 0..n {
            out.push(a);
            a = a.tau();
        }
        Ok(out)
    }

    /// Whether `theta` dominates its forward images, together with the
    /// orbit maximum.
    pub fn maximal_in_orbit(&self) -> Result<(bool, Angle)> {
        let orbit = self.orbit()?;
        let max = *orbit.iter().max().expect("orbit is nonempty");
        Ok((max == *self, max))
    }

    pub fn kneading_sequence(&self) -> Result<KneadingSequence> {
        KneadingSequence::of(self)
    }

    /// Compares `self` with the partition point `(theta + k)/d`.
    pub(crate) fn cmp_boundary(&self, theta: &Angle, k: u32) -> Ordering {
        let lhs = self.num as u128 * theta.degree as u128 * theta.den as u128;
        let rhs = (theta.num as u128 + k as u128 * theta.den as u128) * self.den as u128;
        lhs.cmp(&rhs)
    }

    pub(crate) fn same_degree(&self, other: &Angle) -> Result<()> {
        if self.degree == other.degree {
            Ok(())
        } else {
            Err(Error::DegreeMismatch(self.degree, other.degree))
        }
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs).then(self.degree.cmp(&other.degree))
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(p: u64, q: u64, d: u32) -> Angle {
        Angle::new(p, q, d).unwrap()
    }

    #[test]
    fn tau_examples() {
        assert_eq!(a(1, 7, 3).tau_iterate(1), a(3, 7, 3));
        assert_eq!(a(0, 1, 2).tau_iterate(5), a(0, 1, 2));
        assert_eq!(a(19, 80, 3).tau_iterate(2), a(11, 80, 3));
    }

    #[test]
    fn expansions() {
        assert_eq!(a(20, 31, 4).d_expansion().unwrap().to_string(), "22110");
        assert_eq!(a(13, 14, 3).d_expansion().unwrap().to_string(), "221001");
        assert_eq!(a(0, 1, 2).d_expansion().unwrap().to_string(), "0");
        assert!(matches!(a(1, 6, 3).d_expansion(), Err(Error::NotPeriodic(_))));
    }

    #[test]
    fn words_to_angles() {
        let w = |s: &str, d| Word::parse(s, d).unwrap();
        assert_eq!(Angle::from_word(&w("221001", 3)), a(13, 14, 3));
        assert_eq!(Angle::from_word(&w("10", 2)), a(2, 3, 2));
        assert_eq!(Angle::from_word(&w("2221", 3)), a(79, 80, 3));
        assert_eq!(Angle::from_word(&w("11", 2)), a(0, 1, 2));
    }

    #[test]
    fn maximality() {
        assert_eq!(a(5, 31, 4).maximal_in_orbit().unwrap(), (false, a(20, 31, 4)));
        assert_eq!(a(2, 3, 2).maximal_in_orbit().unwrap(), (true, a(2, 3, 2)));
        assert_eq!(a(19, 80, 3).maximal_in_orbit().unwrap(), (false, a(57, 80, 3)));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(Angle::parse("6/14", 2).unwrap().to_string(), "3/7");
        assert!(Angle::parse("x/3", 2).is_err());
        assert!(Angle::parse("1/0", 2).is_err());
        assert!(Angle::new(1, 3, 1).is_err());
    }

    #[test]
    fn periods() {
        assert_eq!(a(1, 7, 2).period().unwrap(), 3);
        assert_eq!(a(1, 2, 3).period().unwrap(), 1);
        assert_eq!(a(1, 80, 3).period().unwrap(), 4);
    }
}
