use core::fmt;

use alloc::string::String;
use alloc::vec::Vec;

use crate::angle::{check_degree, Angle};
use crate::error::{Error, Result};
use crate::word::Word;

/// Label of the arc of the circle cut at the points `(theta + k)/d` that
/// contains `t`. The arc through 0 is labelled 0 and labels increase
/// counterclockwise. `None` when `t` is itself a cut point.
pub fn arc_label(t: &Angle, theta: &Angle) -> Option<u8> {
    let d = theta.degree();
    let mut below = 0u32;
    for k in 0..d {
        match t.cmp_boundary(theta, k) {
            core::cmp::Ordering::Equal => return None,
            core::cmp::Ordering::Greater => below += 1,
            core::cmp::Ordering::Less => {}
        }
    }
    Some((below % d) as u8)
}

/// `nu_1 ... nu_{n-1} *` for a periodic angle of exact period `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KneadingSequence {
    body: Vec<u8>,
    degree: u32,
}

impl KneadingSequence {
    pub fn new(body: Vec<u8>, degree: u32) -> Result<Self> {
        check_degree(degree)?;
        if let Some(&e) = body.iter().find(|&&e| e as u32 >= degree) {
            return Err(Error::InvalidDigit { digit: e as u32, degree });
        }
        Ok(KneadingSequence { body, degree })
    }

    /// Parses strings such as `"12102*"`.
    pub fn parse(s: &str, degree: u32) -> Result<Self> {
        let s = s.trim();
        let body = s.strip_suffix('*').ok_or_else(|| Error::Parse(s.into()))?;
        let digits = body
            .chars()
            .map(|ch| ch.to_digit(10).map(|v| v as u8).ok_or_else(|| Error::Parse(s.into())))
            .collect::<Result<Vec<u8>>>()?;
        KneadingSequence::new(digits, degree)
    }

    pub(crate) fn of(theta: &Angle) -> Result<Self> {
        let n = theta.period()?;
        if theta.is_zero() {
            return Err(Error::ZeroAngle);
        }
        let mut body = Vec::with_capacity(n - 1);
        let mut a = *theta;
        for _ in 1..n {
            let label = arc_label(&a, theta).ok_or(Error::Inconsistent("interior boundary hit in kneading sequence"))?;
            body.push(label);
            a = a.tau();
        }
        if arc_label(&a, theta).is_some() {
            return Err(Error::Inconsistent("kneading sequence does not close with a star"));
        }
        Ok(KneadingSequence { body, degree: theta.degree() })
    }

    pub fn body(&self) -> &[u8] {
        &self.body
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Period `n`; the star sits at position `n`.
    pub fn period(&self) -> usize {
        self.body.len() + 1
    }

    /// The body as a word, or `None` when the period is one.
    pub fn body_word(&self) -> Option<Word> {
        if self.body.is_empty() {
            None
        } else {
            Some(Word::new(self.body.clone(), self.degree).expect("digits were validated"))
        }
    }
}

impl fmt::Display for KneadingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s: String = self.body.iter().map(|&e| char::from(b'0' + e)).collect();
        s.push('*');
        f.write_str(&s)
    }
}

/// `nu = (w^(s-1) w_*)` with `w` primitive of length `t`, `n = t s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicExpression {
    pub w: Word,
    pub s: usize,
}

impl CyclicExpression {
    pub fn t(&self) -> usize {
        self.w.len()
    }

    pub fn n(&self) -> usize {
        self.w.len() * self.s
    }

    /// The letter `nu_t`, last letter of `w`.
    pub fn nu_t(&self) -> u8 {
        self.w.last()
    }
}

fn matches_with_period(body: &[u8], t: usize) -> bool {
    (t..body.len()).all(|i| body[i] == body[i - t])
}

/// The cyclic expression of a kneading sequence, if it has one.
///
/// Every proper divisor `t` of `n` is tried; a match with a
/// non-primitive `w` is skipped, so at most one candidate survives.
pub fn cyclic_expression(nu: &KneadingSequence) -> Option<CyclicExpression> {
    let n = nu.period();
    let body = nu.body();
    let mut found = None;
    for t in (1..n).filter(|t| n % t == 0) {
        if !matches_with_period(body, t) {
            continue;
        }
        let w = Word::new(body[..t].to_vec(), nu.degree()).expect("digits were validated");
        if !w.is_primitive() {
            continue;
        }
        debug_assert!(found.is_none(), "two cyclic expressions for {nu}");
        found.get_or_insert(CyclicExpression { w, s: n / t });
    }
    found
}

/// Every decomposition `(w, s)` with `w` primitive, found by brute force.
/// Used to check that [`cyclic_expression`] is unique.
pub fn all_cyclic_expressions(nu: &KneadingSequence) -> Vec<CyclicExpression> {
    let n = nu.period();
    let body = nu.body();
    let mut out = Vec::new();
    for t in 1..n {
        if n % t != 0 {
            continue;
        }
        let w = Word::new(body[..t].to_vec(), nu.degree()).expect("digits were validated");
        if !w.is_primitive() {
            continue;
        }
        let s = n / t;
        let mut expected = w.pow(s - 1).digits().to_vec();
        expected.extend_from_slice(&w.digits()[..t - 1]);
        if expected == body {
            out.push(CyclicExpression { w, s });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nu(p: u64, q: u64, d: u32) -> String {
        use alloc::string::ToString;
        Angle::new(p, q, d).unwrap().kneading_sequence().unwrap().to_string()
    }

    #[test]
    fn golden_kneading() {
        assert_eq!(nu(1, 7, 3), "12102*");
        assert_eq!(nu(27, 28, 3), "22200*");
        assert_eq!(nu(28, 31, 4), "3213*");
        assert_eq!(nu(13, 14, 3), "22100*");
        assert_eq!(nu(4, 7, 2), "10*");
        assert_eq!(nu(57, 80, 3), "201*");
        assert_eq!(nu(19, 80, 3), "121*");
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(Angle::zero(2).unwrap().kneading_sequence(), Err(Error::ZeroAngle));
    }

    #[test]
    fn cyclic_examples() {
        let k = |s: &str, d| KneadingSequence::parse(s, d).unwrap();
        let e = cyclic_expression(&k("11*", 2)).unwrap();
        assert_eq!((e.w.to_string(), e.s), ("1".into(), 3));
        assert_eq!(cyclic_expression(&k("10*", 2)), None);
        let e = cyclic_expression(&k("212*", 3)).unwrap();
        assert_eq!((e.w.to_string(), e.s), ("21".into(), 2));
        assert_eq!(cyclic_expression(&k("201*", 3)), None);
    }

    #[test]
    fn arc_labels() {
        let theta = Angle::new(6, 7, 2).unwrap();
        assert_eq!(arc_label(&Angle::new(2, 3, 2).unwrap(), &theta), Some(1));
        assert_eq!(arc_label(&Angle::new(1, 3, 2).unwrap(), &theta), Some(0));
        assert_eq!(arc_label(&Angle::new(3, 7, 2).unwrap(), &theta), None);
    }
}
