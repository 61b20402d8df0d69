use core::fmt;

use alloc::string::String;
use alloc::vec::Vec;

use crate::angle::check_degree;
use crate::error::{Error, Result};

/// A finite nonempty word over the alphabet `{0, ..., d-1}`.
///
/// When a word is used as the itinerary of a periodic point it is read
/// cyclically: `w` stands for the infinite sequence `www...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    digits: Vec<u8>,
    degree: u32,
}

impl Word {
    pub fn new(digits: Vec<u8>, degree: u32) -> Result<Self> {
        check_degree(degree)?;
        if digits.is_empty() {
            return Err(Error::EmptyWord);
        }
        if let Some(&e) = digits.iter().find(|&&e| e as u32 >= degree) {
            return Err(Error::InvalidDigit { digit: e as u32, degree });
        }
        Ok(Word { digits, degree })
    }

    /// Parses a string of decimal digits.
    pub fn parse(s: &str, degree: u32) -> Result<Self> {
        let digits = s
            .trim()
            .chars()
            .map(|ch| ch.to_digit(10).map(|v| v as u8).ok_or_else(|| Error::Parse(s.into())))
            .collect::<Result<Vec<u8>>>()?;
        Word::new(digits, degree)
    }

    /// The word of length `len` spelling `index` in base `d`, most
    /// significant digit first.
    pub fn from_index(mut index: u64, len: usize, degree: u32) -> Result<Self> {
        let mut digits = alloc::vec![0u8; len];
        for slot in digits.iter_mut().rev() {
            *slot = (index % degree as u64) as u8;
            index /= degree as u64;
        }
        Word::new(digits, degree)
    }

    /// Inverse of [`Word::from_index`].
    pub fn index(&self) -> u64 {
        self.digits.iter().fold(0u64, |acc, &e| acc * self.degree as u64 + e as u64)
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn last(&self) -> u8 {
        *self.digits.last().expect("words are nonempty")
    }

    pub fn digit_sum(&self) -> u32 {
        self.digits.iter().map(|&e| e as u32).sum()
    }

    /// Same word with the final digit replaced.
    pub fn with_last(&self, digit: u8) -> Result<Word> {
        let mut digits = self.digits.clone();
        *digits.last_mut().expect("words are nonempty") = digit;
        Word::new(digits, self.degree)
    }

    /// Shift map: drops the first letter and appends it at the end.
    pub fn shift(&self) -> Word {
        self.rotate(1)
    }

    /// Cyclic rotation by `k` places to the left (negative values rotate
    /// to the right).
    pub fn rotate(&self, k: isize) -> Word {
        let n = self.len() as isize;
        let k = k.rem_euclid(n) as usize;
        let mut digits = Vec::with_capacity(self.len());
        digits.extend_from_slice(&self.digits[k..]);
        digits.extend_from_slice(&self.digits[..k]);
        Word { digits, degree: self.degree }
    }

    /// All rotations, starting with the word itself.
    pub fn rotations(&self) -> Vec<Word> {
        (0..self.len() as isize).map(|k| self.rotate(k)).collect()
    }

    pub fn maximal_rotation(&self) -> Word {
        self.rotations().into_iter().max().expect("nonempty")
    }

    /// Lexicographically least rotation, used as the canonical name of an
    /// orbit.
    pub fn least_rotation(&self) -> Word {
        self.rotations().into_iter().min().expect("nonempty")
    }

    /// Smallest `p` with `w = u^(n/p)` for the length-`p` prefix `u`.
    pub fn root_length(&self) -> usize {
        let n = self.len();
        (1..=n)
            .find(|&p| n % p == 0 && (p..n).all(|i| self.digits[i] == self.digits[i - p]))
            .expect("p = n always works")
    }

    /// Whether the word is not a proper power.
    pub fn is_primitive(&self) -> bool {
        self.root_length() == self.len()
    }

    /// The unique primitive `u` and maximal `k` with `u^k = w`.
    pub fn primitive_root(&self) -> (Word, usize) {
        let p = self.root_length();
        let root = Word { digits: self.digits[..p].to_vec(), degree: self.degree };
        (root, self.len() / p)
    }

    /// Concatenation `self^k`.
    pub fn pow(&self, k: usize) -> Word {
        let mut digits = Vec::with_capacity(self.len() * k);
        for _ in 0..k {
            digits.extend_from_slice(&self.digits);
        }
        Word { digits, degree: self.degree }
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch(self.degree, other.degree));
        }
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        Ok(Word { digits, degree: self.degree })
    }

    /// Reads the word as a base-`d` integer and subtracts one, borrowing
    /// through trailing zeros. Returns `None` for the all-zero word.
    pub fn decrement(&self) -> Option<Word> {
        let mut digits = self.digits.clone();
        for slot in digits.iter_mut().rev() {
            if *slot > 0 {
                *slot -= 1;
                return Some(Word { digits, degree: self.degree });
            }
            *slot = (self.degree - 1) as u8;
        }
        None
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.digits.iter().map(|&e| char::from(b'0' + e)).collect();
        f.write_str(&s)
    }
}

/// All words of length `len` over `{0, ..., d-1}` that are primitive, in
/// increasing base-`d` order.
pub fn exact_period_words(degree: u32, len: usize) -> Result<Vec<Word>> {
    check_degree(degree)?;
    let total = (degree as u64).checked_pow(len as u32).ok_or(Error::BudgetExceeded(u64::MAX))?;
    let mut out = Vec::new();
    for index in 0..total {
        let w = Word::from_index(index, len, degree)?;
        if w.is_primitive() {
            out.push(w);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::parse(s, 5).unwrap()
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(w("121212").primitive_root(), (w("12"), 3));
        assert_eq!(w("1234").primitive_root(), (w("1234"), 1));
        assert_eq!(w("11").primitive_root(), (w("1"), 2));
    }

    #[test]
    fn rotations_and_index() {
        assert_eq!(w("2120").maximal_rotation(), w("2120"));
        assert_eq!(w("0212").maximal_rotation(), w("2120"));
        assert_eq!(w("2120").least_rotation(), w("0212"));
        assert_eq!(w("123").rotate(-1), w("312"));
        let v = Word::parse("2120", 3).unwrap();
        assert_eq!(Word::from_index(v.index(), 4, 3).unwrap(), v);
    }

    #[test]
    fn decrement_borrows() {
        let v = Word::parse("201200", 3).unwrap();
        assert_eq!(v.decrement().unwrap().to_string(), "201122");
        assert_eq!(Word::parse("000", 3).unwrap().decrement(), None);
    }

    #[test]
    fn counts() {
        assert_eq!(exact_period_words(2, 3).unwrap().len(), 6);
        assert_eq!(exact_period_words(2, 4).unwrap().len(), 12);
        assert_eq!(exact_period_words(3, 2).unwrap().len(), 6);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Word::parse("13", 3).is_err());
        assert!(Word::parse("", 3).is_err());
        assert!(Word::parse("1a", 3).is_err());
    }
}
