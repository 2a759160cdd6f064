//! Finite binary words packed into a single `u128`.
//!
//! Symbol `i` lives at bit `127 - i`, so the words are left-aligned. Deriving
//! `Ord` over `(bits, len)` then gives plain lexicographic order, with a
//! proper prefix sorting before its extensions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const MAX_LEN: usize = 128;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BinaryWord {
    bits: u128,
    len: u8,
}

/// Mask with the first `len` (left-aligned) symbol slots set.
#[inline]
pub(crate) fn prefix_mask(len: usize) -> u128 {
    match len {
        0 => 0,
        MAX_LEN => u128::MAX,
        _ => !(u128::MAX >> len),
    }
}

impl BinaryWord {
    pub const EMPTY: BinaryWord = BinaryWord { bits: 0, len: 0 };

    /// Builds a word from left-aligned bits; stray bits past `len` are cleared.
    pub fn from_bits(bits: u128, len: usize) -> Result<Self> {
        if len > MAX_LEN {
            return Err(Error::WordTooLong(len));
        }
        Ok(BinaryWord {
            bits: bits & prefix_mask(len),
            len: len as u8,
        })
    }

    pub fn constant(symbol: u8, len: usize) -> Result<Self> {
        let bits = if symbol == 0 { 0 } else { u128::MAX };
        BinaryWord::from_bits(bits, len)
    }

    pub fn from_symbols(symbols: &[u8]) -> Result<Self> {
        let mut w = BinaryWord::EMPTY;
        for &s in symbols {
            w = w.push(s)?;
        }
        Ok(w)
    }

    pub fn bits(&self) -> u128 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        debug_assert!(i < self.len());
        ((self.bits >> (127 - i)) & 1) as u8
    }

    pub fn push(self, symbol: u8) -> Result<Self> {
        let len = self.len();
        if len == MAX_LEN {
            return Err(Error::WordTooLong(len + 1));
        }
        let bits = self.bits | ((symbol as u128 & 1) << (127 - len));
        Ok(BinaryWord {
            bits,
            len: len as u8 + 1,
        })
    }

    pub fn concat(&self, other: &BinaryWord) -> Result<Self> {
        let len = self.len() + other.len();
        if len > MAX_LEN {
            return Err(Error::WordTooLong(len));
        }
        let tail = if self.len() == MAX_LEN {
            0
        } else {
            other.bits >> self.len()
        };
        BinaryWord::from_bits(self.bits | tail, len)
    }

    pub fn repeat(&self, times: usize) -> Result<Self> {
        let len = self.len().saturating_mul(times);
        if len > MAX_LEN {
            return Err(Error::WordTooLong(len));
        }
        let mut out = BinaryWord::EMPTY;
        for _ in 0..times {
            out = out.concat(self)?;
        }
        Ok(out)
    }

    /// The factor of length `len` starting at `start`.
    pub fn factor(&self, start: usize, len: usize) -> BinaryWord {
        assert!(start + len <= self.len(), "factor out of range");
        let shifted = if start == MAX_LEN { 0 } else { self.bits << start };
        BinaryWord::from_bits(shifted, len).expect("len is within the cap")
    }

    pub fn prefix(&self, len: usize) -> BinaryWord {
        self.factor(0, len)
    }

    pub fn suffix(&self, len: usize) -> BinaryWord {
        self.factor(self.len() - len, len)
    }

    pub fn count_ones(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn complement(&self) -> BinaryWord {
        BinaryWord::from_bits(!self.bits, self.len()).expect("same length")
    }

    pub fn reverse(&self) -> BinaryWord {
        let len = self.len();
        let bits = if len == 0 {
            0
        } else {
            self.bits.reverse_bits() << (MAX_LEN - len)
        };
        BinaryWord::from_bits(bits, len).expect("same length")
    }

    pub fn is_factor_of(&self, other: &BinaryWord) -> bool {
        let len = self.len();
        if len > other.len() {
            return false;
        }
        (0..=other.len() - len).any(|start| other.factor(start, len) == *self)
    }

    /// True if two adjacent symbols are both `symbol`.
    pub fn has_square_of(&self, symbol: u8) -> bool {
        let len = self.len();
        if len < 2 {
            return false;
        }
        let b = if symbol == 0 { !self.bits } else { self.bits } & prefix_mask(len);
        b & (b << 1) != 0
    }

    pub fn symbols(&self) -> impl Iterator<Item = u8> + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.symbols().map(|b| if b == 1 { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("ε")
        } else {
            fmt::Display::fmt(self, f)
        }
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.len() > MAX_LEN {
            return Err(Error::WordTooLong(s.len()));
        }
        let mut w = BinaryWord::EMPTY;
        for c in s.chars() {
            w = match c {
                '0' => w.push(0)?,
                '1' => w.push(1)?,
                _ => return Err(Error::ParseWord(s.to_string())),
            };
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    #[test]
    fn basic_ops() {
        assert_eq!(w("0101").to_string(), "0101");
        assert_eq!(w("").len(), 0);
        assert_eq!(w("01").concat(&w("001")).unwrap(), w("01001"));
        assert_eq!(w("01").repeat(3).unwrap(), w("010101"));
        assert_eq!(w("01001").reverse(), w("10010"));
        assert_eq!(w("01001").complement(), w("10110"));
        assert_eq!(w("01001").factor(1, 3), w("100"));
        assert_eq!(w("01001").suffix(2), w("01"));
        assert!(w("00").is_factor_of(&w("1001")));
        assert!(!w("11").is_factor_of(&w("1001")));
        assert!(w("1001").has_square_of(0));
        assert!(!w("1001").has_square_of(1));
        assert!("012".parse::<BinaryWord>().is_err());
    }

    #[test]
    fn full_width_words() {
        let ones = BinaryWord::constant(1, MAX_LEN).unwrap();
        assert_eq!(ones.len(), MAX_LEN);
        assert_eq!(ones.count_ones(), MAX_LEN);
        assert!(ones.push(0).is_err());
        let half = BinaryWord::constant(0, 64).unwrap();
        let joined = half.concat(&BinaryWord::constant(1, 64).unwrap()).unwrap();
        assert_eq!(joined.len(), 128);
        assert_eq!(joined.suffix(64), BinaryWord::constant(1, 64).unwrap());
        assert_eq!(joined.reverse().prefix(64).count_ones(), 64);
        assert!(joined.concat(&w("0")).is_err());
    }

    #[test]
    fn order_is_lexicographic() {
        let mut words: Vec<BinaryWord> = ["1", "", "0", "01", "00", "10", "011", "1"]
            .iter()
            .map(|s| w(s))
            .collect();
        words.sort();
        let shown: Vec<String> = words.iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["", "0", "00", "01", "011", "1", "1", "10"]);
    }

    proptest! {
        #[test]
        fn agrees_with_string_model(a in "[01]{0,70}", b in "[01]{0,58}") {
            let (x, y) = (w(&a), w(&b));
            prop_assert_eq!(x.to_string(), a.clone());
            prop_assert_eq!(x.cmp(&y), a.cmp(&b));
            prop_assert_eq!(x.concat(&y).unwrap().to_string(), format!("{a}{b}"));
            prop_assert_eq!(x.reverse().to_string(), a.chars().rev().collect::<String>());
            prop_assert_eq!(x.count_ones(), a.matches('1').count());
            prop_assert_eq!(x.has_square_of(0), a.contains("00"));
            prop_assert_eq!(x.has_square_of(1), a.contains("11"));
            prop_assert_eq!(y.is_factor_of(&x), a.contains(b.as_str()));
        }
    }
}
