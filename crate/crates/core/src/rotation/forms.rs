use std::fmt;

use crate::error::{Error, Result};
use crate::rationals::{totient, totient_sum};
use crate::word::BinaryWord;

/// Structural class of a rotation word, deciding how many Sturmian pairs
/// generate it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WordForm {
    Constant(u8),
    /// Exactly one `1`, at the given index.
    SingleOne(usize),
    /// Exactly one `0`, at the given index.
    SingleZero(usize),
    /// `base^i (o base^l)^k o base^j`, `o` the other symbol, `k, l >= 1`.
    PowerForm {
        base: u8,
        i: usize,
        l: usize,
        k: usize,
        j: usize,
    },
    Plain,
}

impl WordForm {
    pub fn tag(&self) -> &'static str {
        match self {
            WordForm::Constant(_) => "CONST",
            WordForm::SingleOne(_) => "ONE1",
            WordForm::SingleZero(_) => "ONE0",
            WordForm::PowerForm { .. } => "POW",
            WordForm::Plain => "PLAIN",
        }
    }

    /// Rebuilds the word for a power form.
    pub fn power_word(&self) -> Option<Result<BinaryWord>> {
        let WordForm::PowerForm { base, i, l, k, j } = *self else {
            return None;
        };
        let other = 1 - base;
        let build = || -> Result<BinaryWord> {
            let b = |len| BinaryWord::constant(base, len);
            let o = BinaryWord::constant(other, 1)?;
            let block = o.concat(&b(l)?)?;
            b(i)?.concat(&block.repeat(k)?)?.concat(&o)?.concat(&b(j)?)
        };
        Some(build())
    }
}

impl fmt::Display for WordForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordForm::PowerForm { base, i, l, k, j } => {
                write!(f, "POW(base={base}, i={i}, l={l}, k={k}, j={j})")
            }
            WordForm::SingleOne(i) | WordForm::SingleZero(i) => write!(f, "{}({i})", self.tag()),
            WordForm::Constant(s) => write!(f, "CONST({s})"),
            WordForm::Plain => f.write_str("PLAIN"),
        }
    }
}

pub fn classify(r: &BinaryWord) -> WordForm {
    let len = r.len();
    let ones = r.count_ones();
    let zeros = len - ones;
    if ones == 0 || zeros == 0 {
        return WordForm::Constant(if ones == 0 { 0 } else { 1 });
    }
    if ones == 1 {
        return WordForm::SingleOne(r.symbols().position(|s| s == 1).unwrap());
    }
    if zeros == 1 {
        return WordForm::SingleZero(r.symbols().position(|s| s == 0).unwrap());
    }
    let (has00, has11) = (r.has_square_of(0), r.has_square_of(1));
    if has00 && has11 {
        return WordForm::Plain;
    }
    // Alternating words have no square at all; either base works, l = 1.
    let base = if has11 || (!has00 && ones > zeros) { 1 } else { 0 };
    let other = 1 - base;
    let marks: Vec<usize> = r
        .symbols()
        .enumerate()
        .filter(|&(_, s)| s == other)
        .map(|(p, _)| p)
        .collect();
    let l = marks[1] - marks[0] - 1;
    if marks.windows(2).any(|w| w[1] - w[0] - 1 != l) {
        return WordForm::Plain;
    }
    WordForm::PowerForm {
        base,
        i: marks[0],
        l,
        k: marks.len() - 1,
        j: len - 1 - marks[marks.len() - 1],
    }
}

fn halve(what: &'static str, value: u64) -> Result<u64> {
    if !value.is_multiple_of(2) {
        return Err(Error::Integrality {
            what,
            value: value as i128,
        });
    }
    Ok(value / 2)
}

/// Number of distinct same-slope pairs (slopes below 1/2) generating a word
/// of the given form and length `wordlen = n + 1`, for `n >= 3`.
pub fn predicted_pair_count(form: &WordForm, wordlen: usize) -> Result<u64> {
    if wordlen < 4 {
        return Err(Error::InvalidArgument(format!(
            "multiplicities are predicted for words of length >= 4, got {wordlen}"
        )));
    }
    let n = wordlen - 1;
    match *form {
        WordForm::Constant(_) => Err(Error::InvalidArgument(
            "constant words have no fixed multiplicity".into(),
        )),
        WordForm::Plain => Ok(1),
        WordForm::SingleOne(i) | WordForm::SingleZero(i) => {
            if i > n {
                return Err(Error::InvalidArgument(format!(
                    "index {i} outside a word of length {wordlen}"
                )));
            }
            let specials = if i == 0 || i == n {
                totient_sum(n as u64)
            } else {
                totient_sum(i.max(n - i) as u64)
            };
            halve("single-symbol multiplicity", specials)
        }
        WordForm::PowerForm { i, l, j, .. } => {
            if l == 1 {
                return Ok(1);
            }
            let phi = totient(l as u64 + 1)?;
            if i <= l && j <= l {
                halve("power-form multiplicity", phi)
            } else {
                Ok(phi)
            }
        }
    }
}

/// The unique pair behind a word containing both `00` and `11`:
/// `u_k = v_k = 0` where `r_{k-1} = r_k = 1`, else `u_k = r_k`, `v_k = r_{k-1}`.
pub fn reconstruct_unique_pair(r: &BinaryWord) -> Result<(BinaryWord, BinaryWord)> {
    if !(r.has_square_of(0) && r.has_square_of(1)) {
        return Err(Error::InvalidArgument(format!("{r} must contain both 00 and 11")));
    }
    let (mut u, mut v) = (BinaryWord::EMPTY, BinaryWord::EMPTY);
    for k in 1..r.len() {
        let (prev, cur) = (r.get(k - 1), r.get(k));
        if prev == 1 && cur == 1 {
            u = u.push(0)?;
            v = v.push(0)?;
        } else {
            u = u.push(cur)?;
            v = v.push(prev)?;
        }
    }
    Ok((u, v))
}
