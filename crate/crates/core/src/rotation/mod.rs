//! Rotation words and the two enumeration oracles.
//!
//! A rotation word of length `n` records, for `i < n`, whether the orbit
//! point `{iα}` falls in the arc `[β, γ)` of the unit circle. When `β >= γ`
//! the arc wraps through zero, so `β = γ` covers the whole circle.
//!
//! The geometric oracle evaluates this definition directly over a finite
//! parameter grid. The pairs oracle rebuilds every word from two Sturmian
//! words of the same slope through `r_k = r_{k-1} + u_k - v_k`.

mod census;
mod forms;

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rationals::{farey_intervals, lcm, Fraction, SlopeRange};
use crate::word::{prefix_mask, BinaryWord, MAX_LEN};

pub use census::{enumerate_via_pairs, rotation_words_via_pairs, SturmianPair, WordCensus};
pub use forms::{classify, predicted_pair_count, reconstruct_unique_pair, WordForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RotationParams {
    pub alpha: Fraction,
    pub beta: Fraction,
    pub gamma: Fraction,
}

impl RotationParams {
    pub fn new(alpha: Fraction, beta: Fraction, gamma: Fraction) -> Result<Self> {
        for (name, x) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
            if !x.is_on_circle() {
                return Err(Error::InvalidArgument(format!("{name} = {x} is not in [0, 1)")));
            }
        }
        Ok(RotationParams { alpha, beta, gamma })
    }
}

#[inline]
fn in_arc(x: u128, beta: u128, gamma: u128) -> bool {
    if beta < gamma {
        beta <= x && x < gamma
    } else {
        x >= beta || x < gamma
    }
}

/// Prefix of length `n` of the rotation word with parameters `p`.
pub fn rotation_word(p: &RotationParams, n: usize) -> Result<BinaryWord> {
    if n == 0 {
        return Err(Error::InvalidArgument("word length must be positive".into()));
    }
    if n > MAX_LEN {
        return Err(Error::WordTooLong(n));
    }
    let modulus = lcm(lcm(p.alpha.denominator(), p.beta.denominator())?, p.gamma.denominator())?;
    let scale = |x: Fraction| x.numerator() as u128 * (modulus / x.denominator()) as u128;
    let (step, beta, gamma) = (scale(p.alpha), scale(p.beta), scale(p.gamma));
    let modulus = modulus as u128;

    let mut bits = 0u128;
    let mut x = 0u128;
    for i in 0..n {
        if in_arc(x, beta, gamma) {
            bits |= 1 << (127 - i);
        }
        x = (x + step) % modulus;
    }
    BinaryWord::from_bits(bits, n)
}

/// Lookup table for one slope `step/modulus` and one word length: entry `t`
/// holds the positions `i` whose orbit point is at least `t/modulus`. An arc
/// word is then two table reads.
pub(crate) struct ArcTable {
    at_least: Vec<u128>,
    mask: u128,
    len: usize,
}

impl ArcTable {
    pub(crate) fn new(step: u64, modulus: u64, len: usize) -> Self {
        assert!(len <= MAX_LEN && modulus > 0);
        let m = modulus as usize;
        let mut at_least = vec![0u128; m + 1];
        let mut x = 0u64;
        for i in 0..len {
            at_least[x as usize] |= 1 << (127 - i);
            x = (x + step) % modulus;
        }
        for t in (0..m).rev() {
            at_least[t] |= at_least[t + 1];
        }
        ArcTable {
            at_least,
            mask: prefix_mask(len),
            len,
        }
    }

    /// The word for the arc `[beta, gamma)` in units of `1/modulus`.
    #[inline]
    pub(crate) fn word(&self, beta: u64, gamma: u64) -> BinaryWord {
        let from = self.at_least[beta as usize];
        let to = self.at_least[gamma as usize];
        let bits = if beta < gamma { from & !to } else { from | !to };
        BinaryWord::from_bits(bits & self.mask, self.len).expect("len checked at construction")
    }

    pub(crate) fn modulus(&self) -> u64 {
        self.at_least.len() as u64 - 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub slope_range: SlopeRange,
    pub include_farey_endpoints: bool,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            slope_range: SlopeRange::Full,
            include_farey_endpoints: true,
        }
    }
}

/// The slopes sampled by the geometric oracle for words of length `n`.
pub fn oracle_slopes(n: usize, options: EnumerateOptions) -> Result<Vec<Fraction>> {
    let order = n.saturating_sub(1).max(1) as u64;
    let intervals = farey_intervals(order, options.slope_range)?;
    let mut slopes: Vec<Fraction> = intervals.iter().map(|iv| iv.mediant()).collect();
    if options.include_farey_endpoints {
        slopes.extend(intervals.iter().map(|iv| iv.left()));
    }
    Ok(slopes)
}

/// All words `r(α, j/2D, j'/2D, n)` for one slope `α = a/D`.
///
/// Orbit points sit on the `1/D` lattice, so the half-step grid puts a
/// parameter strictly inside every gap between consecutive points. That
/// realises every arc, the empty one included.
pub fn words_for_slope(alpha: Fraction, n: usize) -> Result<HashSet<BinaryWord>> {
    if !alpha.is_on_circle() {
        return Err(Error::InvalidArgument(format!("slope {alpha} is not in [0, 1)")));
    }
    if n == 0 || n > MAX_LEN {
        return Err(Error::InvalidArgument(format!("word length {n} out of range")));
    }
    let table = ArcTable::new(2 * alpha.numerator(), 2 * alpha.denominator(), n);
    let m = table.modulus();
    let mut out = HashSet::new();
    for beta in 0..m {
        for gamma in 0..m {
            out.insert(table.word(beta, gamma));
        }
    }
    Ok(out)
}

/// The geometric oracle: `R(n)` straight from the rotation definition.
pub fn enumerate_rotation_words(n: usize, options: EnumerateOptions) -> Result<BTreeSet<BinaryWord>> {
    if n == 0 {
        return Err(Error::InvalidArgument("word length must be positive".into()));
    }
    if n > MAX_LEN {
        return Err(Error::WordTooLong(n));
    }
    let slopes = oracle_slopes(n, options)?;
    let merged =
        slopes
            .par_iter()
            .map(|&alpha| words_for_slope(alpha, n))
            .try_reduce(HashSet::new, |mut acc, part| {
                acc.extend(part);
                Ok(acc)
            })?;
    Ok(merged.into_iter().collect())
}

/// Image of a pair of distinct words under `r_k = r_{k-1} + u_k - v_k`;
/// `None` when `u = v`. Positions of `u` and `v` are `k = 1..=n`.
///
/// The prefix sums stay within one step exactly when the nonzero
/// differences alternate in sign, so the running parity of the positions
/// where `u` and `v` differ is the word itself (or its complement).
#[inline]
pub(crate) fn pair_image(u: &BinaryWord, v: &BinaryWord) -> Result<Option<BinaryWord>> {
    if u == v {
        return Ok(None);
    }
    let n = u.len();
    let mask = prefix_mask(n);
    let up = u.bits() & !v.bits() & mask;
    let down = v.bits() & !u.bits() & mask;
    let toggles = up | down;
    let mut parity = toggles;
    for shift in [1, 2, 4, 8, 16, 32, 64] {
        parity ^= parity >> shift;
    }
    let bits = if up == toggles & parity && down == toggles & !parity {
        // Sums in {0, 1}: r_0 = 0, r_k = S_k.
        parity >> 1
    } else if down == toggles & parity && up == toggles & !parity {
        // Sums in {-1, 0}: r_0 = 1, r_k = 1 + S_k.
        (1u128 << 127) | ((!parity & mask) >> 1)
    } else {
        return Err(Error::InvalidPair {
            u: u.to_string(),
            v: v.to_string(),
        });
    };
    BinaryWord::from_bits(bits, n + 1).map(Some)
}

/// The one or two rotation words of length `n + 1` generated by the pair.
pub fn pair_to_rotation(u: &BinaryWord, v: &BinaryWord) -> Result<Vec<BinaryWord>> {
    if u.len() != v.len() || u.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "pair words must share a positive length, got {} and {}",
            u.len(),
            v.len()
        )));
    }
    if u.len() >= MAX_LEN {
        return Err(Error::WordTooLong(u.len() + 1));
    }
    match pair_image(u, v)? {
        Some(w) => Ok(vec![w]),
        None => Ok(vec![
            BinaryWord::constant(0, u.len() + 1)?,
            BinaryWord::constant(1, u.len() + 1)?,
        ]),
    }
}
