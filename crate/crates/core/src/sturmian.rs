//! Sturmian factor languages, special words and standard-word machinery.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rationals::{farey_intervals, FareyInterval, Fraction, SlopeRange};
use crate::rotation::{rotation_word, ArcTable, RotationParams};
use crate::word::{BinaryWord, MAX_LEN};

/// The length-`n` factors of Sturmian words whose slope lies in `interval`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SturmianLanguage {
    pub length: usize,
    pub interval: FareyInterval,
    pub words: BTreeSet<BinaryWord>,
}

impl SturmianLanguage {
    pub fn contains(&self, w: &BinaryWord) -> bool {
        self.words.contains(w)
    }

    /// The unique word `w` of length `length - 1` with both `0w` and `1w`
    /// in the language.
    pub fn left_special(&self) -> Option<BinaryWord> {
        let mut found = self.words.iter().filter_map(|w| {
            let tail = w.suffix(w.len() - 1);
            let other = BinaryWord::from_bits(w.bits() ^ (1u128 << 127), w.len()).ok()?;
            (w.get(0) == 0 && self.words.contains(&other)).then_some(tail)
        });
        let first = found.next();
        debug_assert!(found.next().is_none());
        first
    }

    /// Mirror of [`left_special`](Self::left_special): `w0` and `w1` both present.
    pub fn right_special(&self) -> Option<BinaryWord> {
        let n = self.length;
        let last = 1u128 << (127 - (n - 1));
        let mut found = self.words.iter().filter_map(|w| {
            let head = w.prefix(n - 1);
            let other = BinaryWord::from_bits(w.bits() ^ last, n).ok()?;
            (w.get(n - 1) == 0 && self.words.contains(&other)).then_some(head)
        });
        let first = found.next();
        debug_assert!(found.next().is_none());
        first
    }
}

/// `w_i = 1` iff `{i·slope}` lies in `[intercept, intercept + slope)`.
pub fn mechanical_word(slope: Fraction, intercept: Fraction, length: usize) -> Result<BinaryWord> {
    if slope.is_zero() || !slope.is_on_circle() {
        return Err(Error::InvalidArgument(format!("slope {slope} must lie in (0, 1)")));
    }
    if !intercept.is_on_circle() {
        return Err(Error::InvalidArgument(format!(
            "intercept {intercept} must lie in [0, 1)"
        )));
    }
    let gamma = intercept.add_mod_one(slope)?;
    rotation_word(&RotationParams::new(slope, intercept, gamma)?, length)
}

/// Enumerates `St(length, interval)` over the intercept grid `j/D`, where
/// `a/D` is the mediant of the interval.
pub fn st_language(length: usize, interval: FareyInterval) -> Result<SturmianLanguage> {
    if length == 0 {
        return Err(Error::InvalidArgument("language length must be positive".into()));
    }
    if interval.order() < length as u64 {
        return Err(Error::InvalidArgument(format!(
            "interval {interval} has order {} below the word length {length}",
            interval.order()
        )));
    }
    if length > MAX_LEN {
        return Err(Error::WordTooLong(length));
    }
    let slope = interval.mediant();
    let (a, d) = (slope.numerator(), slope.denominator());
    let table = ArcTable::new(a, d, length);
    let words = (0..d).map(|j| table.word(j, (j + a) % d)).collect();
    Ok(SturmianLanguage {
        length,
        interval,
        words,
    })
}

/// Languages of every interval in `range`, in increasing slope order.
pub fn languages(length: usize, range: SlopeRange) -> Result<Vec<SturmianLanguage>> {
    farey_intervals(length as u64, range)?
        .into_iter()
        .map(|iv| st_language(length, iv))
        .collect()
}

/// Words of `St(length, interval)` absent from every language of a smaller
/// slope interval of the same order.
pub fn new_words(length: usize, interval: FareyInterval) -> Result<BTreeSet<BinaryWord>> {
    let mut fresh = st_language(length, interval)?.words;
    for earlier in farey_intervals(interval.order(), SlopeRange::Full)? {
        if earlier.left() >= interval.left() {
            break;
        }
        for w in st_language(length, earlier)?.words {
            fresh.remove(&w);
        }
    }
    Ok(fresh)
}

/// `(interval, N(interval))` for every interval of order `length`, in
/// increasing slope order; the new-word sets partition the union of all
/// languages of that length.
pub fn new_word_partition(length: usize) -> Result<Vec<(FareyInterval, BTreeSet<BinaryWord>)>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for lang in languages(length, SlopeRange::Full)? {
        let fresh: BTreeSet<BinaryWord> = lang.words.difference(&seen).copied().collect();
        seen.extend(fresh.iter().copied());
        out.push((lang.interval, fresh));
    }
    Ok(out)
}

/// All left special Sturmian words of the given length whose slopes fall in
/// `range`. A left special word of length `n` is fixed by `St(n + 1)`, which
/// is constant on Farey intervals of order `n + 1`.
pub fn left_special_words(length: usize, range: SlopeRange) -> Result<BTreeSet<BinaryWord>> {
    if length == 0 {
        return Err(Error::InvalidArgument("length must be positive".into()));
    }
    let mut out = BTreeSet::new();
    for iv in farey_intervals(length as u64 + 1, range)? {
        let lang = st_language(length + 1, iv)?;
        out.extend(lang.left_special());
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectiveSequence(Vec<u32>);

impl DirectiveSequence {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.contains(&0) {
            return Err(Error::InvalidArgument(
                "directive entries must be positive (slopes below 1/2)".into(),
            ));
        }
        Ok(DirectiveSequence(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `s_{-1}, s_0, ..., s_m` with their lengths. Index `k` is stored at `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardWordSequence {
    words: Vec<BinaryWord>,
    lengths: Vec<u64>,
}

impl StandardWordSequence {
    /// `s_k` for `-1 <= k <= m`.
    pub fn word(&self, k: isize) -> BinaryWord {
        self.words[(k + 1) as usize]
    }

    pub fn length(&self, k: isize) -> u64 {
        self.lengths[(k + 1) as usize]
    }

    /// Index of the last word, `m`.
    pub fn last_index(&self) -> isize {
        self.words.len() as isize - 2
    }

    pub fn last(&self) -> BinaryWord {
        *self.words.last().expect("s_-1 and s_0 are always present")
    }
}

/// Lengths `l_{-1}, l_0, ..., l_m` without building the words.
fn standard_lengths(d: &[u32]) -> Vec<u64> {
    let mut lengths = vec![1u64, 1];
    for (k, &dk) in d.iter().enumerate() {
        let next = (dk as u64).saturating_mul(lengths[k + 1]).saturating_add(lengths[k]);
        lengths.push(next);
    }
    lengths
}

/// `s_{-1} = 1`, `s_0 = 0`, `s_k = s_{k-1}^{d_k} s_{k-2}`.
pub fn standard_words(d: &DirectiveSequence) -> Result<StandardWordSequence> {
    let lengths = standard_lengths(d.entries());
    if let Some(&too_long) = lengths.iter().find(|&&l| l > MAX_LEN as u64) {
        return Err(Error::WordTooLong(too_long.min(usize::MAX as u64) as usize));
    }
    let mut words = vec![BinaryWord::constant(1, 1)?, BinaryWord::constant(0, 1)?];
    for (k, &dk) in d.entries().iter().enumerate() {
        let next = words[k + 1].repeat(dk as usize)?.concat(&words[k])?;
        words.push(next);
    }
    Ok(StandardWordSequence { words, lengths })
}

fn check_standard_tail(s: &BinaryWord) -> Result<()> {
    let n = s.len();
    if n < 2 || s.get(n - 1) == s.get(n - 2) {
        return Err(Error::InvalidArgument(format!("{s:?} does not end in 01 or 10")));
    }
    Ok(())
}

/// Drops the final two symbols (which must differ).
pub fn central_word(s: &BinaryWord) -> Result<BinaryWord> {
    check_standard_tail(s)?;
    Ok(s.prefix(s.len() - 2))
}

/// The central word followed by the last two symbols of `s` swapped.
pub fn s_prime(s: &BinaryWord) -> Result<BinaryWord> {
    let c = central_word(s)?;
    let n = s.len();
    c.push(s.get(n - 1))?.push(s.get(n - 2))
}

/// Words `s_{n-1}^t s_{n-2}` minus their last two symbols, `1 <= n <= m`,
/// `1 <= t <= d_n`, of length at most `max_length`. Sorted by length, then
/// lexicographically.
pub fn bispecial_words(d: &DirectiveSequence, max_length: usize) -> Result<Vec<BinaryWord>> {
    if max_length + 2 > MAX_LEN {
        return Err(Error::WordTooLong(max_length + 2));
    }
    let lengths = standard_lengths(d.entries());
    // n is usable while its shortest candidate, s_{n-1} s_{n-2}, still fits.
    let usable = d
        .entries()
        .iter()
        .enumerate()
        .take_while(|&(k, _)| lengths[k + 1] + lengths[k] <= max_length as u64 + 2)
        .count();
    let seq = standard_words(&DirectiveSequence(d.entries()[..usable.saturating_sub(1)].to_vec()))?;
    let mut out = BTreeSet::new();
    for n in 1..=usable as isize {
        let (prev, prev2) = (seq.word(n - 1), seq.word(n - 2));
        for t in 1..=d.entries()[n as usize - 1] as usize {
            let len = t * prev.len() + prev2.len();
            if len > max_length + 2 {
                break;
            }
            let c = prev.repeat(t)?.concat(&prev2)?;
            out.insert((c.len(), central_word(&c)?));
        }
    }
    Ok(out.into_iter().map(|(_, w)| w).collect())
}

/// The finite continued fraction `[0; 1 + d_1, d_2, ..., d_m]`.
pub fn slope_of_directive(d: &DirectiveSequence) -> Result<Fraction> {
    let entries = d.entries();
    if entries.is_empty() {
        return Err(Error::InvalidArgument("directive sequence is empty".into()));
    }
    // Evaluate from the innermost term outwards as num/den.
    let mut num: u64 = 0;
    let mut den: u64 = 1;
    for (k, &dk) in entries.iter().enumerate().rev() {
        let a = if k == 0 { dk as u64 + 1 } else { dk as u64 };
        // x = 1 / (a + num/den) = den / (a·den + num)
        let next_den = a
            .checked_mul(den)
            .and_then(|v| v.checked_add(num))
            .ok_or(Error::Overflow("slope_of_directive"))?;
        (num, den) = (den, next_den);
    }
    Fraction::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rationals::{interval_starting_at, totient, totient_sum};

    fn w(s: &str) -> BinaryWord {
        s.parse().unwrap()
    }

    fn fr(n: u64, d: u64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    fn set(words: &[&str]) -> BTreeSet<BinaryWord> {
        words.iter().map(|s| w(s)).collect()
    }

    fn dir(d: &[u32]) -> DirectiveSequence {
        DirectiveSequence::new(d.to_vec()).unwrap()
    }

    #[test]
    fn mechanical_word_examples() {
        assert_eq!(mechanical_word(fr(2, 5), fr(0, 1), 5).unwrap(), w("10010"));
        // {0, 1/4, 1/2, 3/4} against the arc [3/4, 1): only the last point.
        assert_eq!(mechanical_word(fr(1, 4), fr(3, 4), 4).unwrap(), w("0001"));
        assert_eq!(mechanical_word(fr(1, 2), fr(0, 1), 2).unwrap(), w("10"));
        assert!(mechanical_word(fr(0, 1), fr(0, 1), 3).is_err());
        assert!(mechanical_word(fr(1, 1), fr(0, 1), 3).is_err());
    }

    #[test]
    fn language_examples() {
        let iv = |q, p, n| interval_starting_at(n, fr(q, p)).unwrap();
        assert_eq!(
            st_language(3, iv(0, 1, 3)).unwrap().words,
            set(&["000", "001", "010", "100"])
        );
        assert_eq!(
            st_language(3, iv(1, 3, 3)).unwrap().words,
            set(&["001", "010", "100", "101"])
        );
        assert_eq!(st_language(1, iv(0, 1, 1)).unwrap().words, set(&["0", "1"]));
        assert!(st_language(4, iv(1, 3, 3)).is_err());
    }

    #[test]
    fn new_word_examples() {
        let iv = |q, p, n| interval_starting_at(n, fr(q, p)).unwrap();
        assert_eq!(new_words(3, iv(1, 3, 3)).unwrap(), set(&["101"]));
        assert_eq!(new_words(3, iv(0, 1, 3)).unwrap().len(), 4);
        assert_eq!(new_words(4, iv(1, 4, 4)).unwrap().len(), 1);
    }

    #[test]
    fn left_special_examples() {
        assert_eq!(
            left_special_words(2, SlopeRange::Full).unwrap(),
            set(&["00", "01", "10", "11"])
        );
        assert_eq!(left_special_words(1, SlopeRange::Full).unwrap(), set(&["0", "1"]));
        assert_eq!(
            left_special_words(3, SlopeRange::Full).unwrap().len() as u64,
            totient_sum(4)
        );
    }

    #[test]
    fn special_words_are_mirror_images() {
        for n in 1..=9 {
            for lang in languages(n, SlopeRange::Full).unwrap() {
                assert_eq!(lang.words.len(), n + 1);
                let ls = lang.left_special().expect("one left special word");
                let rs = lang.right_special().expect("one right special word");
                assert_eq!(ls.reverse(), rs, "{:?}", lang.interval);
            }
        }
    }

    #[test]
    fn standard_word_examples() {
        let s = standard_words(&dir(&[1, 1, 1])).unwrap();
        assert_eq!(s.word(1), w("01"));
        assert_eq!(s.word(2), w("010"));
        assert_eq!(s.word(3), w("01001"));
        assert_eq!(s.length(3), 5);
        assert_eq!(standard_words(&dir(&[1, 2])).unwrap().word(2), w("01010"));
        assert_eq!(standard_words(&dir(&[2])).unwrap().word(1), w("001"));
        assert!(matches!(standard_words(&dir(&[200])), Err(Error::WordTooLong(_))));
        assert!(DirectiveSequence::new(vec![1, 0]).is_err());
    }

    #[test]
    fn standard_lengths_and_tails() {
        let d = dir(&[2, 1, 3, 1, 2]);
        let s = standard_words(&d).unwrap();
        for k in 1..=s.last_index() {
            let dk = d.entries()[k as usize - 1] as u64;
            assert_eq!(s.length(k), dk * s.length(k - 1) + s.length(k - 2));
            assert_eq!(s.word(k).len() as u64, s.length(k));
            let tail = s.word(k).suffix(2);
            let expected = if k % 2 == 1 { w("01") } else { w("10") };
            assert_eq!(tail, expected, "s_{k}");
        }
    }

    #[test]
    fn central_and_s_prime_examples() {
        assert_eq!(central_word(&w("010")).unwrap(), w("0"));
        assert_eq!(central_word(&w("01001")).unwrap(), w("010"));
        assert_eq!(central_word(&w("01")).unwrap(), BinaryWord::EMPTY);
        assert!(central_word(&w("0")).is_err());
        assert!(central_word(&w("0100")).is_err());
        assert!(central_word(&w("011")).is_err());

        assert_eq!(s_prime(&w("010")).unwrap(), w("001"));
        assert_eq!(s_prime(&w("01001")).unwrap(), w("01010"));
        assert_eq!(s_prime(&w("001")).unwrap(), w("010"));
        assert!(s_prime(&w("00")).is_err());
    }

    #[test]
    fn s_prime_matches_swapped_factorisation() {
        // s_n' = s_{n-1}^{d_n - 1} s_{n-2} s_{n-1}
        let d = dir(&[1, 3, 2, 1, 2]);
        let s = standard_words(&d).unwrap();
        for n in 1..=s.last_index() {
            let dn = d.entries()[n as usize - 1] as usize;
            let expected = s
                .word(n - 1)
                .repeat(dn - 1)
                .unwrap()
                .concat(&s.word(n - 2))
                .unwrap()
                .concat(&s.word(n - 1))
                .unwrap();
            assert_eq!(s_prime(&s.word(n)).unwrap(), expected, "n = {n}");
        }
    }

    #[test]
    fn bispecial_examples() {
        assert_eq!(
            bispecial_words(&dir(&[1, 1, 1]), 3).unwrap(),
            vec![BinaryWord::EMPTY, w("0"), w("010")]
        );
        assert_eq!(bispecial_words(&dir(&[2]), 1).unwrap(), vec![BinaryWord::EMPTY, w("0")]);
    }

    /// Every directive sequence (entries >= 1) whose standard word reaches
    /// exactly `target` symbols.
    fn collect_central(target: usize, d: &mut Vec<u32>, out: &mut BTreeSet<BinaryWord>) {
        let lengths = standard_lengths(d);
        let last = *lengths.last().unwrap() as usize;
        if last > target {
            return;
        }
        if !d.is_empty() && last == target {
            let s = standard_words(&DirectiveSequence(d.clone())).unwrap();
            out.insert(central_word(&s.last()).unwrap());
        }
        for x in 1..=target as u32 {
            d.push(x);
            collect_central(target, d, out);
            d.pop();
        }
    }

    #[test]
    fn central_word_counts() {
        for len in 0..=14usize {
            let mut below = BTreeSet::new();
            collect_central(len + 2, &mut vec![], &mut below);
            let phi = totient(len as u64 + 2).unwrap() as usize;
            let mut all = below.clone();
            all.extend(below.iter().map(|c| c.complement()));
            assert_eq!(all.len(), phi, "length {len}");
            if len >= 1 {
                assert_eq!(below.len() * 2, phi, "length {len}");
            }
        }
    }

    #[test]
    fn slope_examples() {
        assert_eq!(slope_of_directive(&dir(&[1, 1, 1])).unwrap(), fr(2, 5));
        assert_eq!(slope_of_directive(&dir(&[1])).unwrap(), fr(1, 2));
        assert_eq!(slope_of_directive(&dir(&[2])).unwrap(), fr(1, 3));
        assert!(slope_of_directive(&dir(&[])).is_err());
    }

    #[test]
    fn slope_is_letter_frequency() {
        for d in [vec![1, 1, 1], vec![3, 2], vec![1, 4, 2, 1], vec![2, 2, 2, 2]] {
            let d = dir(&d);
            let s = standard_words(&d).unwrap();
            let last = s.last();
            assert_eq!(
                slope_of_directive(&d).unwrap(),
                fr(last.count_ones() as u64, last.len() as u64)
            );
        }
    }
}
