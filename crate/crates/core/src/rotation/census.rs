use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::io::{self, Write};

use rayon::prelude::*;

use super::forms::{classify, predicted_pair_count, WordForm};
use super::pair_image;
use crate::error::{Error, Result};
use crate::rationals::{FareyInterval, SlopeRange};
use crate::sturmian::{languages, SturmianLanguage};
use crate::word::{BinaryWord, MAX_LEN};

/// Two Sturmian words of one slope interval. `interval` is the first (lowest
/// slope) interval whose language holds both words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SturmianPair {
    pub u: BinaryWord,
    pub v: BinaryWord,
    pub interval: FareyInterval,
}

/// Every rotation word of length `n + 1` with the distinct ordered pairs
/// `(u, v)` of length-`n` Sturmian words (slopes below 1/2) generating it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WordCensus {
    pub length: usize,
    pub entries: BTreeMap<BinaryWord, Vec<SturmianPair>>,
}

impl WordCensus {
    /// Length of the rotation words, one more than the pair length.
    pub fn word_length(&self) -> usize {
        self.length + 1
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &BinaryWord> {
        self.entries.keys()
    }

    pub fn multiplicity(&self, w: &BinaryWord) -> usize {
        self.entries.get(w).map_or(0, Vec::len)
    }

    /// Distinct generating pairs over all non-constant words.
    pub fn non_constant_pair_total(&self) -> usize {
        self.entries
            .iter()
            .filter(|(w, _)| !matches!(classify(w), WordForm::Constant(_)))
            .map(|(_, pairs)| pairs.len())
            .sum()
    }

    /// Tab-separated rows: word, multiplicity, class tag, predicted
    /// multiplicity (`-` where no prediction applies).
    pub fn export<W: Write + ?Sized>(&self, out: &mut W) -> io::Result<()> {
        for (word, pairs) in &self.entries {
            let form = classify(word);
            let predicted = match predicted_pair_count(&form, self.word_length()) {
                Ok(p) => p.to_string(),
                Err(_) => "-".to_string(),
            };
            writeln!(out, "{word}\t{}\t{}\t{predicted}", pairs.len(), form.tag())?;
        }
        Ok(())
    }
}

fn check_pair_length(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("pair length must be positive".into()));
    }
    if n >= MAX_LEN {
        return Err(Error::WordTooLong(n + 1));
    }
    Ok(())
}

fn pairs_of(lang: &SturmianLanguage) -> HashMap<(BinaryWord, BinaryWord), FareyInterval> {
    let mut out = HashMap::with_capacity(lang.words.len() * lang.words.len());
    for &u in &lang.words {
        for &v in &lang.words {
            out.insert((u, v), lang.interval);
        }
    }
    out
}

/// The pairs oracle with full bookkeeping of generating pairs.
pub fn enumerate_via_pairs(n: usize) -> Result<WordCensus> {
    check_pair_length(n)?;
    let langs = languages(n, SlopeRange::BelowHalf)?;

    // Keep the lowest interval per pair; min is order-independent.
    let pairs = langs.par_iter().map(pairs_of).reduce(HashMap::new, |mut acc, part| {
        for (key, iv) in part {
            acc.entry(key).and_modify(|cur| *cur = (*cur).min(iv)).or_insert(iv);
        }
        acc
    });

    let zero = BinaryWord::constant(0, n + 1)?;
    let one = BinaryWord::constant(1, n + 1)?;
    let mut entries: BTreeMap<BinaryWord, Vec<SturmianPair>> = BTreeMap::new();
    for ((u, v), interval) in pairs {
        let pair = SturmianPair { u, v, interval };
        match pair_image(&u, &v)? {
            Some(w) => entries.entry(w).or_default().push(pair),
            None => {
                entries.entry(zero).or_default().push(pair);
                entries.entry(one).or_default().push(pair);
            }
        }
    }
    for list in entries.values_mut() {
        list.sort_unstable();
    }
    Ok(WordCensus { length: n, entries })
}

/// The pairs oracle without pair bookkeeping: just `R(n + 1)`.
pub fn rotation_words_via_pairs(n: usize) -> Result<BTreeSet<BinaryWord>> {
    check_pair_length(n)?;
    let langs = languages(n, SlopeRange::BelowHalf)?;
    let merged = langs
        .par_iter()
        .map(|lang| -> Result<HashSet<BinaryWord>> {
            let mut local = HashSet::new();
            for u in &lang.words {
                for v in &lang.words {
                    if let Some(w) = pair_image(u, v)? {
                        local.insert(w);
                    }
                }
            }
            Ok(local)
        })
        .try_reduce(HashSet::new, |mut acc, part| {
            acc.extend(part);
            Ok(acc)
        })?;
    let mut out: BTreeSet<BinaryWord> = merged.into_iter().collect();
    out.insert(BinaryWord::constant(0, n + 1)?);
    out.insert(BinaryWord::constant(1, n + 1)?);
    Ok(out)
}
