//! Cross-checks between the closed form, both oracles and the structural
//! laws of the census. Shared by the `verify` subcommand and the tests.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::counting::{f1, f2, f_closed_assembly, f_closed_expansion, f_pairs, power_form_count, rotation_word_count};
use crate::error::Result;
use crate::rationals::{farey_intervals, totient_sum, SlopeRange};
use crate::rotation::{
    classify, enumerate_rotation_words, enumerate_via_pairs, predicted_pair_count, reconstruct_unique_pair,
    rotation_words_via_pairs, EnumerateOptions, WordForm,
};
use crate::sturmian::{languages, left_special_words, new_word_partition};
use crate::word::BinaryWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub m: u64,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status}\t{}\tm={}", self.name, self.m)?;
        if !self.detail.is_empty() {
            write!(f, "\t{}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn record(&mut self, name: &'static str, m: u64, passed: bool, detail: impl FnOnce() -> String) {
        let detail = if passed { String::new() } else { detail() };
        self.checks.push(Check {
            name,
            m,
            passed,
            detail,
        });
    }

    fn equal<T: PartialEq + fmt::Debug>(&mut self, name: &'static str, m: u64, expected: T, actual: T) {
        let passed = expected == actual;
        self.record(name, m, passed, || format!("expected {expected:?}, got {actual:?}"));
    }
}

/// At most a few words from each side of a set difference.
pub fn set_diff(expected: &BTreeSet<BinaryWord>, actual: &BTreeSet<BinaryWord>) -> String {
    let show = |it: &mut dyn Iterator<Item = &BinaryWord>| -> String {
        it.take(5).map(|w| w.to_string()).collect::<Vec<_>>().join(",")
    };
    format!(
        "missing [{}] extra [{}]",
        show(&mut expected.difference(actual)),
        show(&mut actual.difference(expected))
    )
}

fn check_oracles(report: &mut Report, m: usize) -> Result<()> {
    let mu = m as u64;
    let full = enumerate_rotation_words(m, EnumerateOptions::default())?;
    report.equal("closed-vs-geometric", mu, rotation_word_count(mu)?, full.len() as u64);

    let interiors = enumerate_rotation_words(
        m,
        EnumerateOptions {
            include_farey_endpoints: false,
            ..Default::default()
        },
    )?;
    report.record("farey-endpoints-add-nothing", mu, interiors == full, || {
        set_diff(&full, &interiors)
    });

    let below = enumerate_rotation_words(
        m,
        EnumerateOptions {
            slope_range: SlopeRange::BelowHalf,
            include_farey_endpoints: true,
        },
    )?;
    report.record("slopes-below-half-suffice", mu, below == full, || {
        set_diff(&full, &below)
    });

    if m >= 2 {
        let pairs = rotation_words_via_pairs(m - 1)?;
        report.record("geometric-vs-pairs", mu, pairs == full, || set_diff(&full, &pairs));

        let shorter = enumerate_rotation_words(m - 1, EnumerateOptions::default())?;
        let stray: BTreeSet<BinaryWord> = full
            .iter()
            .flat_map(|w| [w.prefix(m - 1), w.suffix(m - 1)])
            .filter(|f| !shorter.contains(f))
            .collect();
        report.record("factor-closure", mu, stray.is_empty(), || {
            format!("factors outside R({}): {}", m - 1, set_diff(&BTreeSet::new(), &stray))
        });
    }

    let mirror: BTreeSet<BinaryWord> = full.iter().map(|w| w.reverse()).collect();
    let swapped: BTreeSet<BinaryWord> = full.iter().map(|w| w.complement()).collect();
    report.record("closed-under-reversal", mu, mirror == full, || set_diff(&full, &mirror));
    report.record("closed-under-complement", mu, swapped == full, || {
        set_diff(&full, &swapped)
    });
    Ok(())
}

/// Multiplicity laws on the census of words of length `m = n + 1`, `n >= 3`.
fn check_census(report: &mut Report, m: usize) -> Result<()> {
    let mu = m as u64;
    let n = (m - 1) as u64;
    let census = enumerate_via_pairs(m - 1)?;

    let mut wrong = Vec::new();
    let mut unique_pair_errors = Vec::new();
    let mut single_total = 0u64;
    let mut power_excess = 0u64;
    let mut power_words: BTreeMap<usize, u64> = BTreeMap::new();
    for (word, pairs) in &census.entries {
        let form = classify(word);
        if matches!(form, WordForm::Constant(_)) {
            continue;
        }
        let got = pairs.len() as u64;
        let predicted = predicted_pair_count(&form, m)?;
        if got != predicted {
            wrong.push(format!("{word}:{form}:{got}!={predicted}"));
        }
        match form {
            WordForm::SingleOne(_) | WordForm::SingleZero(_) => single_total += got,
            WordForm::PowerForm { base, l, .. } if l >= 2 => {
                power_excess += got - 1;
                if base == 0 {
                    *power_words.entry(l).or_default() += 1;
                }
            }
            _ => {}
        }
        if word.has_square_of(0) && word.has_square_of(1) {
            let (u, v) = reconstruct_unique_pair(word)?;
            if pairs.len() != 1 || pairs[0].u != u || pairs[0].v != v {
                unique_pair_errors.push(word.to_string());
            }
        }
    }
    report.record("multiplicity-laws", mu, wrong.is_empty(), || {
        wrong.iter().take(5).cloned().collect::<Vec<_>>().join(" ")
    });
    report.record("unique-pair-reconstruction", mu, unique_pair_errors.is_empty(), || {
        unique_pair_errors.join(",")
    });
    report.equal(
        "pair-total-is-f_pairs",
        mu,
        f_pairs(n)?,
        census.non_constant_pair_total() as u64,
    );
    report.equal("single-symbol-pairs-is-f1", mu, f1(n)?, single_total);

    let mut f2_sum = 0u64;
    let mut counts_ok = Vec::new();
    for l in 2..n {
        f2_sum += f2(n, l)?;
        let expected = power_form_count(n, l)?;
        let got = power_words.get(&(l as usize)).copied().unwrap_or(0);
        if expected != got {
            counts_ok.push(format!("l={l}: expected {expected}, got {got}"));
        }
    }
    report.equal("power-form-excess-is-2f2", mu, 2 * f2_sum, power_excess);
    report.record("power-form-word-counts", mu, counts_ok.is_empty(), || {
        counts_ok.join("; ")
    });
    Ok(())
}

fn check_sturmian(report: &mut Report, m: usize) -> Result<()> {
    let mu = m as u64;
    let langs = languages(m, SlopeRange::Full)?;
    let bad_sizes: Vec<String> = langs
        .iter()
        .filter(|l| l.words.len() != m + 1)
        .map(|l| l.interval.to_string())
        .collect();
    report.record("language-size", mu, bad_sizes.is_empty(), || bad_sizes.join(","));

    let mirror_errors = langs
        .iter()
        .filter(|l| match (l.left_special(), l.right_special()) {
            (Some(ls), Some(rs)) => ls.reverse() != rs,
            _ => true,
        })
        .count();
    report.equal("special-words-mirror", mu, 0, mirror_errors);

    let phi_weighted: u64 = (1..=mu)
        .map(|p| (mu - p + 1) * (totient_sum(p) - totient_sum(p - 1)))
        .sum();
    let partition = new_word_partition(m)?;
    let union: usize = partition.iter().map(|(_, fresh)| fresh.len()).sum();
    report.equal("sturmian-factor-count", mu, 1 + phi_weighted, union as u64);

    let bad_new: Vec<String> = partition
        .iter()
        .skip(1)
        .filter(|(iv, fresh)| fresh.len() as u64 != mu - iv.left().denominator() + 1)
        .map(|(iv, fresh)| format!("{iv}:{}", fresh.len()))
        .collect();
    report.record("new-word-counts", mu, bad_new.is_empty(), || bad_new.join(","));

    let specials = left_special_words(m, SlopeRange::Full)?;
    report.equal("left-special-count", mu, totient_sum(mu + 1), specials.len() as u64);

    let adjacency = farey_intervals(mu, SlopeRange::Full)?.iter().all(|iv| {
        let (a, b) = (iv.left(), iv.right());
        b.numerator() * a.denominator() - a.numerator() * b.denominator() == 1
    });
    report.record("farey-adjacency", mu, adjacency, String::new);
    Ok(())
}

/// Runs every check for word lengths `1..=max_m`, plus the assembly identity
/// for `3 <= n <= max(200, max_m)`.
pub fn verify_all(max_m: usize) -> Result<Report> {
    let mut report = Report::default();
    for m in 1..=max_m {
        check_oracles(&mut report, m)?;
        if m >= 4 {
            check_census(&mut report, m)?;
        }
        check_sturmian(&mut report, m)?;
    }
    let mut mismatches = Vec::new();
    for n in 3..=200u64.max(max_m as u64) {
        let (a, b) = (f_closed_expansion(n + 1)?, f_closed_assembly(n + 1)?);
        if a != b {
            mismatches.push(format!("n={n}: {a} vs {b}"));
        }
    }
    report.record(
        "assembly-identity",
        200u64.max(max_m as u64) + 1,
        mismatches.is_empty(),
        || mismatches.join("; "),
    );
    Ok(report)
}
