use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use proptest::prelude::*;

use rotwords::counting::rotation_word_count;
use rotwords::rationals::{farey_intervals, Fraction, SlopeRange};
use rotwords::rotation::{
    enumerate_rotation_words, enumerate_via_pairs, oracle_slopes, pair_to_rotation, rotation_word,
    rotation_words_via_pairs, EnumerateOptions, RotationParams,
};
use rotwords::sturmian::st_language;
use rotwords::BinaryWord;

const SMALL: usize = 10;

/// `R(m)` for `1 <= m <= SMALL`, computed once per test binary.
fn small_sets() -> &'static HashMap<usize, BTreeSet<BinaryWord>> {
    static SETS: OnceLock<HashMap<usize, BTreeSet<BinaryWord>>> = OnceLock::new();
    SETS.get_or_init(|| {
        (1..=SMALL)
            .map(|m| (m, enumerate_rotation_words(m, EnumerateOptions::default()).unwrap()))
            .collect()
    })
}

fn circle_point(den: u64) -> impl Strategy<Value = Fraction> {
    (0..den).prop_map(move |num| Fraction::new(num, den).unwrap())
}

fn params() -> impl Strategy<Value = RotationParams> {
    (1u64..=13, 1u64..=13, 1u64..=13)
        .prop_flat_map(|(a, b, c)| (circle_point(a), circle_point(b), circle_point(c)))
        .prop_map(|(alpha, beta, gamma)| RotationParams::new(alpha, beta, gamma).unwrap())
}

/// The geometric oracle with `β = γ` skipped instead of read as the full
/// circle.
fn without_full_circle_convention(m: usize) -> BTreeSet<BinaryWord> {
    let mut out = BTreeSet::new();
    for alpha in oracle_slopes(m, EnumerateOptions::default()).unwrap() {
        let grid = 2 * alpha.denominator();
        for b in 0..grid {
            for g in (0..grid).filter(|&g| g != b) {
                let p = RotationParams::new(alpha, Fraction::new(b, grid).unwrap(), Fraction::new(g, grid).unwrap());
                out.insert(rotation_word(&p.unwrap(), m).unwrap());
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn arbitrary_rational_parameters_stay_in_the_oracle(p in params(), m in 1usize..=SMALL) {
        let w = rotation_word(&p, m).unwrap();
        prop_assert!(small_sets()[&m].contains(&w), "{} from {:?}", w, p);
    }

    #[test]
    fn same_language_pairs_are_valid(
        n in 1usize..=24,
        pick in any::<proptest::sample::Index>(),
        i in any::<proptest::sample::Index>(),
        j in any::<proptest::sample::Index>(),
    ) {
        let intervals = farey_intervals(n as u64, SlopeRange::BelowHalf).unwrap();
        let lang = st_language(n, *pick.get(&intervals)).unwrap();
        let words: Vec<&BinaryWord> = lang.words.iter().collect();
        let (u, v) = (words[i.index(words.len())], words[j.index(words.len())]);
        let images = pair_to_rotation(u, v).unwrap();
        prop_assert_eq!(images.len(), if u == v { 2 } else { 1 });
        for r in images {
            prop_assert_eq!(r.len(), n + 1);
        }
    }
}

#[test]
fn full_circle_convention_does_not_change_counts() {
    for m in 1..=8 {
        assert_eq!(without_full_circle_convention(m), small_sets()[&m], "m = {m}");
    }
}

#[test]
fn farey_endpoints_add_no_words() {
    let interiors = EnumerateOptions {
        include_farey_endpoints: false,
        ..Default::default()
    };
    for m in 1..=SMALL {
        assert_eq!(
            enumerate_rotation_words(m, interiors).unwrap(),
            small_sets()[&m],
            "m = {m}"
        );
    }
}

#[test]
fn oracles_agree_with_each_other_and_the_count() {
    for m in 1..=SMALL {
        let set = &small_sets()[&m];
        assert_eq!(set.len() as u64, rotation_word_count(m as u64).unwrap());
        if m >= 2 {
            assert_eq!(&rotation_words_via_pairs(m - 1).unwrap(), set);
        }
    }
}

#[test]
fn slopes_up_to_one_half_suffice() {
    let below = EnumerateOptions {
        slope_range: SlopeRange::BelowHalf,
        include_farey_endpoints: true,
    };
    for m in 1..=SMALL {
        assert_eq!(enumerate_rotation_words(m, below).unwrap(), small_sets()[&m], "m = {m}");
    }
}

#[test]
fn closed_under_mirror_and_complement() {
    for set in small_sets().values() {
        for w in set {
            assert!(set.contains(&w.reverse()), "{w}");
            assert!(set.contains(&w.complement()), "{w}");
        }
    }
}

#[test]
fn every_factor_window_is_a_rotation_word() {
    let sets = small_sets();
    for n in 2..=SMALL {
        for w in &sets[&n] {
            for m in 1..n {
                for start in 0..=n - m {
                    assert!(sets[&m].contains(&w.factor(start, m)), "{w}[{start}..+{m}]");
                }
            }
        }
    }
}

#[test]
fn census_pairs_regenerate_their_words() {
    for n in 1..=9 {
        let census = enumerate_via_pairs(n).unwrap();
        for (word, pairs) in &census.entries {
            for pair in pairs {
                assert!(pair_to_rotation(&pair.u, &pair.v).unwrap().contains(word), "{word}");
                let lang = st_language(n, pair.interval).unwrap();
                assert!(lang.contains(&pair.u) && lang.contains(&pair.v));
            }
        }
    }
}

#[test]
fn out_of_range_parameters_are_rejected() {
    let one = Fraction::new(1, 1).unwrap();
    let half = Fraction::new(1, 2).unwrap();
    assert!(RotationParams::new(one, half, half).is_err());
    assert!(enumerate_rotation_words(0, EnumerateOptions::default()).is_err());
    let u: BinaryWord = "0101".parse().unwrap();
    let v: BinaryWord = "010".parse().unwrap();
    assert!(pair_to_rotation(&u, &v).is_err());
    let w: BinaryWord = "1100".parse().unwrap();
    let z: BinaryWord = "0011".parse().unwrap();
    assert!(pair_to_rotation(&w, &z).is_err());
}
