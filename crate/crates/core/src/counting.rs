//! Closed-form counts of binary rotation words.
//!
//! `f(m)` is the number of rotation words of length `m`. For `m >= 4` it is
//! evaluated from the closed formula with `n = m - 1`; below that range the
//! formula does not apply and [`rotation_word_count`] falls back to values
//! measured with the geometric oracle.
//!
//! Every halving step checks integrality first. The formulas are integral by
//! theorem, so an odd value means a transcription error and is reported as
//! [`Error::Integrality`] rather than rounded away.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rationals::totient_table;

/// `f(1), f(2), f(3)`, as measured by the geometric oracle.
pub const SMALL_COUNTS: [(u64, u64); 3] = [(1, 2), (2, 4), (3, 8)];

fn checked(what: &'static str, value: Option<i128>) -> Result<i128> {
    value.ok_or(Error::Overflow(what))
}

fn to_u64(what: &'static str, value: i128) -> Result<u64> {
    u64::try_from(value).map_err(|_| Error::Overflow(what))
}

fn halve(what: &'static str, value: i128) -> Result<i128> {
    if value % 2 != 0 {
        return Err(Error::Integrality { what, value });
    }
    Ok(value / 2)
}

fn check_l(n: u64, l: u64) -> Result<()> {
    if n < 3 || l < 2 || l >= n {
        return Err(Error::InvalidArgument(format!(
            "need n >= 3 and 2 <= l <= n - 1, got n = {n}, l = {l}"
        )));
    }
    Ok(())
}

/// `n - l + 1 + (n mod (l + 1))`
pub fn g(n: u64, l: u64) -> Result<u64> {
    check_l(n, l)?;
    Ok(n - l + 1 + n % (l + 1))
}

/// `min(l + 1, n - l)`
pub fn h(n: u64, l: u64) -> Result<u64> {
    check_l(n, l)?;
    Ok((l + 1).min(n - l))
}

/// Number of power-form words `0^i (1 0^l)^k 1 0^j` of length `n + 1` with
/// the given gap `l`: `floor(n / (l + 1)) · g(n, l) / 2`.
pub fn power_form_count(n: u64, l: u64) -> Result<u64> {
    let twice = (n / (l + 1)) as i128 * g(n, l)? as i128;
    to_u64("power_form_count", halve("floor(n/(l+1))·g(n,l)", twice)?)
}

fn f2_with(n: u64, l: u64, phi_l1: u64) -> Result<i128> {
    let count = power_form_count(n, l)? as i128;
    let h = h(n, l)? as i128;
    let phi = phi_l1 as i128;
    let half_phi = halve("phi(l+1)", phi)?;
    Ok((count - h) * (phi - 1) + h * (half_phi - 1))
}

/// Excess pairs of the power-form words with gap `l` (one base symbol).
pub fn f2(n: u64, l: u64) -> Result<u64> {
    check_l(n, l)?;
    let phi = totient_table(l as usize + 1);
    to_u64("f2", f2_with(n, l, phi[l as usize + 1])?)
}

/// Pairs generating the `2(n + 1)` words with a single minority symbol.
pub fn f1(n: u64) -> Result<u64> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("f1 needs n >= 3, got {n}")));
    }
    let phi = totient_table(n as usize + 1);
    // prefix[m] = sum_{p <= m} phi(p)
    let mut prefix = vec![0u64; phi.len()];
    for m in 1..phi.len() {
        prefix[m] = prefix[m - 1] + phi[m];
    }
    let k = n / 2;
    let value = if n % 2 == 1 {
        2 * (k..=2 * k).map(|i| prefix[i as usize + 1]).sum::<u64>()
    } else {
        2 * (k..2 * k).map(|i| prefix[i as usize + 1]).sum::<u64>() + prefix[k as usize]
    };
    Ok(value)
}

/// `(1/2) sum_{p=3..n} phi(p)(n^2 - p^2 + n + p)`
fn half_pair_sum(n: u64, phi: &[u64]) -> Result<i128> {
    let n = n as i128;
    let mut total: i128 = 0;
    for p in 3..=n {
        let term = checked("pair sum", (n * n - p * p + n + p).checked_mul(phi[p as usize] as i128))?;
        total = checked("pair sum", total.checked_add(term))?;
    }
    halve("sum phi(p)(n^2 - p^2 + n + p)", total)
}

/// Ordered pairs of distinct same-slope Sturmian words of length `n`,
/// slopes below 1/2.
pub fn f_pairs(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("f_pairs needs n >= 1".into()));
    }
    let phi = totient_table(n as usize);
    let base = n as i128 * (n as i128 + 1);
    to_u64("f_pairs", base + half_pair_sum(n, &phi)?)
}

fn check_closed_domain(m: u64) -> Result<u64> {
    if m < 4 {
        return Err(Error::InvalidArgument(format!(
            "the closed form covers lengths m >= 4, got {m}"
        )));
    }
    Ok(m - 1)
}

fn f2_total(n: u64, phi: &[u64]) -> Result<i128> {
    let mut total: i128 = 0;
    for l in 2..n {
        total += f2_with(n, l, phi[l as usize + 1])?;
    }
    Ok(total)
}

/// The closed formula as written:
/// `n^2 + 3n + 4 + (1/2) sum phi(p)(n^2 - p^2 + n + p) - f1(n) - 2 sum f2(n, l)`.
pub fn f_closed_expansion(m: u64) -> Result<u64> {
    let n = check_closed_domain(m)?;
    let phi = totient_table(n as usize + 1);
    let ni = n as i128;
    let value = ni * ni + 3 * ni + 4 + half_pair_sum(n, &phi)? - f1(n)? as i128 - 2 * f2_total(n, &phi)?;
    to_u64("f_closed", value)
}

/// The same count assembled term by term:
/// `f_pairs(n) + 2 - f1(n) + 2(n + 1) - 2 sum f2(n, l)`.
pub fn f_closed_assembly(m: u64) -> Result<u64> {
    let n = check_closed_domain(m)?;
    let phi = totient_table(n as usize + 1);
    let value = f_pairs(n)? as i128 + 2 - f1(n)? as i128 + 2 * (n as i128 + 1) - 2 * f2_total(n, &phi)?;
    to_u64("f_closed", value)
}

/// Number of rotation words of length `m >= 4`; both evaluations must agree.
pub fn f_closed(m: u64) -> Result<u64> {
    let expansion = f_closed_expansion(m)?;
    let assembly = f_closed_assembly(m)?;
    if expansion != assembly {
        return Err(Error::AssemblyMismatch {
            n: m - 1,
            expansion,
            assembly,
        });
    }
    Ok(expansion)
}

/// `f(m)` for every `m >= 1`.
pub fn rotation_word_count(m: u64) -> Result<u64> {
    if let Some(&(_, f)) = SMALL_COUNTS.iter().find(|&&(k, _)| k == m) {
        return Ok(f);
    }
    if m == 0 {
        return Err(Error::InvalidArgument("word length must be positive".into()));
    }
    f_closed(m)
}

/// `4 pi^2 f / (3 m^4)`.
pub fn ratio(m: u64, f: u64) -> f64 {
    let m = m as f64;
    4.0 * PI * PI * f as f64 / (3.0 * m * m * m * m)
}

pub fn asymptotic_ratio(m: u64) -> Result<f64> {
    Ok(ratio(m, f_closed(m)?))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    #[default]
    Closed,
    Geometric,
    Pairs,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Closed => "closed",
            Method::Geometric => "geometric",
            Method::Pairs => "pairs",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Method::Closed),
            "geometric" => Ok(Method::Geometric),
            "pairs" => Ok(Method::Pairs),
            _ => Err(Error::InvalidArgument(format!("unknown method {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CountReport {
    pub n: u64,
    pub f: u64,
    pub ratio: f64,
    pub method: Method,
}

impl CountReport {
    pub fn new(n: u64, f: u64, method: Method) -> Self {
        CountReport {
            n,
            f,
            ratio: ratio(n, f),
            method,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_and_h_examples() {
        assert_eq!(g(5, 2).unwrap(), 6);
        assert_eq!(g(3, 2).unwrap(), 2);
        assert_eq!(g(6, 2).unwrap(), 5);
        assert_eq!(h(5, 2).unwrap(), 3);
        assert_eq!(h(3, 2).unwrap(), 1);
        assert_eq!(h(10, 2).unwrap(), 3);
        assert!(g(5, 1).is_err());
        assert!(g(5, 5).is_err());
        assert!(h(2, 2).is_err());
    }

    #[test]
    fn f2_examples() {
        assert_eq!(f2(6, 2).unwrap(), 2);
        assert_eq!(f2(5, 2).unwrap(), 0);
        assert_eq!(f2(3, 2).unwrap(), 0);
        assert!(f2(4, 4).is_err());
    }

    #[test]
    fn f1_examples() {
        assert_eq!(f1(3).unwrap(), 12);
        assert_eq!(f1(4).unwrap(), 22);
        assert_eq!(f1(5).unwrap(), 40);
        assert!(f1(2).is_err());
    }

    #[test]
    fn f_pairs_examples() {
        assert_eq!(f_pairs(1).unwrap(), 2);
        assert_eq!(f_pairs(2).unwrap(), 6);
        assert_eq!(f_pairs(3).unwrap(), 18);
        assert!(f_pairs(0).is_err());
    }

    #[test]
    fn f_closed_examples() {
        assert_eq!(f_closed(4).unwrap(), 16);
        assert_eq!(f_closed(7).unwrap(), 112);
        assert_eq!(f_closed(100).unwrap(), 7_155_096);
        assert!(f_closed(3).is_err());
    }

    #[test]
    fn small_values_come_from_the_table() {
        assert_eq!(rotation_word_count(1).unwrap(), 2);
        assert_eq!(rotation_word_count(2).unwrap(), 4);
        assert_eq!(rotation_word_count(3).unwrap(), 8);
        assert_eq!(rotation_word_count(4).unwrap(), 16);
        assert!(rotation_word_count(0).is_err());
    }

    #[test]
    fn ratio_examples() {
        for (m, expected) in [(6, 0.65), (30, 0.83), (100, 0.94)] {
            let r = asymptotic_ratio(m).unwrap();
            assert!((r - expected).abs() <= 0.005, "m = {m}: {r}");
        }
    }

    #[test]
    fn report_ratio_is_consistent() {
        let rep = CountReport::new(7, 112, Method::Closed);
        let expected = 4.0 * PI * PI * 112.0 / (3.0 * 2401.0);
        assert!(((rep.ratio - expected) / expected).abs() <= 1e-12);
    }

    #[test]
    fn large_arguments_stay_exact() {
        // Neither route overflows at n = 3000 and both still agree.
        let big = f_closed(3000).unwrap();
        assert!(big > 0);
        assert_eq!(f_closed_expansion(3000).unwrap(), f_closed_assembly(3000).unwrap());
    }
}
