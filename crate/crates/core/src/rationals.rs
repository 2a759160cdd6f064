//! Exact rationals, Euler's totient and Farey sequences.
//!
//! Every slope, intercept and Farey element handled by the crate is a
//! [`Fraction`] in lowest terms. Farey sequences are produced with the
//! next-term recurrence, so generating `F_n` costs `O(|F_n|)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: u64, b: u64) -> Result<u64> {
    if a == 0 || b == 0 {
        return Ok(0);
    }
    (a / gcd(a, b)).checked_mul(b).ok_or(Error::Overflow("lcm"))
}

/// A non-negative rational number in lowest terms.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fraction {
    num: u64,
    den: u64,
}

impl Fraction {
    pub const ZERO: Fraction = Fraction { num: 0, den: 1 };
    pub const ONE: Fraction = Fraction { num: 1, den: 1 };

    /// Builds `num/den` reduced to lowest terms.
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidArgument(format!("{num}/0 has a zero denominator")));
        }
        let g = gcd(num, den);
        Ok(Fraction {
            num: num / g,
            den: den / g,
        })
    }

    pub fn numerator(self) -> u64 {
        self.num
    }

    pub fn denominator(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// True for values in `[0, 1)`, i.e. points of the unit circle.
    pub fn is_on_circle(self) -> bool {
        self.num < self.den
    }

    /// Fractional part of `self + other`.
    pub fn add_mod_one(self, other: Fraction) -> Result<Fraction> {
        let den = lcm(self.den, other.den)?;
        let a = self.num as u128 * (den / self.den) as u128;
        let b = other.num as u128 * (den / other.den) as u128;
        let num = ((a + b) % den as u128) as u64;
        Fraction::new(num, den)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses `"q/p"` or a bare integer. The result is reduced, so `"2/4"`
/// parses to `1/2`; callers that need a canonical spelling check for it.
impl FromStr for Fraction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseFraction(s.to_string());
        let (num, den) = match s.trim().split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let num: u64 = num.parse().map_err(|_| bad())?;
        let den: u64 = den.parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        Fraction::new(num, den)
    }
}

/// Two consecutive members of the Farey series of some order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FareyInterval {
    left: Fraction,
    right: Fraction,
    order: u64,
}

impl FareyInterval {
    /// Checks the Farey-neighbour conditions before building the interval.
    pub fn new(left: Fraction, right: Fraction, order: u64) -> Result<Self> {
        let det = right.num as i128 * left.den as i128 - left.num as i128 * right.den as i128;
        if det != 1 || left.den > order || right.den > order || right > Fraction::ONE {
            return Err(Error::InvalidArgument(format!(
                "[{left}, {right}] is not a Farey interval of order {order}"
            )));
        }
        Ok(FareyInterval { left, right, order })
    }

    pub fn left(&self) -> Fraction {
        self.left
    }

    pub fn right(&self) -> Fraction {
        self.right
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// The mediant, the canonical interior slope of the interval.
    pub fn mediant(&self) -> Fraction {
        // Neighbours are coprime in both coordinates, so no reduction happens.
        Fraction {
            num: self.left.num + self.right.num,
            den: self.left.den + self.right.den,
        }
    }

    /// Strict containment in the open interval.
    pub fn contains(&self, x: Fraction) -> bool {
        self.left < x && x < self.right
    }
}

impl fmt::Display for FareyInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.left, self.right)
    }
}

impl fmt::Debug for FareyInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}@{}", self.order)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SlopeRange {
    #[default]
    Full,
    /// Only intervals whose left endpoint is below 1/2.
    BelowHalf,
}

impl SlopeRange {
    pub fn admits(self, interval: &FareyInterval) -> bool {
        match self {
            SlopeRange::Full => true,
            SlopeRange::BelowHalf => interval.left.num * 2 < interval.left.den,
        }
    }
}

/// Euler's totient by trial factorisation.
pub fn totient(m: u64) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidArgument("totient(0) is undefined".into()));
    }
    let mut rest = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if rest > 1 {
        result -= result / rest;
    }
    Ok(result)
}

/// `phi[k]` for `0 <= k <= m` by a linear-time sieve; `phi[0]` is 0.
pub fn totient_table(m: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=m as u64).collect();
    for p in 2..=m {
        if phi[p] == p as u64 {
            for k in (p..=m).step_by(p) {
                phi[k] -= phi[k] / p as u64;
            }
        }
    }
    phi
}

/// `sum_{p=1..m} phi(p)`; zero for `m = 0`.
pub fn totient_sum(m: u64) -> u64 {
    totient_table(m as usize).iter().sum()
}

/// The Farey series of the given order, from `0/1` to `1/1`.
pub fn farey(order: u64) -> Result<Vec<Fraction>> {
    if order == 0 {
        return Err(Error::InvalidArgument("Farey order must be at least 1".into()));
    }
    let mut out = vec![Fraction::ZERO];
    let (mut a, mut b, mut c, mut d) = (0u64, 1u64, 1u64, order);
    while c <= order {
        out.push(Fraction { num: c, den: d });
        let k = (order + b) / d;
        (a, b, c, d) = (c, d, k * c - a, k * d - b);
    }
    Ok(out)
}

/// `(a.num + b.num) / (a.den + b.den)`, reduced.
pub fn mediant(a: Fraction, b: Fraction) -> Result<Fraction> {
    if a >= b {
        return Err(Error::InvalidArgument(format!("mediant needs {a} < {b}")));
    }
    let num = a.num.checked_add(b.num).ok_or(Error::Overflow("mediant"))?;
    let den = a.den.checked_add(b.den).ok_or(Error::Overflow("mediant"))?;
    Fraction::new(num, den)
}

pub fn farey_intervals(order: u64, range: SlopeRange) -> Result<Vec<FareyInterval>> {
    let terms = farey(order)?;
    Ok(terms
        .windows(2)
        .map(|w| FareyInterval {
            left: w[0],
            right: w[1],
            order,
        })
        .filter(|iv| range.admits(iv))
        .collect())
}

/// Finds the interval of the given order whose left endpoint is `left`.
pub fn interval_starting_at(order: u64, left: Fraction) -> Result<FareyInterval> {
    farey_intervals(order, SlopeRange::Full)?
        .into_iter()
        .find(|iv| iv.left == left)
        .ok_or_else(|| Error::InvalidArgument(format!("{left} does not start a Farey interval of order {order}")))
}
