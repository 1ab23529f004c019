use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Arithmetic {
    Exact,
    Float,
}

/// A piece length. Implemented by [`Exact`] (big rationals) and [`Real`]
/// (finite doubles); the enumerator and the analyses are generic over it.
pub trait Length: Clone + Ord + Send + Sync + fmt::Debug + fmt::Display + Serialize + 'static {
    const ARITHMETIC: Arithmetic;

    fn to_f64(&self) -> f64;

    fn is_positive(&self) -> bool;

    /// `|sum(lengths) - target|`. Exact rows report `0.0` only when the sum
    /// is exactly the target; any nonzero gap is reported as a positive
    /// number even if it underflows.
    fn sum_deviation(lengths: &[Self], target: &Self) -> f64;

    /// `count * self / target - 1`, evaluated without cancellation for exact
    /// values.
    fn scaled_deviation(&self, count: usize, target: &Self) -> f64;
}

/// Exact rational length. Carries a correctly rounded `f64` image so that
/// ordering only falls back to big-integer arithmetic for near ties.
#[derive(Clone)]
pub struct Exact {
    value: BigRational,
    approx: f64,
}

impl Exact {
    pub fn new(value: BigRational) -> Self {
        let approx = value.to_f64().unwrap_or(f64::NAN);
        Exact { value, approx }
    }

    pub fn from_ratio(numer: i64, denom: i64) -> Self {
        Exact::new(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    /// `1 / denom`.
    pub fn reciprocal(denom: u64) -> Self {
        Exact::new(BigRational::new(BigInt::one(), BigInt::from(denom)))
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn into_value(self) -> BigRational {
        self.value
    }
}

impl PartialEq for Exact {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
    }
}

impl Eq for Exact {}

impl PartialOrd for Exact {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Exact {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (self.approx, other.approx);
        let scale = a.abs().max(b.abs());
        if (a - b).abs() > 1e-12 * scale {
            a.total_cmp(&b)
        } else {
            self.value.cmp(&other.value)
        }
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.denom().is_one() {
            write!(f, "{}", self.value.numer())
        } else {
            write!(f, "{}/{}", self.value.numer(), self.value.denom())
        }
    }
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Exact {
    type Err = Error;

    /// Accepts `"p/q"` or a bare integer `"p"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("`{s}` is not a rational of the form p/q"));
        let s = s.trim();
        let (numer, denom) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let numer: BigInt = numer.parse().map_err(|_| bad())?;
        let denom: BigInt = denom.parse().map_err(|_| bad())?;
        if denom.is_zero() {
            return Err(bad());
        }
        Ok(Exact::new(BigRational::new(numer, denom)))
    }
}

impl Serialize for Exact {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Length for Exact {
    const ARITHMETIC: Arithmetic = Arithmetic::Exact;

    fn to_f64(&self) -> f64 {
        self.approx
    }

    fn is_positive(&self) -> bool {
        self.value.is_positive()
    }

    fn sum_deviation(lengths: &[Self], target: &Self) -> f64 {
        let sum = lengths
            .iter()
            .fold(BigRational::zero(), |acc, l| acc + &l.value);
        let gap = (sum - &target.value).abs();
        if gap.is_zero() {
            0.0
        } else {
            gap.to_f64().unwrap_or(f64::INFINITY).max(f64::MIN_POSITIVE)
        }
    }

    fn scaled_deviation(&self, count: usize, target: &Self) -> f64 {
        let scaled = &self.value * BigRational::from_integer(BigInt::from(count)) / &target.value;
        (scaled - BigRational::one()).to_f64().unwrap_or(f64::NAN)
    }
}

/// Floating length with a total order.
#[derive(Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Real(pub f64);

impl Real {
    pub fn get(self) -> f64 {
        self.0
    }
}

impl Eq for Real {}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Real {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl Length for Real {
    const ARITHMETIC: Arithmetic = Arithmetic::Float;

    fn to_f64(&self) -> f64 {
        self.0
    }

    fn is_positive(&self) -> bool {
        self.0 > 0.0 && self.0.is_finite()
    }

    fn sum_deviation(lengths: &[Self], target: &Self) -> f64 {
        (crate::numeric::neumaier_sum(lengths.iter().map(|l| l.0)) - target.0).abs()
    }

    fn scaled_deviation(&self, count: usize, target: &Self) -> f64 {
        count as f64 * self.0 / target.0 - 1.0
    }
}
