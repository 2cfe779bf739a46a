//! Exact scalar types.
//!
//! Every value in this crate is either an [`Int`] (arbitrary-precision
//! integer) or a [`Rat`] (reduced fraction with positive denominator).
//! Code that works for both is written against the [`Scalar`] trait.

use std::fmt;
use std::ops::{AddAssign, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Int = BigInt;
pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid integer literal {0:?}")]
    Int(String),
    #[error("invalid rational literal {0:?}")]
    Rat(String),
}

/// Coefficient ring for polynomials and triangles: exact, ordered, and
/// convertible to [`Rat`].
pub trait Scalar:
    Clone
    + Ord
    + Zero
    + One
    + Signed
    + fmt::Display
    + fmt::Debug
    + From<Int>
    + Send
    + Sync
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> std::ops::Mul<&'a Self, Output = Self>
    + 'static
{
    fn to_rat(&self) -> Rat;

    /// Parses the decimal string form (`"-12"`, or `"3/4"` for rationals).
    fn parse_decimal(s: &str) -> Result<Self, ParseError>;

    /// Returns the integer value if this scalar is integral.
    fn to_int(&self) -> Option<Int>;
}

impl Scalar for Int {
    fn to_rat(&self) -> Rat {
        Rat::from_integer(self.clone())
    }

    fn parse_decimal(s: &str) -> Result<Self, ParseError> {
        parse_int(s)
    }

    fn to_int(&self) -> Option<Int> {
        Some(self.clone())
    }
}

impl Scalar for Rat {
    fn to_rat(&self) -> Rat {
        self.clone()
    }

    fn parse_decimal(s: &str) -> Result<Self, ParseError> {
        parse_rat(s)
    }

    fn to_int(&self) -> Option<Int> {
        self.is_integer().then(|| self.to_integer())
    }
}

/// Parses a base-10 integer. Only ASCII `-`/`+` signs are accepted.
pub fn parse_int(s: &str) -> Result<Int, ParseError> {
    let t = s.trim();
    let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError::Int(s.to_string()));
    }
    Int::from_str(t).map_err(|_| ParseError::Int(s.to_string()))
}

/// Parses `"p"` or `"p/q"` with `q != 0`; the result is reduced.
pub fn parse_rat(s: &str) -> Result<Rat, ParseError> {
    let t = s.trim();
    match t.split_once('/') {
        None => parse_int(t).map(Rat::from_integer),
        Some((p, q)) => {
            let p = parse_int(p).map_err(|_| ParseError::Rat(s.to_string()))?;
            let q = parse_int(q).map_err(|_| ParseError::Rat(s.to_string()))?;
            if q.is_zero() {
                return Err(ParseError::Rat(s.to_string()));
            }
            Ok(Rat::new(p, q))
        }
    }
}

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(Int::from(p), Int::from(q))
}

pub fn factorial(n: u64) -> Int {
    (1..=n).fold(Int::one(), |acc, k| acc * k)
}

pub fn binomial(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for j in 0..k {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Int {
    values
        .into_iter()
        .fold(Int::one(), |acc, v| acc.lcm(v.denom()))
}

/// `i64` view of a small integer, for index arithmetic in reports.
pub fn small(v: &Int) -> Option<i64> {
    v.to_i64()
}
