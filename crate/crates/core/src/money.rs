//! Exact dollar amounts.
//!
//! Every amount is a rational number of dollars held in lowest terms. Nothing
//! is rounded until an amount is rendered, and then only once, half away from
//! zero to the nearest whole dollar.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactAmount(BigRational);

impl ExactAmount {
    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn dollars(whole: i64) -> Self {
        Self(BigRational::from_integer(BigInt::from(whole)))
    }

    /// `numerator / denominator` dollars. Panics on a zero denominator.
    pub fn from_ratio(numerator: i64, denominator: i64) -> Self {
        Self(BigRational::new(
            BigInt::from(numerator),
            BigInt::from(denominator),
        ))
    }

    pub fn from_rational(value: BigRational) -> Self {
        Self(value)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    /// Always positive; `BigRational` normalizes the sign onto the numerator.
    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// Scales by an exact ratio (a proration fraction).
    pub fn scale(&self, ratio: &BigRational) -> Self {
        Self(&self.0 * ratio)
    }

    pub fn min(self, other: Self) -> Self {
        match self.cmp(&other) {
            Ordering::Greater => other,
            _ => self,
        }
    }

    /// Nearest whole dollar, ties away from zero.
    pub fn round_dollars(&self) -> BigInt {
        self.0.round().to_integer()
    }

    pub fn rounded_i128(&self) -> Result<i128> {
        self.round_dollars()
            .to_i128()
            .ok_or_else(|| Error::AmountOverflow(self.to_string()))
    }

    pub fn numerator_i128(&self) -> Result<i128> {
        self.numerator()
            .to_i128()
            .ok_or_else(|| Error::AmountOverflow(self.to_string()))
    }

    pub fn denominator_i128(&self) -> Result<i128> {
        self.denominator()
            .to_i128()
            .ok_or_else(|| Error::AmountOverflow(self.to_string()))
    }

    pub fn is_whole(&self) -> bool {
        self.0.denom().is_one()
    }
}

impl Default for ExactAmount {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for ExactAmount {
    type Output = ExactAmount;

    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a ExactAmount> for &'a ExactAmount {
    type Output = ExactAmount;

    fn add(self, rhs: Self) -> ExactAmount {
        ExactAmount(&self.0 + &rhs.0)
    }
}

impl Sub for ExactAmount {
    type Output = ExactAmount;

    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl<'a> Sub<&'a ExactAmount> for &'a ExactAmount {
    type Output = ExactAmount;

    fn sub(self, rhs: Self) -> ExactAmount {
        ExactAmount(&self.0 - &rhs.0)
    }
}

/// Renders the exact value, `n` or `n/d`.
impl fmt::Display for ExactAmount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Groups digits in threes with commas: `-1234567` -> `-1,234,567`.
pub fn with_thousands(value: &BigInt) -> String {
    let digits = value.abs().to_string();
    let mut out = String::with_capacity(digits.len() + digits.len() / 3 + 1);
    if value.is_negative() {
        out.push('-');
    }
    for (i, ch) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i) % 3 == 0 {
            out.push(',');
        }
        out.push(ch);
    }
    out
}

/// `$489,583`, or `-$125,000` for negative amounts.
pub fn format_dollars(amount: &ExactAmount) -> String {
    let rounded = amount.round_dollars();
    if rounded.is_negative() {
        format!("-${}", with_thousands(&rounded.abs()))
    } else {
        format!("${}", with_thousands(&rounded))
    }
}
