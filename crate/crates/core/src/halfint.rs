//! Exact half-integer arithmetic.
//!
//! Every exponent in this crate is a half-integer: a rational number `x` with
//! `2x` an integer. Values store the doubled integer, so addition, subtraction
//! and comparison are exact. No floating point appears anywhere in the engine.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A half-integer `x`, stored exactly as `twice = 2x`.
///
/// The parity of `twice` distinguishes integer exponents from strict
/// half-integer exponents.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    /// The half-integer `twice / 2`.
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    /// The integer `n` viewed as a half-integer.
    pub const fn from_int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    /// The doubled value `2x`. This is the serialized form.
    pub const fn twice(self) -> i64 {
        self.twice
    }

    /// Whether `x` is an integer.
    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// Whether `self - other` is an integer, i.e. both values lie on the same
    /// unit lattice.
    pub const fn same_lattice(self, other: HalfInt) -> bool {
        (self.twice - other.twice) % 2 == 0
    }

    /// The smallest integer not smaller than `x`.
    pub fn ceil(self) -> i64 {
        (self.twice + self.twice.rem_euclid(2)) / 2
    }

    /// Iterates `self, self + 1, ..., end` in unit steps; empty when
    /// `end < self`.
    pub fn through(self, end: HalfInt) -> impl Iterator<Item = HalfInt> {
        (self.twice..=end.twice).step_by(2).map(HalfInt::from_twice)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + rhs.twice)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice - rhs.twice)
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: i64) -> HalfInt {
        HalfInt::from_twice(self.twice + 2 * rhs)
    }
}

impl Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: i64) -> HalfInt {
        HalfInt::from_twice(self.twice - 2 * rhs)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_twice(-self.twice)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Error produced when parsing a half-integer from text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseHalfIntError(String);

impl fmt::Display for ParseHalfIntError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid half-integer {:?}: expected \"n\" or \"n/2\"", self.0)
    }
}

impl std::error::Error for ParseHalfIntError {}

impl FromStr for HalfInt {
    type Err = ParseHalfIntError;

    /// Accepts an integer (`"2"`, `"-3"`) or a doubled numerator over two
    /// (`"9/2"`, `"-1/2"`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseHalfIntError(s.to_owned());
        if let Some(num) = s.strip_suffix("/2") {
            let n: i64 = num.trim().parse().map_err(|_| bad())?;
            Ok(HalfInt::from_twice(n))
        } else {
            let n: i64 = s.trim().parse().map_err(|_| bad())?;
            Ok(HalfInt::from_int(n))
        }
    }
}
