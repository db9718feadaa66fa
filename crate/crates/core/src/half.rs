//! Exact half-integers, stored as twice their value.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A number in ½ℤ. Index arithmetic on angular-momentum-like labels never
/// touches floating point.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Half(i32);

impl Half {
    pub const ZERO: Half = Half(0);
    pub const HALF: Half = Half(1);
    pub const ONE: Half = Half(2);

    /// Builds the half-integer `twice / 2`.
    pub const fn from_twice(twice: i32) -> Self {
        Half(twice)
    }

    pub const fn int(n: i32) -> Self {
        Half(2 * n)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn to_rational(self) -> BigRational {
        BigRational::new(BigInt::from(self.0), BigInt::from(2))
    }

    /// `2·self`, which is always an integer.
    pub const fn double(self) -> Half {
        Half(2 * self.0)
    }

    /// Integer value; `None` for half-odd values.
    pub const fn as_integer(self) -> Option<i32> {
        if self.is_integer() {
            Some(self.0 / 2)
        } else {
            None
        }
    }

    /// Inclusive range `lo, lo+step, …` up to `hi`.
    pub fn range(lo: Half, hi: Half, step: Half) -> impl Iterator<Item = Half> {
        assert!(step.0 > 0, "range step must be positive");
        (lo.0..=hi.0).step_by(step.0 as usize).map(Half)
    }

    /// `−j, −j+1, …, j`.
    pub fn projections(j: Half) -> impl Iterator<Item = Half> {
        Half::range(-j, j, Half::ONE)
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl From<i32> for Half {
    fn from(n: i32) -> Self {
        Half::int(n)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl fmt::Debug for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `"3"`, `"-1/2"`, `"3/2"`, `"1.5"` and `"-0.5"`.
impl FromStr for Half {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || Error::Parse(format!("`{s}` is not a half-integer"));
        if let Some((num, den)) = s.split_once('/') {
            let num: i32 = num.trim().parse().map_err(|_| bad())?;
            return match den.trim() {
                "1" => Ok(Half::int(num)),
                "2" => Ok(Half(num)),
                _ => Err(bad()),
            };
        }
        if let Some((whole, frac)) = s.split_once('.') {
            let negative = whole.starts_with('-');
            let whole: i32 = match whole {
                "" | "-" | "+" => 0,
                w => w.parse().map_err(|_| bad())?,
            };
            let frac = frac.trim_end_matches('0');
            let half = match frac {
                "" => 0,
                "5" => 1,
                _ => return Err(bad()),
            };
            let twice = 2 * whole.abs() + half;
            return Ok(Half(if negative { -twice } else { twice }));
        }
        s.parse::<i32>().map(Half::int).map_err(|_| bad())
    }
}

impl Serialize for Half {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Half {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
