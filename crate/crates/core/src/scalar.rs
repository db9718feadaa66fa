//! The two numeric domains generator matrices are built over: `f64` and a
//! decimal big-float with a configurable number of significant digits.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use dashu_float::DBig;

use crate::error::{Error, Result};

/// Field operations plus the handful of transcendental functions the
/// constructions need.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Short name used in reports ("double", "high:60").
    fn precision_tag() -> String;

    /// Absolute tolerance for relation residuals in this domain.
    fn default_tolerance() -> f64;

    fn from_i64(v: i64) -> Self;
    fn from_f64(v: f64) -> Self;
    fn parse_decimal(s: &str) -> Result<Self>;
    fn to_f64(&self) -> f64;

    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn powi(&self, n: i32) -> Self;
    fn abs(&self) -> Self;
    fn is_zero(&self) -> bool;

    /// Full-precision decimal text that [`Scalar::parse_decimal`] maps back
    /// to the identical value.
    fn to_exact_string(&self) -> String;

    fn zero() -> Self {
        Self::from_i64(0)
    }

    fn one() -> Self {
        Self::from_i64(1)
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    fn max_of(a: Self, b: Self) -> Self {
        if b > a {
            b
        } else {
            a
        }
    }
}

impl Scalar for f64 {
    fn precision_tag() -> String {
        "double".into()
    }
    fn default_tolerance() -> f64 {
        1e-9
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn parse_decimal(s: &str) -> Result<Self> {
        s.trim()
            .parse()
            .map_err(|_| Error::Parse(format!("`{s}` is not a number")))
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn to_exact_string(&self) -> String {
        // `Display` for f64 is the shortest string that round-trips.
        format!("{self}")
    }
}

static HIGH_PRECISION_DIGITS: AtomicUsize = AtomicUsize::new(60);

/// Smallest accepted setting for [`set_high_precision_digits`].
pub const MIN_HIGH_PRECISION_DIGITS: usize = 50;

/// Sets the number of significant decimal digits for every
/// [`HighPrecision`] value created afterwards. Process-wide.
pub fn set_high_precision_digits(digits: usize) -> Result<()> {
    if digits < MIN_HIGH_PRECISION_DIGITS {
        return Err(Error::InvalidParameter(format!(
            "high precision needs at least {MIN_HIGH_PRECISION_DIGITS} digits, got {digits}"
        )));
    }
    HIGH_PRECISION_DIGITS.store(digits, AtomicOrdering::Relaxed);
    Ok(())
}

pub fn high_precision_digits() -> usize {
    HIGH_PRECISION_DIGITS.load(AtomicOrdering::Relaxed)
}

/// Decimal big-float with [`high_precision_digits`] significant digits.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct HighPrecision(DBig);

impl HighPrecision {
    fn rounded(v: DBig) -> Self {
        HighPrecision(v.with_precision(high_precision_digits()).value())
    }

    pub fn inner(&self) -> &DBig {
        &self.0
    }
}

impl fmt::Debug for HighPrecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for HighPrecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for HighPrecision {
            type Output = HighPrecision;
            fn $method(self, rhs: HighPrecision) -> HighPrecision {
                HighPrecision($tr::$method(self.0, rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for HighPrecision {
    type Output = HighPrecision;
    fn neg(self) -> HighPrecision {
        HighPrecision(-self.0)
    }
}

impl Scalar for HighPrecision {
    fn precision_tag() -> String {
        format!("high:{}", high_precision_digits())
    }
    fn default_tolerance() -> f64 {
        1e-30
    }
    fn from_i64(v: i64) -> Self {
        Self::rounded(DBig::from(v))
    }
    fn from_f64(v: f64) -> Self {
        // Goes through the shortest decimal form so that 1.1 means 1.1.
        Self::parse_decimal(&format!("{v}")).expect("finite f64 formats as a decimal")
    }
    fn parse_decimal(s: &str) -> Result<Self> {
        s.trim()
            .parse::<DBig>()
            .map(Self::rounded)
            .map_err(|_| Error::Parse(format!("`{s}` is not a decimal number")))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }
    fn sqrt(&self) -> Self {
        HighPrecision(self.0.sqrt())
    }
    fn exp(&self) -> Self {
        HighPrecision(self.0.exp())
    }
    fn powi(&self, n: i32) -> Self {
        HighPrecision(self.0.powi(n.into()))
    }
    fn abs(&self) -> Self {
        if self.0 < DBig::ZERO {
            -self.clone()
        } else {
            self.clone()
        }
    }
    fn is_zero(&self) -> bool {
        self.0 == DBig::ZERO
    }
    fn to_exact_string(&self) -> String {
        self.0.to_string()
    }
}
