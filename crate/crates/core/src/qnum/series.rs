//! Truncated power series in δ (with `q = e^δ`) over exact rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `c₀ + c₁δ + … + c_Nδ^N`; every product drops δ^{N+1} and beyond.
#[derive(Clone, PartialEq, Eq)]
pub struct DeltaSeries {
    coeffs: Vec<BigRational>,
}

impl DeltaSeries {
    /// Pads with zeros or truncates so the result has degree `order`.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        DeltaSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        Self::new(vec![c], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of δ^k; zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True when every odd coefficient vanishes.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        DeltaSeries { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    fn check_orders(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "series truncation orders differ");
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        self.check_orders(rhs);
        let b0 = &rhs.coeffs[0];
        if b0.is_zero() {
            return Err(Error::Series("division by a series with zero constant term".into()));
        }
        let mut out: Vec<BigRational> = Vec::with_capacity(self.coeffs.len());
        for n in 0..self.coeffs.len() {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                acc -= &rhs.coeffs[k] * &out[n - k];
            }
            out.push(acc / b0);
        }
        Ok(DeltaSeries { coeffs: out })
    }

    /// Square root; needs a positive constant term that is the square of a
    /// rational.
    pub fn sqrt(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if !c0.is_positive() {
            return Err(Error::Series(format!("square root of a series with constant term {c0}")));
        }
        let s0 = rational_sqrt(c0).ok_or_else(|| {
            Error::Series(format!("constant term {c0} is not the square of a rational"))
        })?;
        let two_s0 = &s0 * BigRational::from_integer(2.into());
        let mut out = vec![s0];
        for n in 1..self.coeffs.len() {
            let mut acc = self.coeffs[n].clone();
            for k in 1..n {
                acc -= &out[k] * &out[n - k];
            }
            out.push(acc / &two_s0);
        }
        Ok(DeltaSeries { coeffs: out })
    }

    /// Sums the truncated series at a numeric δ.
    pub fn eval_f64(&self, delta: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * delta + c.to_f64().unwrap_or(f64::NAN))
    }
}

fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    let root = |n: &BigInt| -> Option<BigInt> {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    Some(BigRational::new(root(r.numer())?, root(r.denom())?))
}

impl fmt::Debug for DeltaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c})δ^{k}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0 + O(δ^{})", self.order() + 1)
        } else {
            write!(f, "{} + O(δ^{})", terms.join(" + "), self.order() + 1)
        }
    }
}

impl Add for &DeltaSeries {
    type Output = DeltaSeries;
    fn add(self, rhs: &DeltaSeries) -> DeltaSeries {
        self.check_orders(rhs);
        DeltaSeries { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &DeltaSeries {
    type Output = DeltaSeries;
    fn sub(self, rhs: &DeltaSeries) -> DeltaSeries {
        self.check_orders(rhs);
        DeltaSeries { coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect() }
    }
}

impl Mul for &DeltaSeries {
    type Output = DeltaSeries;
    fn mul(self, rhs: &DeltaSeries) -> DeltaSeries {
        self.check_orders(rhs);
        let n = self.coeffs.len();
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        DeltaSeries { coeffs: out }
    }
}

impl Neg for &DeltaSeries {
    type Output = DeltaSeries;
    fn neg(self) -> DeltaSeries {
        DeltaSeries { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// `sinh(aδ)/δ = Σ a^{2k+1} δ^{2k} / (2k+1)!`.
pub fn reduced_sinh_series(a: &BigRational, order: usize) -> DeltaSeries {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    for k in (0..=order).step_by(2) {
        let power = num_traits::pow(a.clone(), k + 1);
        coeffs[k] = power / BigRational::from_integer(factorial(k + 1));
    }
    DeltaSeries { coeffs }
}

/// `cosh(aδ) = Σ a^{2k} δ^{2k} / (2k)!`.
pub fn cosh_series(a: &BigRational, order: usize) -> DeltaSeries {
    let mut coeffs = vec![BigRational::zero(); order + 1];
    for k in (0..=order).step_by(2) {
        coeffs[k] = num_traits::pow(a.clone(), k) / BigRational::from_integer(factorial(k));
    }
    DeltaSeries { coeffs }
}

fn check_order(order: usize) -> Result<()> {
    if order < 2 {
        return Err(Error::Series(format!("truncation order must be at least 2, got {order}")));
    }
    Ok(())
}

/// Taylor series of `[x]_p` about δ = 0: `sinh(pxδ) / sinh(pδ)`.
pub fn bracket_series(x: &BigRational, p: &BigRational, order: usize) -> Result<DeltaSeries> {
    check_order(order)?;
    if !p.is_positive() {
        return Err(Error::Series(format!("bracket subscript must be positive, got {p}")));
    }
    let num = reduced_sinh_series(&(p * x), order);
    let den = reduced_sinh_series(p, order);
    num.checked_div(&den)
}

/// Series of the type-(2) non-minimal form `[x₁]_{p₁} − [x₂]_{p₂}`.
pub fn nonminimal_difference_series(
    x1: &BigRational,
    p1: &BigRational,
    x2: &BigRational,
    p2: &BigRational,
    order: usize,
) -> Result<DeltaSeries> {
    Ok(&bracket_series(x1, p1, order)? - &bracket_series(x2, p2, order)?)
}
