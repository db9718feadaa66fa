//! q-numbers `[x]_p = (q^{px} − q^{−px}) / (q^p − q^{−p})`.
//!
//! Two evaluation routes live here: [`bracket`] takes arbitrary real `x` and
//! `p` in double precision, and [`QParam`] evaluates half-integer arguments
//! over any [`Scalar`] without cancellation near `q = 1`. The δ-series
//! domain (`q = e^δ`) is in [`series`].

pub mod series;

pub use series::{bracket_series, nonminimal_difference_series, DeltaSeries};

use crate::error::{Error, Result};
use crate::half::Half;
use crate::scalar::Scalar;

/// Deformation parameter `q` together with the bracket subscript `p`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeformationParams {
    q: f64,
    p: f64,
}

impl DeformationParams {
    pub fn new(q: f64, p: f64) -> Result<Self> {
        if !(q > 0.0 && q.is_finite()) {
            return Err(Error::InvalidParameter(format!("q must be positive, got {q}")));
        }
        if !(p > 0.0 && p.is_finite()) {
            return Err(Error::InvalidParameter(format!("p must be positive, got {p}")));
        }
        Ok(DeformationParams { q, p })
    }

    /// `p = 1`.
    pub fn minimal(q: f64) -> Result<Self> {
        Self::new(q, 1.0)
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn is_classical(&self) -> bool {
        self.q == 1.0
    }

    pub fn with_p(self, p: f64) -> Result<Self> {
        Self::new(self.q, p)
    }
}

/// `[x]_p` at real `x`. Exactly `x` when `q = 1`.
pub fn bracket(x: f64, params: DeformationParams) -> f64 {
    if params.is_classical() {
        return x;
    }
    // Same quotient written as sinh(pxδ)/sinh(pδ), δ = ln q.
    let delta = params.q.ln();
    (params.p * x * delta).sinh() / (params.p * delta).sinh()
}

/// Type-(3) non-minimal value `[x]_p · [y]_{p_num} / [y]_{p_den}`, with `p`
/// taken from `params`.
pub fn ratio_bracket(
    x: f64,
    y: f64,
    p_num: f64,
    p_den: f64,
    params: DeformationParams,
) -> Result<f64> {
    let den = bracket(y, params.with_p(p_den)?);
    if den == 0.0 {
        return Err(Error::DivisionByZero(format!(
            "[{y}]_{p_den} vanishes at q = {}",
            params.q
        )));
    }
    Ok(bracket(x, params) * bracket(y, params.with_p(p_num)?) / den)
}

/// q-number evaluator at a fixed `q > 0` for half-integer arguments.
///
/// `[x]_p` is computed as `S_{2x}(r) / (r + r⁻¹)` with `r = q^{p/2}` and
/// `S_N(r) = r^{N−1} + r^{N−3} + … + r^{1−N}`, which is the defining quotient
/// with the common factor `r − r⁻¹` cancelled. It is exact at `q = 1`.
#[derive(Clone, Debug)]
pub struct QParam<S> {
    q: S,
    root: S,
    classical: bool,
}

impl<S: Scalar> QParam<S> {
    pub fn new(q: S) -> Result<Self> {
        if !(q > S::zero()) {
            return Err(Error::InvalidParameter(format!("q must be positive, got {q}")));
        }
        let classical = q == S::one();
        let root = if classical { S::one() } else { q.sqrt() };
        Ok(QParam { q, root, classical })
    }

    pub fn classical() -> Self {
        QParam { q: S::one(), root: S::one(), classical: true }
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn is_classical(&self) -> bool {
        self.classical
    }

    /// `q^x`.
    pub fn pow(&self, x: Half) -> S {
        if self.classical {
            return S::one();
        }
        self.root.powi(x.twice())
    }

    /// `q^n` for integer `n`.
    pub fn powi(&self, n: i32) -> S {
        if self.classical {
            return S::one();
        }
        self.q.powi(n)
    }

    /// `[x]`.
    pub fn bracket(&self, x: Half) -> S {
        self.bracket_p(x, 1)
    }

    /// `[x]_p` for a positive integer subscript.
    pub fn bracket_p(&self, x: Half, p: u32) -> S {
        assert!(p > 0, "bracket subscript must be positive");
        if self.classical {
            return S::from_ratio(x.twice() as i64, 2);
        }
        let r = self.root.powi(p as i32);
        let n = x.twice();
        let s = symmetric_sum(&r, n.abs());
        let v = s / (r.clone() + S::one() / r);
        if n < 0 {
            -v
        } else {
            v
        }
    }

    /// `[2] = q + q⁻¹`.
    pub fn two(&self) -> S {
        self.bracket(Half::int(2))
    }

    /// `[x]₂ / [x] = (q^x + q^{−x}) / (q + q^{−1})`, continuous through `x = 0`.
    pub fn ratio_double_over_single(&self, x: Half) -> S {
        if self.classical {
            return S::one();
        }
        let qx = self.pow(x);
        (qx.clone() + S::one() / qx) / (self.q.clone() + S::one() / self.q.clone())
    }
}

/// `r^{n−1} + r^{n−3} + … + r^{1−n}` (`n` terms, zero for `n = 0`).
fn symmetric_sum<S: Scalar>(r: &S, n: i32) -> S {
    if n == 0 {
        return S::zero();
    }
    let step = r.clone() * r.clone();
    let mut term = r.powi(1 - n);
    let mut acc = S::zero();
    for _ in 0..n {
        acc = acc + term.clone();
        term = term * step.clone();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::HighPrecision;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn params(q: f64, p: f64) -> DeformationParams {
        DeformationParams::new(q, p).unwrap()
    }

    #[test]
    fn classical_limit_is_exact() {
        for x in [-3.5, 0.0, 0.25, 7.0] {
            assert_eq!(bracket(x, params(1.0, 1.0)), x);
            assert_eq!(bracket(x, params(1.0, 2.0)), x);
        }
    }

    #[test]
    fn hand_evaluated_values() {
        // (2³ − 2⁻³)/(2 − 2⁻¹) = (63/8)/(3/2)
        assert_relative_eq!(bracket(3.0, params(2.0, 1.0)), 5.25, max_relative = 1e-14);
        let q = 1.3;
        assert_relative_eq!(bracket(2.0, params(q, 1.0)), q + 1.0 / q, max_relative = 1e-14);
        assert_eq!(bracket(0.0, params(1.7, 2.0)), 0.0);
    }

    #[test]
    fn rejects_non_positive_parameters() {
        assert!(DeformationParams::new(0.0, 1.0).is_err());
        assert!(DeformationParams::new(-1.0, 1.0).is_err());
        assert!(DeformationParams::new(1.1, 0.0).is_err());
        assert!(QParam::new(0.0f64).is_err());
    }

    #[test]
    fn ratio_bracket_cases() {
        assert_eq!(ratio_bracket(2.5, 5.0, 2.0, 1.0, params(1.0, 1.0)).unwrap(), 2.5);
        let p = params(1.2, 1.0);
        let direct = bracket(5.0, params(1.2, 2.0)) / bracket(5.0, p);
        assert_relative_eq!(ratio_bracket(1.0, 5.0, 2.0, 1.0, p).unwrap(), direct, max_relative = 1e-14);
        assert_eq!(ratio_bracket(0.0, 3.0, 2.0, 1.0, p).unwrap(), 0.0);
        assert!(matches!(
            ratio_bracket(1.0, 0.0, 2.0, 1.0, p),
            Err(Error::DivisionByZero(_))
        ));
    }

    #[test]
    fn symmetric_under_inversion_on_the_grid() {
        for t in -10..=10 {
            let x = t as f64 / 2.0;
            for p in [1.0, 2.0] {
                for q in [0.5, 0.9, 1.1, 2.0] {
                    let a = bracket(x, params(q, p));
                    let b = bracket(x, params(1.0 / q, p));
                    assert_relative_eq!(a, b, max_relative = 1e-12, epsilon = 1e-300);
                }
            }
        }
    }

    #[test]
    fn qparam_agrees_with_quotient() {
        for q in [0.7, 1.1, 1.5, 2.0] {
            let qp = QParam::new(q).unwrap();
            for t in -12..=12 {
                let x = Half::from_twice(t);
                for p in [1u32, 2] {
                    let quotient = (q.powf(p as f64 * x.to_f64()) - q.powf(-(p as f64) * x.to_f64()))
                        / (q.powi(p as i32) - q.powi(-(p as i32)));
                    assert_relative_eq!(qp.bracket_p(x, p), quotient, max_relative = 1e-13, epsilon = 1e-15);
                }
            }
        }
    }

    #[test]
    fn ratio_is_continuous_at_zero() {
        let qp = QParam::new(1.3f64).unwrap();
        // limit of [x]₂/[x] as x → 0 is 2/[2]
        assert_relative_eq!(qp.ratio_double_over_single(Half::ZERO), 2.0 / qp.two(), max_relative = 1e-15);
        for t in [1, 3, 5, -7] {
            let x = Half::from_twice(t);
            let direct = qp.bracket_p(x, 2) / qp.bracket(x);
            assert_relative_eq!(qp.ratio_double_over_single(x), direct, max_relative = 1e-13);
        }
    }

    #[test]
    fn high_precision_bracket_matches_double() {
        let qh = QParam::new(HighPrecision::parse_decimal("1.5").unwrap()).unwrap();
        let qd = QParam::new(1.5f64).unwrap();
        let x = Half::from_twice(9);
        assert_relative_eq!(qh.bracket_p(x, 2).to_f64(), qd.bracket_p(x, 2), max_relative = 1e-14);
    }

    proptest! {
        #[test]
        fn antisymmetric_in_x(x in -20.0f64..20.0, q in 0.2f64..5.0, p in 0.5f64..3.0) {
            let pr = params(q, p);
            let a = bracket(x, pr);
            let b = bracket(-x, pr);
            prop_assert!((a + b).abs() <= 1e-12 * a.abs().max(1.0));
        }

        #[test]
        fn inversion_symmetry(x in -10.0f64..10.0, q in 0.2f64..5.0, p in 0.5f64..3.0) {
            let a = bracket(x, params(q, p));
            let b = bracket(x, params(1.0 / q, p));
            prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
        }
    }
}
