//! Scalar studies of the Casimir eigenvalue: its expansion about `q = 1`,
//! splitting of classically degenerate irreps, and the `n₁ → ∞` contraction.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::basis::IrrepLabel;
use crate::error::{Error, Result};
use crate::half::Half;
use crate::qnum::{bracket_series, DeltaSeries, QParam};
use crate::verify::casimir_eigenvalue_formula;

/// Coefficients of the eigenvalue in `δ = ln q`:
/// `A = A₂ + δ²A₄ + δ⁴A₆ + …` (odd powers vanish).
#[derive(Clone, Debug, PartialEq)]
pub struct CasimirExpansion {
    pub irrep: IrrepLabel,
    pub a2: BigRational,
    pub a4: BigRational,
    /// δ⁴, δ⁶, … coefficients up to the requested order.
    pub higher: Vec<BigRational>,
    /// The part of `A₄` carried by the δ² coefficient of
    /// `[2n₁+3]₂/[2n₁+3]`: `A₄ − A₄(n₁,0) − δ²-coefficient of [n₂][n₂+1]/[2]`.
    pub ratio_contribution: BigRational,
}

fn rational(h: Half) -> BigRational {
    h.to_rational()
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn br(x: BigRational, order: usize) -> Result<DeltaSeries> {
    bracket_series(&x, &int(1), order)
}

/// Exact series of `[2]⁻¹{[n₁][n₁+3] + [n₂][n₂+1]·[2n₁+3]₂/[2n₁+3]}` to δ^order.
pub fn casimir_eigenvalue_series(irrep: IrrepLabel, order: usize) -> Result<DeltaSeries> {
    eigenvalue_series(rational(irrep.n1()), rational(irrep.n2()), order)
}

fn eigenvalue_series(n1: BigRational, n2: BigRational, order: usize) -> Result<DeltaSeries> {
    let two = br(int(2), order)?;
    let minimal = &br(n1.clone(), order)? * &br(&n1 + int(3), order)?;
    let y = &n1 * int(2) + int(3);
    let ratio = bracket_series(&y, &int(2), order)?.checked_div(&br(y, order)?)?;
    let spin = &br(n2.clone(), order)? * &br(&n2 + int(1), order)?;
    (&minimal + &(&spin * &ratio)).checked_div(&two)
}

/// `order` must be even and at least 2.
pub fn casimir_delta_expansion(irrep: IrrepLabel, order: usize) -> Result<CasimirExpansion> {
    if order < 2 || !order.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("expansion order must be even and ≥ 2, got {order}")));
    }
    let full = casimir_eigenvalue_series(irrep, order)?;
    if !full.is_even() {
        return Err(Error::Series(format!("odd powers of δ survive for {irrep}")));
    }
    let base = eigenvalue_series(rational(irrep.n1()), BigRational::zero(), order)?;
    let n2 = rational(irrep.n2());
    let spin_only = (&br(n2.clone(), order)? * &br(&n2 + int(1), order)?).checked_div(&br(int(2), order)?)?;
    let ratio_contribution = full.coeff(2) - base.coeff(2) - spin_only.coeff(2);
    Ok(CasimirExpansion {
        irrep,
        a2: full.coeff(0),
        a4: full.coeff(2),
        higher: (4..=order).step_by(2).map(|k| full.coeff(k)).collect(),
        ratio_contribution,
    })
}

/// `(n₁(n₁+3) + n₂(n₂+1))/2`.
pub fn classical_casimir(irrep: IrrepLabel) -> BigRational {
    let (n1, n2) = (rational(irrep.n1()), rational(irrep.n2()));
    (&n1 * (&n1 + int(3)) + &n2 * (&n2 + int(1))) / int(2)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeparationResult {
    pub first: IrrepLabel,
    pub second: IrrepLabel,
    pub classical_value: String,
    pub first_value: f64,
    pub second_value: f64,
    pub difference: f64,
    pub separated: bool,
}

/// For classically degenerate pairs, reports whether the eigenvalues at `q`
/// differ by more than `tolerance`. Pairs with unequal classical values are
/// rejected; identical labels are never separated.
pub fn separation_check(
    pairs: &[(IrrepLabel, IrrepLabel)],
    q: f64,
    tolerance: f64,
) -> Result<Vec<SeparationResult>> {
    if q == 1.0 {
        return Err(Error::InvalidParameter("separation needs q ≠ 1".into()));
    }
    let qp = QParam::new(q)?;
    pairs
        .iter()
        .map(|&(first, second)| {
            let (a, b) = (classical_casimir(first), classical_casimir(second));
            if a != b {
                return Err(Error::InvalidParameter(format!(
                    "{first} and {second} are not classically degenerate ({a} vs {b})"
                )));
            }
            let first_value: f64 = casimir_eigenvalue_formula(first, &qp);
            let second_value: f64 = casimir_eigenvalue_formula(second, &qp);
            let difference = (first_value - second_value).abs();
            Ok(SeparationResult {
                first,
                second,
                classical_value: a.to_string(),
                first_value,
                second_value,
                difference,
                separated: first != second && difference > tolerance,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContractionPoint {
    pub n1: Half,
    pub scaled_eigenvalue: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContractionResult {
    pub lambda: f64,
    pub q: f64,
    pub n2: Half,
    pub sequence: Vec<ContractionPoint>,
    pub limit_formula_value: f64,
    /// `|last − limit| / |limit|`.
    pub final_relative_error: f64,
    /// Relative error ≤ 10⁻⁸, or the last two terms differ by < 10⁻¹⁰.
    pub converged: bool,
}

/// `λ²{1 + ((q−q⁻¹)²/(q+q⁻¹))[n₂][n₂+1]}`.
pub fn contraction_limit_value(n2: Half, q: f64, lambda: f64) -> Result<f64> {
    let qp = QParam::new(q)?;
    let d = q - 1.0 / q;
    Ok(lambda * lambda * (1.0 + d * d / (q + 1.0 / q) * qp.bracket(n2) * qp.bracket(n2 + Half::ONE)))
}

/// Scales each eigenvalue by `λ²[2](q−q⁻¹)² / q^{2n₁+3}` and compares the
/// sequence with [`contraction_limit_value`].
pub fn contraction_limit(n2: Half, q: f64, lambda: f64, n1_list: &[Half]) -> Result<ContractionResult> {
    if !(q > 1.0 && q.is_finite()) {
        return Err(Error::InvalidParameter(format!("contraction needs q > 1, got {q}")));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidParameter(format!("λ must be positive, got {lambda}")));
    }
    if n1_list.is_empty() {
        return Err(Error::InvalidParameter("empty n1 list".into()));
    }
    if n1_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidParameter("n1 values must be strictly ascending".into()));
    }
    let qp = QParam::new(q)?;
    let d = q - 1.0 / q;
    let sequence = n1_list
        .iter()
        .map(|&n1| {
            let irrep = IrrepLabel::new(n1, n2)?;
            let e: f64 = casimir_eigenvalue_formula(irrep, &qp);
            let norm = qp.pow(n1.double() + Half::int(3)) / (lambda * lambda * qp.two() * d * d);
            Ok(ContractionPoint { n1, scaled_eigenvalue: e / norm })
        })
        .collect::<Result<Vec<_>>>()?;
    let limit = contraction_limit_value(n2, q, lambda)?;
    let last = sequence.last().map(|p| p.scaled_eigenvalue).unwrap_or(f64::NAN);
    let final_relative_error = (last - limit).abs() / limit.abs();
    let step = match sequence.len() {
        0 | 1 => f64::INFINITY,
        n => (sequence[n - 1].scaled_eigenvalue - sequence[n - 2].scaled_eigenvalue).abs(),
    };
    Ok(ContractionResult {
        lambda,
        q,
        n2,
        sequence,
        limit_formula_value: limit,
        final_relative_error,
        converged: final_relative_error <= 1e-8 || step < 1e-10,
    })
}

/// `n₂, n₂+1, …, n₂+count−1`.
pub fn n1_ladder(n2: Half, count: usize) -> Vec<Half> {
    (0..count as i32).map(|k| n2 + Half::int(k)).collect()
}

impl CasimirExpansion {
    /// Whether all listed coefficients vanish.
    pub fn is_trivial(&self) -> bool {
        self.a2.is_zero() && self.a4.is_zero() && self.higher.iter().all(Zero::is_zero)
    }
}
