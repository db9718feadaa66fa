//! Relation residuals, the quadratic Casimir operator and its spectrum.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::basis::{BasisKind, IrrepLabel};
use crate::error::{Error, Result};
use crate::half::Half;
use crate::qnum::QParam;
use crate::repbuild::Representation;
use crate::scalar::Scalar;
use crate::sparse::GeneratorMatrix;

/// One checked identity. Cartan exchange lines take the larger residual of
/// the `±` pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationId {
    /// `q^{±h₁} e₁ = q^{±1} e₁ q^{±h₁}`
    CartanH1E1,
    /// `q^{±h₁} f₁ = q^{∓1} f₁ q^{±h₁}`
    CartanH1F1,
    /// `q^{±2h₂} e₁ = q^{∓1} e₁ q^{±2h₂}`
    CartanH2E1,
    /// `q^{±2h₂} f₁ = q^{±1} f₁ q^{±2h₂}`
    CartanH2F1,
    /// `q^{±h₁} e₂ = q^{∓1} e₂ q^{±h₁}`
    CartanH1E2,
    /// `q^{±h₁} f₂ = q^{±1} f₂ q^{±h₁}`
    CartanH1F2,
    /// `q^{±h₂} e₂ = q^{±1} e₂ q^{±h₂}`
    CartanH2E2,
    /// `q^{±h₂} f₂ = q^{∓1} f₂ q^{±h₂}`
    CartanH2F2,
    /// `[e₁, f₂] = 0`
    CommE1F2,
    /// `[e₂, f₁] = 0`
    CommE2F1,
    /// `[e₁, f₁] = [2h₁]`
    CommE1F1,
    /// `[e₂, f₂] = [2h₂]₂`
    CommE2F2,
    /// `e₂e₃⁺ = q⁻²e₃⁺e₂`
    E2E3Plus,
    /// `e₂e₃⁻ = q²e₃⁻e₂`
    E2E3Minus,
    /// `f₃⁺f₂ = q⁻²f₂f₃⁺`
    F3PlusF2,
    /// `f₃⁻f₂ = q²f₂f₃⁻`
    F3MinusF2,
    /// `[e₁, e₄] = 0`
    CommE1E4,
    /// `[f₁, f₄] = 0`
    CommF1F4,
    /// Both expressions for `e₄` agree.
    E4Consistency,
    /// Both expressions for `f₄` agree.
    F4Consistency,
    /// `f₁ = e₁ᵀ`
    TransposeE1F1,
    /// `f₂ = e₂ᵀ`
    TransposeE2F2,
}

impl RelationId {
    pub const ALL: [RelationId; 22] = [
        RelationId::CartanH1E1,
        RelationId::CartanH1F1,
        RelationId::CartanH2E1,
        RelationId::CartanH2F1,
        RelationId::CartanH1E2,
        RelationId::CartanH1F2,
        RelationId::CartanH2E2,
        RelationId::CartanH2F2,
        RelationId::CommE1F2,
        RelationId::CommE2F1,
        RelationId::CommE1F1,
        RelationId::CommE2F2,
        RelationId::E2E3Plus,
        RelationId::E2E3Minus,
        RelationId::F3PlusF2,
        RelationId::F3MinusF2,
        RelationId::CommE1E4,
        RelationId::CommF1F4,
        RelationId::E4Consistency,
        RelationId::F4Consistency,
        RelationId::TransposeE1F1,
        RelationId::TransposeE2F2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationId::CartanH1E1 => "cartan_h1_e1",
            RelationId::CartanH1F1 => "cartan_h1_f1",
            RelationId::CartanH2E1 => "cartan_h2_e1",
            RelationId::CartanH2F1 => "cartan_h2_f1",
            RelationId::CartanH1E2 => "cartan_h1_e2",
            RelationId::CartanH1F2 => "cartan_h1_f2",
            RelationId::CartanH2E2 => "cartan_h2_e2",
            RelationId::CartanH2F2 => "cartan_h2_f2",
            RelationId::CommE1F2 => "comm_e1_f2",
            RelationId::CommE2F1 => "comm_e2_f1",
            RelationId::CommE1F1 => "comm_e1_f1",
            RelationId::CommE2F2 => "comm_e2_f2",
            RelationId::E2E3Plus => "e2_e3_plus",
            RelationId::E2E3Minus => "e2_e3_minus",
            RelationId::F3PlusF2 => "f3_plus_f2",
            RelationId::F3MinusF2 => "f3_minus_f2",
            RelationId::CommE1E4 => "comm_e1_e4",
            RelationId::CommF1F4 => "comm_f1_f4",
            RelationId::E4Consistency => "e4_consistency",
            RelationId::F4Consistency => "f4_consistency",
            RelationId::TransposeE1F1 => "transpose_e1_f1",
            RelationId::TransposeE2F2 => "transpose_e2_f2",
        }
    }

    /// True for the two checks that compare lowering operators with
    /// transposed raising operators rather than testing algebra relations.
    pub fn is_transpose_check(self) -> bool {
        matches!(self, RelationId::TransposeE1F1 | RelationId::TransposeE2F2)
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelationResidual {
    pub relation: RelationId,
    pub max_abs_residual: f64,
    pub matrix_dim: usize,
}

/// Largest `|v·(q^{s·c·(w_r − w_c)} − q^{s·shift})|` over entries and `s = ±1`,
/// which is the residual of `q^{s·c·h} X q^{−s·c·h} − q^{s·shift} X`.
fn cartan_residual<S: Scalar>(
    x: &GeneratorMatrix<S>,
    weight: &[Half],
    q: &QParam<S>,
    shift: i32,
) -> S {
    let mut worst = S::zero();
    for (r, c, v) in x.entries() {
        let d = weight[r] - weight[c];
        for s in [1, -1] {
            let lhs = q.pow(if s > 0 { d } else { -d });
            let rhs = q.powi(s * shift);
            worst = S::max_of(worst, (v.clone() * (lhs - rhs)).abs());
        }
    }
    worst
}

/// Computes every residual in [`RelationId::ALL`] order.
pub fn check_relations<S: Scalar>(rep: &Representation<S>) -> Result<Vec<RelationResidual>> {
    let q = rep.q();
    let (e1, e2, f1, f2) = (rep.e1(), rep.e2(), rep.f1(), rep.f2());
    let d = rep.derived();
    let dim = rep.dim();
    for m in [e1, e2, f1, f2, &d.e3p, &d.e3m, &d.e4, &d.f3p, &d.f3m, &d.f4] {
        if m.dim() != dim {
            return Err(Error::DimensionMismatch(m.dim(), dim));
        }
    }
    let h1 = rep.cartan().h1();
    let h2 = rep.cartan().h2();
    let two_h2: Vec<Half> = h2.iter().map(|h| h.double()).collect();
    let one = S::one();
    let q2 = q.powi(2);
    let qm2 = q.powi(-2);

    let diag_e1f1: Vec<S> = h1.iter().map(|h| q.bracket(h.double())).collect();
    let diag_e2f2: Vec<S> = h2.iter().map(|h| q.bracket_p(h.double(), 2)).collect();

    let mut out = Vec::with_capacity(RelationId::ALL.len());
    for id in RelationId::ALL {
        let value = match id {
            RelationId::CartanH1E1 => cartan_residual(e1, &h1, q, 1),
            RelationId::CartanH1F1 => cartan_residual(f1, &h1, q, -1),
            RelationId::CartanH2E1 => cartan_residual(e1, &two_h2, q, -1),
            RelationId::CartanH2F1 => cartan_residual(f1, &two_h2, q, 1),
            RelationId::CartanH1E2 => cartan_residual(e2, &h1, q, -1),
            RelationId::CartanH1F2 => cartan_residual(f2, &h1, q, 1),
            RelationId::CartanH2E2 => cartan_residual(e2, &h2, q, 1),
            RelationId::CartanH2F2 => cartan_residual(f2, &h2, q, -1),
            RelationId::CommE1F2 => e1.commutator(f2)?.max_abs(),
            RelationId::CommE2F1 => e2.commutator(f1)?.max_abs(),
            RelationId::CommE1F1 => {
                let neg: Vec<S> = diag_e1f1.iter().map(|v| -v.clone()).collect();
                e1.commutator(f1)?.add_diagonal(&neg).max_abs()
            }
            RelationId::CommE2F2 => {
                let neg: Vec<S> = diag_e2f2.iter().map(|v| -v.clone()).collect();
                e2.commutator(f2)?.add_diagonal(&neg).max_abs()
            }
            RelationId::E2E3Plus => e2.q_commutator(&d.e3p, &one, &qm2)?.max_abs(),
            RelationId::E2E3Minus => e2.q_commutator(&d.e3m, &one, &q2)?.max_abs(),
            RelationId::F3PlusF2 => d.f3p.q_commutator(f2, &one, &qm2)?.max_abs(),
            RelationId::F3MinusF2 => d.f3m.q_commutator(f2, &one, &q2)?.max_abs(),
            RelationId::CommE1E4 => e1.commutator(&d.e4)?.max_abs(),
            RelationId::CommF1F4 => f1.commutator(&d.f4)?.max_abs(),
            RelationId::E4Consistency => d.e4_mismatch.clone(),
            RelationId::F4Consistency => d.f4_mismatch.clone(),
            RelationId::TransposeE1F1 => f1.max_abs_diff(&e1.transpose())?,
            RelationId::TransposeE2F2 => f2.max_abs_diff(&e2.transpose())?,
        };
        out.push(RelationResidual { relation: id, max_abs_residual: value.to_f64(), matrix_dim: dim });
    }
    Ok(out)
}

/// The quadratic Casimir
///
/// ```text
/// A = [2]⁻¹{(f₁e₁ + D_{[M][M+1]})·D_{[2K+3]₂/[2K+3]} + D_{[K][K+3]}}
///     + f₂e₂ + [2]⁻²f₄e₄ + [2]⁻²(f₃⁺e₃⁺·D_{q^{2M+1}} + f₃⁻e₃⁻·D_{q^{−2M−1}})
/// ```
///
/// with every diagonal factor on the side where it is written.
///
/// The ratio `[x]₂/[x]` is evaluated as `(q^x + q^{−x})/(q + q^{−1})`, which
/// stays finite at `2K+3 = 0`.
pub fn build_casimir<S: Scalar>(rep: &Representation<S>) -> Result<GeneratorMatrix<S>> {
    let q = rep.q();
    let d = rep.derived();
    let big_m = rep.cartan().big_m();
    let big_k = rep.cartan().big_k();
    let one = Half::ONE;
    let three = Half::int(3);

    let mm: Vec<S> = big_m.iter().map(|&m| q.bracket(m) * q.bracket(m + one)).collect();
    let ratio: Vec<S> = big_k
        .iter()
        .map(|&k| q.ratio_double_over_single(k.double() + three))
        .collect();
    let kk: Vec<S> = big_k.iter().map(|&k| q.bracket(k) * q.bracket(k + three)).collect();
    let up: Vec<S> = big_m.iter().map(|&m| q.pow(m.double() + one)).collect();
    let down: Vec<S> = big_m.iter().map(|&m| q.pow(-(m.double() + one))).collect();

    let inv2 = S::one() / q.two();
    let inv22 = inv2.clone() * inv2.clone();

    let first = rep
        .f1()
        .matmul(rep.e1())?
        .add_diagonal(&mm)
        .scale_cols(&ratio)
        .add_diagonal(&kk)
        .scale(&inv2);
    let second = rep.f2().matmul(rep.e2())?.add(&d.f4.matmul(&d.e4)?.scale(&inv22))?;
    let third = d
        .f3p
        .matmul(&d.e3p)?
        .scale_cols(&up)
        .add(&d.f3m.matmul(&d.e3m)?.scale_cols(&down))?
        .scale(&inv22);
    first.add(&second)?.add(&third)
}

/// `[2]⁻¹{[n₁][n₁+3] + [n₂][n₂+1]·[2n₁+3]₂/[2n₁+3]}`.
pub fn casimir_eigenvalue_formula<S: Scalar>(irrep: IrrepLabel, q: &QParam<S>) -> S {
    let (n1, n2) = (irrep.n1(), irrep.n2());
    let a = q.bracket(n1) * q.bracket(n1 + Half::int(3));
    let b = q.bracket(n2) * q.bracket(n2 + Half::ONE) * q.ratio_double_over_single(n1.double() + Half::int(3));
    (a + b) / q.two()
}

/// How far the Casimir matrix is from the predicted multiple of the identity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CasimirCheck {
    pub max_offdiag: f64,
    pub eigenvalue_spread: f64,
    pub formula_deviation: f64,
    /// Largest `|A_rc − A_cr|`.
    pub asymmetry: f64,
    /// The predicted eigenvalue.
    pub eigenvalue: f64,
}

impl CasimirCheck {
    pub fn worst(&self) -> f64 {
        [self.max_offdiag, self.eigenvalue_spread, self.formula_deviation, self.asymmetry]
            .into_iter()
            .fold(0.0, |a, b| if b.is_nan() || b > a { b } else { a })
    }
}

pub fn check_casimir<S: Scalar>(rep: &Representation<S>) -> Result<CasimirCheck> {
    let a = build_casimir(rep)?;
    let expected = casimir_eigenvalue_formula(rep.irrep(), rep.q());
    let diag = a.diagonal_values();
    let mut lo = diag.first().cloned().unwrap_or_else(S::zero);
    let mut hi = lo.clone();
    let mut dev = S::zero();
    for v in &diag {
        if *v < lo {
            lo = v.clone();
        }
        if *v > hi {
            hi = v.clone();
        }
        dev = S::max_of(dev, (v.clone() - expected.clone()).abs());
    }
    let asymmetry = a.max_abs_diff(&a.transpose())?;
    Ok(CasimirCheck {
        max_offdiag: a.max_abs_offdiag().to_f64(),
        eigenvalue_spread: (hi - lo).to_f64(),
        formula_deviation: dev.to_f64(),
        asymmetry: asymmetry.to_f64(),
        eigenvalue: expected.to_f64(),
    })
}

/// `max(1, q^{2n₁+3}, q^{−2n₁−3})`, the growth of the largest Casimir terms.
pub fn casimir_scale<S: Scalar>(irrep: IrrepLabel, q: &QParam<S>) -> f64 {
    let p = q.pow(irrep.n1().double() + Half::int(3)).to_f64();
    1f64.max(p).max(1.0 / p)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub irrep: IrrepLabel,
    pub basis_kind: BasisKind,
    pub q: String,
    pub precision: String,
    pub dim: usize,
    pub tolerance: f64,
    pub casimir_tolerance: f64,
    pub residuals: Vec<RelationResidual>,
    pub casimir_eigenvalue: f64,
    pub casimir_max_offdiag: f64,
    pub casimir_eigenvalue_spread: f64,
    pub casimir_vs_formula: f64,
    pub casimir_asymmetry: f64,
    pub passed: bool,
}

impl VerificationReport {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().map(|r| r.max_abs_residual).fold(0.0, f64::max)
    }

    pub fn residual(&self, id: RelationId) -> Option<f64> {
        self.residuals.iter().find(|r| r.relation == id).map(|r| r.max_abs_residual)
    }

    /// Largest algebraic residual or Casimir deviation, ignoring the two
    /// transpose comparisons.
    pub fn max_algebraic_deviation(&self) -> f64 {
        let rel = self
            .residuals
            .iter()
            .filter(|r| !r.relation.is_transpose_check())
            .map(|r| r.max_abs_residual);
        let cas = [
            self.casimir_max_offdiag,
            self.casimir_eigenvalue_spread,
            self.casimir_vs_formula,
            self.casimir_asymmetry,
        ];
        rel.chain(cas).fold(0.0, |a, b| if b.is_nan() || b > a { b } else { a })
    }

    /// Pretty JSON with object keys in sorted order.
    pub fn to_json(&self) -> Result<String> {
        let value = serde_json::to_value(self).map_err(|e| Error::Parse(e.to_string()))?;
        serde_json::to_string_pretty(&value).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Runs every relation and the Casimir check. `tolerance` defaults to the
/// scalar domain's value; the Casimir checks use it times [`casimir_scale`].
pub fn verify<S: Scalar>(rep: &Representation<S>, tolerance: Option<f64>) -> Result<VerificationReport> {
    let tolerance = tolerance.unwrap_or_else(S::default_tolerance);
    if !(tolerance >= 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be non-negative, got {tolerance}")));
    }
    let residuals = check_relations(rep)?;
    let cas = check_casimir(rep)?;
    let casimir_tolerance = tolerance * casimir_scale(rep.irrep(), rep.q());
    let relations_ok = residuals.iter().all(|r| r.max_abs_residual <= tolerance);
    let casimir_ok = cas.worst() <= casimir_tolerance;
    Ok(VerificationReport {
        irrep: rep.irrep(),
        basis_kind: rep.kind(),
        q: rep.q().q().to_exact_string(),
        precision: S::precision_tag(),
        dim: rep.dim(),
        tolerance,
        casimir_tolerance,
        residuals,
        casimir_eigenvalue: cas.eigenvalue,
        casimir_max_offdiag: cas.max_offdiag,
        casimir_eigenvalue_spread: cas.eigenvalue_spread,
        casimir_vs_formula: cas.formula_deviation,
        casimir_asymmetry: cas.asymmetry,
        passed: relations_ok && casimir_ok,
    })
}

/// Which raising operator to corrupt in [`perturb_raising_entry`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Raising {
    E1,
    E2,
}

/// Rebuilds `rep` with one nonzero entry of `e₁` or `e₂` scaled by
/// `1 + relative`; lowering and derived operators are re-derived from it.
pub fn perturb_raising_entry<S: Scalar>(
    rep: &Representation<S>,
    which: Raising,
    entry: usize,
    relative: f64,
) -> Result<Representation<S>> {
    let mut e1 = rep.e1().clone();
    let mut e2 = rep.e2().clone();
    let target = match which {
        Raising::E1 => &mut e1,
        Raising::E2 => &mut e2,
    };
    let (r, c, v) = target
        .entries()
        .nth(entry)
        .map(|(r, c, v)| (r, c, v.clone()))
        .ok_or_else(|| Error::InvalidParameter(format!("no entry #{entry} in {which:?}")))?;
    target.set(r, c, v.clone() + v * S::from_f64(relative));
    Representation::from_raising(rep.basis().clone(), rep.q().clone(), e1, e2)
}
