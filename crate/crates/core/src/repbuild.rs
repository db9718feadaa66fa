//! Explicit generator matrices for the cases with known solutions:
//!
//! * Basis I with `n₁ = n₂ = n`, any `q > 0`;
//! * Basis II at `q = 1` for every `(n₁, n₂)`;
//! * Basis II with `n₁ = n₂ = n`, any `q > 0`.
//!
//! Raising operators are assembled state by state. Each term's `m`-type
//! prefactor is evaluated first and the term is dropped when it is exactly
//! zero, before any coefficient with a singular denominator is touched.
//! Lowering operators are transposes of the raising ones, and every
//! non-zero entry must land on a basis state.

use serde::Serialize;

use crate::basis::{
    enumerate_basis1_merged, enumerate_basis2, BasisEnumeration, BasisKind, IrrepLabel, StateLabel,
};
use crate::error::{Error, Result};
use crate::half::Half;
use crate::qnum::QParam;
use crate::scalar::Scalar;
use crate::sparse::GeneratorMatrix;

/// Eigenvalues of `h₁, h₂` on one basis state. The other Cartan labels
/// follow from `M = h₁`, `K − M = 2h₂`, `M₂ = h₂`, `M₄ = h₁ + h₂`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CartanWeight {
    pub h1: Half,
    pub h2: Half,
}

impl CartanWeight {
    pub fn of_state(state: &StateLabel) -> Self {
        match *state {
            StateLabel::BasisI { m, k, .. } | StateLabel::BasisIMerged { m, k, .. } => {
                let diff = (k - m).twice();
                assert!(diff % 2 == 0, "k − m must be an integer");
                CartanWeight { h1: m, h2: Half::from_twice(diff / 2) }
            }
            StateLabel::BasisII { m2, m4, .. } => CartanWeight { h1: m4 - m2, h2: m2 },
        }
    }

    pub fn big_m(&self) -> Half {
        self.h1
    }

    pub fn big_k(&self) -> Half {
        self.h1 + self.h2.double()
    }

    pub fn m2(&self) -> Half {
        self.h2
    }

    pub fn m4(&self) -> Half {
        self.h1 + self.h2
    }
}

/// Per-state Cartan eigenvalues, in basis order.
#[derive(Clone, Debug, PartialEq)]
pub struct CartanDiagonals {
    weights: Vec<CartanWeight>,
}

impl CartanDiagonals {
    pub fn of_basis(basis: &BasisEnumeration) -> Self {
        CartanDiagonals { weights: basis.states().iter().map(CartanWeight::of_state).collect() }
    }

    pub fn weights(&self) -> &[CartanWeight] {
        &self.weights
    }

    pub fn h1(&self) -> Vec<Half> {
        self.weights.iter().map(|w| w.h1).collect()
    }

    pub fn h2(&self) -> Vec<Half> {
        self.weights.iter().map(|w| w.h2).collect()
    }

    pub fn big_m(&self) -> Vec<Half> {
        self.weights.iter().map(CartanWeight::big_m).collect()
    }

    pub fn big_k(&self) -> Vec<Half> {
        self.weights.iter().map(CartanWeight::big_k).collect()
    }

    pub fn m2(&self) -> Vec<Half> {
        self.weights.iter().map(CartanWeight::m2).collect()
    }

    pub fn m4(&self) -> Vec<Half> {
        self.weights.iter().map(CartanWeight::m4).collect()
    }
}

/// Non-simple-root generators built from q-commutators of the simple ones.
#[derive(Clone, Debug)]
pub struct DerivedGenerators<S> {
    pub e3p: GeneratorMatrix<S>,
    pub e3m: GeneratorMatrix<S>,
    pub e4: GeneratorMatrix<S>,
    pub f3p: GeneratorMatrix<S>,
    pub f3m: GeneratorMatrix<S>,
    pub f4: GeneratorMatrix<S>,
    /// Max entrywise gap between `q⁻¹e₁e₃⁺ − q e₃⁺e₁` and `q e₁e₃⁻ − q⁻¹e₃⁻e₁`.
    pub e4_mismatch: S,
    /// Same for `f₄`.
    pub f4_mismatch: S,
}

impl<S: Scalar> DerivedGenerators<S> {
    pub fn check_consistency(&self, tolerance: f64) -> Result<()> {
        for (generator, gap) in [("e4", &self.e4_mismatch), ("f4", &self.f4_mismatch)] {
            let residual = gap.to_f64();
            if !(residual <= tolerance) {
                return Err(Error::Consistency { generator, residual, tolerance });
            }
        }
        Ok(())
    }
}

/// `e₃^(±) = q^{±1}e₁e₂ − q^{∓1}e₂e₁`, `f₃^(±) = q^{±1}f₂f₁ − q^{∓1}f₁f₂`,
/// `e₄ = q⁻¹e₁e₃⁺ − q e₃⁺e₁`, `f₄ = q⁻¹f₃⁺f₁ − q f₁f₃⁺`. The alternative
/// `e₄, f₄` expressions through `e₃⁻, f₃⁻` are only compared.
pub fn build_derived<S: Scalar>(
    e1: &GeneratorMatrix<S>,
    e2: &GeneratorMatrix<S>,
    f1: &GeneratorMatrix<S>,
    f2: &GeneratorMatrix<S>,
    q: &QParam<S>,
) -> Result<DerivedGenerators<S>> {
    let qp = q.q().clone();
    let qm = S::one() / qp.clone();
    let e3p = e1.q_commutator(e2, &qp, &qm)?;
    let e3m = e1.q_commutator(e2, &qm, &qp)?;
    let f3p = f2.q_commutator(f1, &qp, &qm)?;
    let f3m = f2.q_commutator(f1, &qm, &qp)?;
    let e4 = e1.q_commutator(&e3p, &qm, &qp)?;
    let e4_alt = e1.q_commutator(&e3m, &qp, &qm)?;
    let f4 = f3p.q_commutator(f1, &qm, &qp)?;
    let f4_alt = f3m.q_commutator(f1, &qp, &qm)?;
    let e4_mismatch = e4.max_abs_diff(&e4_alt)?;
    let f4_mismatch = f4.max_abs_diff(&f4_alt)?;
    Ok(DerivedGenerators { e3p, e3m, e4, f3p, f3m, f4, e4_mismatch, f4_mismatch })
}

/// A fully assembled representation. Immutable once built.
#[derive(Clone, Debug)]
pub struct Representation<S> {
    basis: BasisEnumeration,
    q: QParam<S>,
    e1: GeneratorMatrix<S>,
    e2: GeneratorMatrix<S>,
    f1: GeneratorMatrix<S>,
    f2: GeneratorMatrix<S>,
    cartan: CartanDiagonals,
    derived: DerivedGenerators<S>,
}

impl<S: Scalar> Representation<S> {
    /// Assembles a representation from given simple-root matrices; the
    /// derived generators are recomputed.
    pub fn from_generators(
        basis: BasisEnumeration,
        q: QParam<S>,
        e1: GeneratorMatrix<S>,
        e2: GeneratorMatrix<S>,
        f1: GeneratorMatrix<S>,
        f2: GeneratorMatrix<S>,
    ) -> Result<Self> {
        for m in [&e1, &e2, &f1, &f2] {
            if m.dim() != basis.len() {
                return Err(Error::DimensionMismatch(m.dim(), basis.len()));
            }
        }
        let derived = build_derived(&e1, &e2, &f1, &f2, &q)?;
        let cartan = CartanDiagonals::of_basis(&basis);
        Ok(Representation { basis, q, e1, e2, f1, f2, cartan, derived })
    }

    /// Lowering operators are taken as transposes of `e1`, `e2`.
    pub fn from_raising(
        basis: BasisEnumeration,
        q: QParam<S>,
        e1: GeneratorMatrix<S>,
        e2: GeneratorMatrix<S>,
    ) -> Result<Self> {
        let f1 = e1.transpose();
        let f2 = e2.transpose();
        Self::from_generators(basis, q, e1, e2, f1, f2)
    }

    pub fn irrep(&self) -> IrrepLabel {
        self.basis.irrep()
    }

    pub fn basis(&self) -> &BasisEnumeration {
        &self.basis
    }

    pub fn kind(&self) -> BasisKind {
        self.basis.kind()
    }

    pub fn q(&self) -> &QParam<S> {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn e1(&self) -> &GeneratorMatrix<S> {
        &self.e1
    }

    pub fn e2(&self) -> &GeneratorMatrix<S> {
        &self.e2
    }

    pub fn f1(&self) -> &GeneratorMatrix<S> {
        &self.f1
    }

    pub fn f2(&self) -> &GeneratorMatrix<S> {
        &self.f2
    }

    pub fn cartan(&self) -> &CartanDiagonals {
        &self.cartan
    }

    pub fn derived(&self) -> &DerivedGenerators<S> {
        &self.derived
    }

    /// Every stored matrix under its conventional name.
    pub fn named_generators(&self) -> Vec<(&'static str, &GeneratorMatrix<S>)> {
        let d = &self.derived;
        vec![
            ("e1", &self.e1),
            ("e2", &self.e2),
            ("f1", &self.f1),
            ("f2", &self.f2),
            ("e3p", &d.e3p),
            ("e3m", &d.e3m),
            ("e4", &d.e4),
            ("f3p", &d.f3p),
            ("f3m", &d.f3m),
            ("f4", &d.f4),
        ]
    }
}

/// Diagonal eigenvalue lists for `M, K, M₂, M₄, h₁, h₂`.
pub fn cartan_diagonals<S: Scalar>(rep: &Representation<S>) -> &CartanDiagonals {
    rep.cartan()
}

fn root<S: Scalar>(radicand: S, context: impl FnOnce() -> String) -> Result<S> {
    if radicand < S::zero() {
        return Err(Error::NegativeRadicand { context: context(), value: radicand.to_f64() });
    }
    Ok(radicand.sqrt())
}

fn divide<S: Scalar>(num: S, den: S, context: impl FnOnce() -> String) -> Result<S> {
    if den.is_zero() {
        return Err(Error::DivisionByZero(context()));
    }
    Ok(num / den)
}

/// Collects entries of one raising operator and enforces closure.
struct Assembler<'a, S> {
    basis: &'a BasisEnumeration,
    generator: &'static str,
    triplets: Vec<(usize, usize, S)>,
}

impl<'a, S: Scalar> Assembler<'a, S> {
    fn new(basis: &'a BasisEnumeration, generator: &'static str) -> Self {
        Assembler { basis, generator, triplets: Vec::new() }
    }

    fn push(&mut self, from: usize, to: StateLabel, value: S) -> Result<()> {
        if value.is_zero() {
            return Ok(());
        }
        let row = self.basis.index_of(&to).ok_or_else(|| Error::ClosureViolation {
            generator: self.generator,
            from: self.basis.state(from).to_string(),
            to: to.to_string(),
        })?;
        self.triplets.push((row, from, value));
        Ok(())
    }

    fn finish(self) -> Result<GeneratorMatrix<S>> {
        GeneratorMatrix::from_triplets(self.basis.len(), self.triplets)
    }
}

fn check_q<S: Scalar>(q: &QParam<S>) -> Result<()> {
    if !(q.q().clone() > S::zero()) {
        return Err(Error::InvalidParameter("q must be positive".into()));
    }
    Ok(())
}

/// Basis I coefficients for `n₁ = n₂ = n`.
struct BasisIEqual<'a, S> {
    n: Half,
    q: &'a QParam<S>,
}

impl<S: Scalar> BasisIEqual<'_, S> {
    fn br(&self, x: Half) -> S {
        self.q.bracket(x)
    }

    fn br2(&self, x: Half) -> S {
        self.q.bracket_p(x, 2)
    }

    /// `a(j,k) = [2]⁻¹ ([n−j]₂[n+j+2]₂[j+k+1][j+k+2] / ([2j+3][2j+1][j+1]₂²))^{1/2}`
    fn a(&self, j: Half, k: Half) -> Result<S> {
        let one = Half::ONE;
        let n = self.n;
        let num = self.br2(n - j) * self.br2(n + j + Half::int(2)) * self.br(j + k + one) * self.br(j + k + Half::int(2));
        let jp1 = self.br2(j + one);
        let den = self.br(j.double() + Half::int(3)) * self.br(j.double() + one) * jp1.clone() * jp1;
        let ctx = || format!("a({j}, {k})");
        let r = root(divide(num, den, ctx)?, ctx)?;
        Ok(r / self.q.two())
    }

    /// `b(j,k) = a(j−1, −k−1)`.
    fn b(&self, j: Half, k: Half) -> Result<S> {
        self.a(j - Half::ONE, -k - Half::ONE)
    }

    /// `c(j,k) = [2]⁻¹ [n+1]₂ ([j−k][j+k+1])^{1/2} / ([j+1]₂[j]₂)`
    fn c(&self, j: Half, k: Half) -> Result<S> {
        let one = Half::ONE;
        let ctx = || format!("c({j}, {k})");
        let r = root(self.br(j - k) * self.br(j + k + one), ctx)?;
        let num = self.br2(self.n + one) * r;
        let den = self.br2(j + one) * self.br2(j) * self.q.two();
        divide(num, den, ctx)
    }
}

/// Basis I representation for `n₁ = n₂ = n` on the merged `(j, m, k)` labels.
pub fn build_basis1_equal<S: Scalar>(n: Half, q: &QParam<S>) -> Result<Representation<S>> {
    check_q(q)?;
    let basis = enumerate_basis1_merged(n)?;
    let coeffs = BasisIEqual { n, q };
    let br = |x: Half| q.bracket(x);
    let one = Half::ONE;
    let two = Half::int(2);

    let mut e1 = Assembler::new(&basis, "e1");
    let mut e2 = Assembler::new(&basis, "e2");
    for (idx, state) in basis.states().iter().enumerate() {
        let StateLabel::BasisIMerged { j, m, k } = *state else {
            unreachable!("merged enumeration yields merged labels")
        };

        let pf = br(j - m) * br(j + m + one);
        if !pf.is_zero() {
            let v = root(pf, || format!("e1 prefactor at {state}"))?;
            e1.push(idx, StateLabel::BasisIMerged { j, m: m + one, k }, v)?;
        }

        let up = br(j - m + one) * br(j - m + two);
        if !up.is_zero() {
            let v = root(up, || format!("e2 a-prefactor at {state}"))? * coeffs.a(j, k)?;
            e2.push(idx, StateLabel::BasisIMerged { j: j + one, m: m - one, k: k + one }, v)?;
        }
        let down = br(j + m) * br(j + m - one);
        if !down.is_zero() {
            let v = root(down, || format!("e2 b-prefactor at {state}"))? * coeffs.b(j, k)?;
            e2.push(idx, StateLabel::BasisIMerged { j: j - one, m: m - one, k: k + one }, v)?;
        }
        let same = br(j + m) * br(j - m + one);
        if !same.is_zero() {
            let v = root(same, || format!("e2 c-prefactor at {state}"))? * coeffs.c(j, k)?;
            e2.push(idx, StateLabel::BasisIMerged { j, m: m - one, k: k + one }, v)?;
        }
    }
    let e1 = e1.finish()?;
    let e2 = e2.finish()?;
    Representation::from_raising(basis, q.clone(), e1, e2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn value(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `ε·x` for a half-integer.
    fn times(self, x: Half) -> Half {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }

    /// `(1 + ε)/2`.
    fn step(self) -> Half {
        match self {
            Sign::Plus => Half::ONE,
            Sign::Minus => Half::ZERO,
        }
    }

    /// `ε/2`.
    fn half(self) -> Half {
        self.times(Half::HALF)
    }
}

/// The `m₄`-independent Basis II factors `c_{(ε,ε′)}(j₂, j₄)` for one irrep.
#[derive(Clone, Copy, Debug)]
pub struct CoefficientTableII {
    n1: Half,
    n2: Half,
}

impl CoefficientTableII {
    pub fn new(irrep: IrrepLabel) -> Self {
        CoefficientTableII { n1: irrep.n1(), n2: irrep.n2() }
    }

    /// Classical value. `(+,+)` and `(+,−)` are given in closed form; the
    /// other two follow from `c_{(ε,ε′)}(j₂,j₄) = εε′ c_{(−ε,−ε′)}(j₂+ε/2, j₄+ε′/2)`.
    pub fn classical<S: Scalar>(&self, eps: Sign, eps_p: Sign, j2: Half, j4: Half) -> Result<S> {
        match (eps, eps_p) {
            (Sign::Plus, Sign::Plus) => self.plus_plus(j2, j4),
            (Sign::Plus, Sign::Minus) => self.plus_minus(j2, j4),
            (Sign::Minus, Sign::Minus) => self.plus_plus(j2 - Half::HALF, j4 - Half::HALF),
            (Sign::Minus, Sign::Plus) => Ok(-self.plus_minus::<S>(j2 - Half::HALF, j4 + Half::HALF)?),
        }
    }

    fn plus_plus<S: Scalar>(&self, j2: Half, j4: Half) -> Result<S> {
        let (n1, n2, s) = (self.n1, self.n2, j2 + j4);
        let num = [n1 + s + Half::int(3), n1 - s, s + n2 + Half::int(2), s - n2 + Half::ONE];
        let den = [
            j2.double() + Half::ONE,
            j2.double() + Half::int(2),
            j4.double() + Half::ONE,
            j4.double() + Half::int(2),
        ];
        ratio_root(num, den, || format!("c(+,+)({j2}, {j4})"))
    }

    fn plus_minus<S: Scalar>(&self, j2: Half, j4: Half) -> Result<S> {
        let (n1, n2, d) = (self.n1, self.n2, j2 - j4);
        let num = [n1 + d + Half::int(2), n1 - d + Half::ONE, d + n2 + Half::ONE, n2 - d];
        let den = [j2.double() + Half::ONE, j2.double() + Half::int(2), j4.double(), j4.double() + Half::ONE];
        ratio_root(num, den, || format!("c(+,-)({j2}, {j4})"))
    }

    /// q-deformed `c_{(ε,−ε)}(j₂)` for `n₁ = n₂`:
    /// `c_{(+−)}(j₂) = −c_{(−+)}(j₂+½) = ([2j₂+1][2j₂+2] / ([2j₂+1]₂[2j₂+2]₂))^{1/2}`.
    pub fn deformed<S: Scalar>(q: &QParam<S>, eps: Sign, j2: Half) -> Result<S> {
        let base = match eps {
            Sign::Plus => j2,
            Sign::Minus => j2 - Half::HALF,
        };
        let a = base.double() + Half::ONE;
        let b = base.double() + Half::int(2);
        let ctx = || format!("c({:?})({j2})", eps);
        let num = q.bracket(a) * q.bracket(b);
        let den = q.bracket_p(a, 2) * q.bracket_p(b, 2);
        let v = root(divide(num, den, ctx)?, ctx)?;
        Ok(match eps {
            Sign::Plus => v,
            Sign::Minus => -v,
        })
    }
}

/// `(Π num / Π den)^{1/2}` for half-integer factors, formed exactly.
fn ratio_root<S: Scalar>(num: [Half; 4], den: [Half; 4], context: impl Fn() -> String) -> Result<S> {
    let p = |f: [Half; 4]| f.iter().map(|h| h.twice() as i64).product::<i64>();
    let (n, d) = (p(num), p(den));
    if d == 0 {
        return Err(Error::DivisionByZero(context()));
    }
    if n == 0 {
        return Ok(S::zero());
    }
    root(S::from_ratio(n, d), context)
}

/// Basis II at `q = 1` for general `(n₁, n₂)`.
pub fn build_basis2_classical<S: Scalar>(irrep: IrrepLabel) -> Result<Representation<S>> {
    let basis = enumerate_basis2(irrep);
    let table = CoefficientTableII::new(irrep);
    let num = |h: Half| S::from_ratio(h.twice() as i64, 2);

    let mut e1 = Assembler::new(&basis, "e1");
    let mut e2 = Assembler::new(&basis, "e2");
    for (idx, state) in basis.states().iter().enumerate() {
        let StateLabel::BasisII { j2, m2, j4, m4 } = *state else {
            unreachable!("Basis II enumeration yields Basis II labels")
        };

        let pf = num(j2 - m2) * num(j2 + m2 + Half::ONE);
        if !pf.is_zero() {
            let v = root(pf, || format!("e2 prefactor at {state}"))?;
            e2.push(idx, StateLabel::BasisII { j2, m2: m2 + Half::ONE, j4, m4 }, v)?;
        }

        for eps in Sign::BOTH {
            let mp = num(j2 - eps.times(m2) + eps.step());
            if mp.is_zero() {
                continue;
            }
            for eps_p in Sign::BOTH {
                let m4f = num(j4 + eps_p.times(m4) + eps_p.step());
                if m4f.is_zero() {
                    continue;
                }
                let c: S = table.classical(eps, eps_p, j2, j4)?;
                let v = root(mp.clone() * m4f, || format!("e1 prefactor at {state}"))? * c;
                let target = StateLabel::BasisII {
                    j2: j2 + eps.half(),
                    m2: m2 - Half::HALF,
                    j4: j4 + eps_p.half(),
                    m4: m4 + Half::HALF,
                };
                e1.push(idx, target, v)?;
            }
        }
    }
    let e1 = e1.finish()?;
    let e2 = e2.finish()?;
    Representation::from_raising(basis, QParam::classical(), e1, e2)
}

/// Basis II for `n₁ = n₂ = n` at any `q > 0`.
pub fn build_basis2_qdeformed_equal<S: Scalar>(n: Half, q: &QParam<S>) -> Result<Representation<S>> {
    check_q(q)?;
    let irrep = IrrepLabel::equal(n)?;
    let basis = enumerate_basis2(irrep);
    let br2 = |x: Half| q.bracket_p(x, 2);
    let top = br2(n + Half::ONE);

    let mut e1 = Assembler::new(&basis, "e1");
    let mut e2 = Assembler::new(&basis, "e2");
    for (idx, state) in basis.states().iter().enumerate() {
        let StateLabel::BasisII { j2, m2, j4, m4 } = *state else {
            unreachable!("Basis II enumeration yields Basis II labels")
        };
        debug_assert_eq!(j2 + j4, n);

        let pf = br2(j2 - m2) * br2(j2 + m2 + Half::ONE);
        if !pf.is_zero() {
            let v = root(pf, || format!("e2 prefactor at {state}"))?;
            e2.push(idx, StateLabel::BasisII { j2, m2: m2 + Half::ONE, j4, m4 }, v)?;
        }

        // only (ε, −ε) terms survive
        for eps in Sign::BOTH {
            let mp = br2(j2 - eps.times(m2) + eps.step());
            if mp.is_zero() {
                continue;
            }
            let m4f = top.clone() - br2(j2 + eps.times(m4) + eps.step());
            if m4f.is_zero() {
                continue;
            }
            let c = CoefficientTableII::deformed(q, eps, j2)?;
            let v = root(mp, || format!("e1 m2-prefactor at {state}"))?
                * root(m4f, || format!("e1 m4-factor at {state}"))?
                * c;
            let target = StateLabel::BasisII {
                j2: j2 + eps.half(),
                m2: m2 - Half::HALF,
                j4: j4 - eps.half(),
                m4: m4 + Half::HALF,
            };
            e1.push(idx, target, v)?;
        }
    }
    let e1 = e1.finish()?;
    let e2 = e2.finish()?;
    Representation::from_raising(basis, q.clone(), e1, e2)
}

/// Which Chevalley triplet carries the standard su(2) structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisChoice {
    I,
    II,
}

/// Builds whichever solution is available for `(irrep, basis, q)`.
pub fn build_representation<S: Scalar>(
    irrep: IrrepLabel,
    basis: BasisChoice,
    q: &QParam<S>,
) -> Result<Representation<S>> {
    let equal = irrep.n1() == irrep.n2();
    match basis {
        BasisChoice::I if equal => build_basis1_equal(irrep.n1(), q),
        BasisChoice::I => Err(Error::Unsupported(format!(
            "Basis I matrix elements for {irrep}: solutions are only available for n1 = n2 here \
             (the n2 = 0, 1/2 solutions are not reproduced, and no solution is known for \
             general (n1, n2), not even at q = 1)"
        ))),
        BasisChoice::II if q.is_classical() => build_basis2_classical(irrep),
        BasisChoice::II if equal => build_basis2_qdeformed_equal(irrep.n1(), q),
        BasisChoice::II => Err(Error::Unsupported(format!(
            "q-deformed Basis II matrix elements for {irrep}: solutions for general (n1, n2) are \
             not available, only the classical q = 1 solution and n1 = n2"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{dim_formula, BasisKind};
    use approx::assert_relative_eq;

    fn h(t: i32) -> Half {
        Half::from_twice(t)
    }

    fn qp(q: f64) -> QParam<f64> {
        QParam::new(q).unwrap()
    }

    #[test]
    fn trivial_irrep_is_zero() {
        let rep = build_basis1_equal(Half::ZERO, &qp(1.3)).unwrap();
        assert_eq!(rep.dim(), 1);
        for (_, m) in rep.named_generators() {
            assert_eq!(m.nnz(), 0);
        }
        let w = rep.cartan().weights()[0];
        assert_eq!(rep.q().pow(w.big_m()), 1.0);
        assert_eq!(rep.q().pow(w.big_k()), 1.0);

        let rep = build_basis2_classical::<f64>(IrrepLabel::equal(Half::ZERO).unwrap()).unwrap();
        assert!(rep.named_generators().iter().all(|(_, m)| m.nnz() == 0));
    }

    #[test]
    fn highest_state_is_annihilated() {
        let rep = build_basis1_equal(Half::ONE, &qp(1.2)).unwrap();
        let top = StateLabel::BasisIMerged { j: Half::ONE, m: Half::ONE, k: Half::ONE };
        let col = rep.basis().index_of(&top).unwrap();
        for m in [rep.e1(), rep.e2()] {
            assert!(m.entries().all(|(_, c, _)| c != col));
        }
        let w = rep.cartan().weights()[col];
        assert_eq!((w.big_m(), w.big_k()), (Half::ONE, Half::ONE));
    }

    #[test]
    fn e1_entry_count() {
        for t in 0..=8 {
            let n = h(t);
            let rep = build_basis1_equal(n, &qp(1.4)).unwrap();
            let expected: i64 = Half::range(if n.is_integer() { Half::ZERO } else { Half::HALF }, n, Half::ONE)
                .map(|j| (j.twice() as i64) * (j.twice() as i64 + 1))
                .sum();
            assert_eq!(rep.e1().nnz() as i64, expected, "n = {n}");
        }
    }

    #[test]
    fn lowering_is_transpose() {
        let rep = build_basis2_qdeformed_equal(h(3), &qp(0.7)).unwrap();
        assert_eq!(rep.f1(), &rep.e1().transpose());
        assert_eq!(rep.f2(), &rep.e2().transpose());
    }

    #[test]
    fn at_most_four_targets_per_state() {
        let rep = build_basis2_classical::<f64>(IrrepLabel::new(h(6), h(2)).unwrap()).unwrap();
        let t = rep.e1().transpose();
        for c in 0..rep.dim() {
            let count = t.entries().filter(|(r, _, _)| *r == c).count();
            assert!(count <= 4);
        }
    }

    #[test]
    fn cartan_examples() {
        let w = CartanWeight::of_state(&StateLabel::BasisIMerged { j: h(2), m: h(0), k: h(2) });
        assert_eq!((w.h1, w.h2), (h(0), h(1)));
        let w = CartanWeight::of_state(&StateLabel::BasisII { j2: h(1), m2: h(1), j4: h(1), m4: h(-1) });
        assert_eq!((w.big_m(), w.big_k()), (h(-2), h(0)));
        assert_eq!((w.m2(), w.m4()), (h(1), h(-1)));
    }

    #[test]
    fn classical_table_special_values() {
        for t in 0..=8 {
            let n = h(t);
            let table = CoefficientTableII::new(IrrepLabel::equal(n).unwrap());
            for j2 in Half::range(Half::ZERO, n, Half::HALF) {
                let j4 = n - j2;
                let cpp: f64 = table.classical(Sign::Plus, Sign::Plus, j2, j4).unwrap();
                assert_eq!(cpp, 0.0);
                if j4 > Half::ZERO {
                    let cpm: f64 = table.classical(Sign::Plus, Sign::Minus, j2, j4).unwrap();
                    assert_relative_eq!(cpm, 1.0, max_relative = 1e-15);
                }
            }
        }
    }

    #[test]
    fn classical_table_symmetry() {
        for ir in IrrepLabel::all_up_to(Half::int(4)) {
            let table = CoefficientTableII::new(ir);
            let b = enumerate_basis2(ir);
            let mut pairs: Vec<_> = b
                .states()
                .iter()
                .map(|s| match s {
                    StateLabel::BasisII { j2, j4, .. } => (*j2, *j4),
                    _ => unreachable!(),
                })
                .collect();
            pairs.dedup();
            for (j2, j4) in pairs {
                for eps in Sign::BOTH {
                    for eps_p in Sign::BOTH {
                        let lhs: Result<f64> =
                            table.classical(eps.flip(), eps_p.flip(), j2 + eps.half(), j4 + eps_p.half());
                        let rhs: Result<f64> = table.classical(eps, eps_p, j2, j4);
                        if let (Ok(l), Ok(r)) = (lhs, rhs) {
                            let sign = (eps.value() * eps_p.value()) as f64;
                            assert_relative_eq!(l, sign * r, epsilon = 1e-15);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn deformed_sign_relation() {
        let q = qp(1.35);
        for t in 0..8 {
            let j2 = h(t);
            let plus = CoefficientTableII::deformed(&q, Sign::Plus, j2).unwrap();
            let minus = CoefficientTableII::deformed(&q, Sign::Minus, j2 + Half::HALF).unwrap();
            assert_eq!(plus, -minus);
            assert!(plus > 0.0);
        }
    }

    #[test]
    fn boundary_m4_factor_vanishes() {
        // at m₄ = j₄ with ε = +1 the factor [n+1]₂ − [j₂+j₄+1]₂ is exactly zero
        let q = qp(1.7);
        for t in 0..=8 {
            let n = h(t);
            for j2 in Half::range(Half::ZERO, n, Half::HALF) {
                let j4 = n - j2;
                let f = q.bracket_p(n + Half::ONE, 2) - q.bracket_p(j2 + j4 + Half::ONE, 2);
                assert_eq!(f, 0.0);
            }
        }
    }

    #[test]
    fn derived_vanish_on_trivial() {
        let rep = build_basis2_qdeformed_equal(Half::ZERO, &qp(2.0)).unwrap();
        assert_eq!(rep.derived().e4.nnz(), 0);
        assert_eq!(rep.derived().e4_mismatch, 0.0);
    }

    #[test]
    fn e4_expressions_agree() {
        for t in 1..=6 {
            let rep = build_basis1_equal(h(t), &qp(1.3)).unwrap();
            let scale = rep.derived().e4.max_abs().max(1.0);
            assert!(rep.derived().e4_mismatch <= 1e-12 * scale);
            assert!(rep.derived().f4_mismatch <= 1e-12 * scale);
            rep.derived().check_consistency(1e-9 * scale).unwrap();
        }
    }

    #[test]
    fn e3_transpose_relation() {
        // transpose(q e1e2 − q⁻¹e2e1) = q f2f1 − q⁻¹ f1f2
        let rep = build_basis2_qdeformed_equal(h(4), &qp(1.3)).unwrap();
        let d = rep.derived();
        assert!(d.e3p.transpose().max_abs_diff(&d.f3p).unwrap() < 1e-13);
        assert!(d.e3m.transpose().max_abs_diff(&d.f3m).unwrap() < 1e-13);
        assert!(d.e4.transpose().max_abs_diff(&d.f4).unwrap() < 1e-12);
    }

    #[test]
    fn consistency_failure_is_reported() {
        // the two e4 forms agree identically, so only rounding can separate them
        let rep = build_basis1_equal(h(2), &qp(1.3)).unwrap();
        let mut d = rep.derived().clone();
        d.f4_mismatch = 1e-6;
        assert!(matches!(
            d.check_consistency(1e-9),
            Err(Error::Consistency { generator: "f4", .. })
        ));
        d.e4_mismatch = f64::NAN;
        assert!(matches!(
            d.check_consistency(1e-9),
            Err(Error::Consistency { generator: "e4", .. })
        ));
    }

    #[test]
    fn unsupported_cases_are_named() {
        let general = IrrepLabel::new(h(4), h(2)).unwrap();
        assert!(matches!(build_representation(general, BasisChoice::I, &qp(1.0)), Err(Error::Unsupported(_))));
        assert!(matches!(build_representation(general, BasisChoice::II, &qp(1.5)), Err(Error::Unsupported(_))));
        let rep = build_representation(general, BasisChoice::II, &qp(1.0)).unwrap();
        assert_eq!(rep.dim() as u64, dim_formula(general));
        assert_eq!(rep.kind(), BasisKind::BasisII);
    }

    #[test]
    fn rejects_non_positive_q() {
        assert!(QParam::new(-1.0f64).is_err());
    }

    #[test]
    fn continuity_near_classical_point() {
        let q = qp(1.0 + 1e-6);
        for t in 1..=6 {
            let n = h(t);
            let pairs = [
                (build_basis1_equal(n, &q).unwrap(), build_basis1_equal(n, &qp(1.0)).unwrap()),
                (
                    build_basis2_qdeformed_equal(n, &q).unwrap(),
                    build_basis2_classical(IrrepLabel::equal(n).unwrap()).unwrap(),
                ),
            ];
            for (near, exact) in pairs {
                for ((_, a), (_, b)) in near.named_generators().into_iter().zip(exact.named_generators()).take(4) {
                    assert_eq!(a.nnz(), b.nnz());
                    for (r, c, v) in b.entries() {
                        assert_relative_eq!(a.get(r, c), *v, max_relative = 1e-4);
                    }
                }
            }
        }
    }
}
