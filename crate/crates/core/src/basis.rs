//! Basis-state enumeration and dimension formulas.
//!
//! Basis I carries the `U_q(su(2))` structure of the first Chevalley triplet
//! (labels `j, m, k, l`); Basis II carries the `U_{q²}(su(2))` structure of
//! the second (labels `j₂, m₂, j₄, m₄`). States are kept in lexicographic
//! order of their label tuples, so indices are reproducible.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::half::Half;

/// Highest-weight labels `(n₁, n₂)` with `n₁ ≥ n₂ ≥ 0`, both integers or both
/// half-odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawIrrep")]
pub struct IrrepLabel {
    n1: Half,
    n2: Half,
}

#[derive(Deserialize)]
struct RawIrrep {
    n1: Half,
    n2: Half,
}

impl TryFrom<RawIrrep> for IrrepLabel {
    type Error = Error;
    fn try_from(raw: RawIrrep) -> Result<Self> {
        IrrepLabel::new(raw.n1, raw.n2)
    }
}

impl IrrepLabel {
    pub fn new(n1: Half, n2: Half) -> Result<Self> {
        let invalid = |reason| Err(Error::InvalidIrrep { n1, n2, reason });
        if n2 < Half::ZERO {
            return invalid("n2 must be non-negative");
        }
        if n1 < n2 {
            return invalid("n1 must be at least n2");
        }
        if n1.is_integer() != n2.is_integer() {
            return invalid("n1 and n2 must both be integers or both half-odd");
        }
        Ok(IrrepLabel { n1, n2 })
    }

    /// `(n, n)`.
    pub fn equal(n: Half) -> Result<Self> {
        Self::new(n, n)
    }

    pub fn n1(&self) -> Half {
        self.n1
    }

    pub fn n2(&self) -> Half {
        self.n2
    }

    pub fn is_integer(&self) -> bool {
        self.n1.is_integer()
    }

    /// Every valid irrep with `n₁ ≤ max_n1`, ordered by `(n₁, n₂)`.
    pub fn all_up_to(max_n1: Half) -> Vec<IrrepLabel> {
        let mut out = Vec::new();
        for n1 in Half::range(Half::ZERO, max_n1, Half::HALF) {
            let start = if n1.is_integer() { Half::ZERO } else { Half::HALF };
            for n2 in Half::range(start, n1, Half::ONE) {
                out.push(IrrepLabel { n1, n2 });
            }
        }
        out
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.n1, self.n2)
    }
}

/// `(1/6)(2n₂+1)(2n₁+3)(n₁+n₂+2)(n₁−n₂+1)`.
pub fn dim_formula(irrep: IrrepLabel) -> u64 {
    let t1 = irrep.n1.twice() as i64;
    let t2 = irrep.n2.twice() as i64;
    // in doubled units: (t2+1)(t1+3)·((t1+t2)/2+2)·((t1−t2)/2+1)/6
    let product = (t2 + 1) * (t1 + 3) * ((t1 + t2 + 4) / 2) * ((t1 - t2 + 2) / 2);
    debug_assert_eq!(product % 6, 0);
    (product / 6) as u64
}

/// `(1/3)(n+1)(2n+1)(2n+3)`, the `n₁ = n₂ = n` specialisation.
pub fn dim_equal_labels(n: Half) -> u64 {
    let t = n.twice() as i64;
    let product = (t + 2) * (t + 1) * (t + 3);
    debug_assert_eq!(product % 6, 0);
    (product / 6) as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StateLabel {
    BasisI { j: Half, m: Half, k: Half, l: Half },
    /// Basis I with the `l` label suppressed (only for `n₁ = n₂`).
    BasisIMerged { j: Half, m: Half, k: Half },
    BasisII { j2: Half, m2: Half, j4: Half, m4: Half },
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateLabel::BasisI { j, m, k, l } => write!(f, "|j={j} m={m} k={k} l={l}>"),
            StateLabel::BasisIMerged { j, m, k } => write!(f, "|j={j} m={m} k={k}>"),
            StateLabel::BasisII { j2, m2, j4, m4 } => {
                write!(f, "|j2={j2} m2={m2} j4={j4} m4={m4}>")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasisKind {
    #[serde(rename = "I-merged")]
    BasisIMerged,
    #[serde(rename = "I-full")]
    BasisIFull,
    #[serde(rename = "II")]
    BasisII,
}

impl fmt::Display for BasisKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BasisKind::BasisIMerged => "I-merged",
            BasisKind::BasisIFull => "I-full",
            BasisKind::BasisII => "II",
        })
    }
}

/// Ordered states of one irrep in one basis, with the inverse index map.
#[derive(Clone, Debug)]
pub struct BasisEnumeration {
    irrep: IrrepLabel,
    kind: BasisKind,
    states: Vec<StateLabel>,
    index: HashMap<StateLabel, usize>,
}

impl BasisEnumeration {
    fn from_states(irrep: IrrepLabel, kind: BasisKind, mut states: Vec<StateLabel>) -> Self {
        states.sort();
        states.dedup();
        let index = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        BasisEnumeration { irrep, kind, states, index }
    }

    pub fn irrep(&self) -> IrrepLabel {
        self.irrep
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn states(&self) -> &[StateLabel] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, state: &StateLabel) -> Option<usize> {
        self.index.get(state).copied()
    }

    pub fn state(&self, index: usize) -> StateLabel {
        self.states[index]
    }
}

/// All `(j, m, k, l)` in the Basis I domain.
///
/// Integer `(n₁, n₂)`: `k` runs over `−l, −l+2, …, l`, `j + l ∈ [n₁−n₂, n₁+n₂]`
/// in unit steps, and `j − l − ½(1 − (−1)^{n₁+n₂−j−l})` runs over
/// `−n₁+n₂, …, n₁−n₂` in steps of 2. Half-odd `(n₁, n₂)`: `k` in unit steps,
/// `j + l ∈ {n₁−n₂+1, n₁−n₂+3, …, n₁+n₂}` and `j − l ∈ {−n₁+n₂, …, n₁−n₂}` in
/// steps of 2.
pub fn enumerate_basis1_full(irrep: IrrepLabel) -> BasisEnumeration {
    let (n1, n2) = (irrep.n1, irrep.n2);
    let integer = irrep.is_integer();
    let start = if integer { Half::ZERO } else { Half::HALF };
    let in_lattice = |v: Half, lo: Half, hi: Half, step: i32| {
        v >= lo && v <= hi && (v - lo).twice() % (2 * step) == 0
    };
    let mut states = Vec::new();
    for j in Half::range(start, n1, Half::ONE) {
        for l in Half::range(start, n1 + n2, Half::ONE) {
            let sum = j + l;
            let diff = j - l;
            let ok = if integer {
                let parity = (n1 + n2 - j - l).twice().rem_euclid(4) / 2;
                in_lattice(sum, n1 - n2, n1 + n2, 1)
                    && in_lattice(diff - Half::int(parity), n2 - n1, n1 - n2, 2)
            } else {
                in_lattice(sum, n1 - n2 + Half::ONE, n1 + n2, 2)
                    && in_lattice(diff, n2 - n1, n1 - n2, 2)
            };
            if !ok {
                continue;
            }
            let k_step = if integer { Half::int(2) } else { Half::ONE };
            for m in Half::projections(j) {
                for k in Half::range(-l, l, k_step) {
                    states.push(StateLabel::BasisI { j, m, k, l });
                }
            }
        }
    }
    BasisEnumeration::from_states(irrep, BasisKind::BasisIFull, states)
}

/// `(j, m, k)` with `j = n mod 1, …, n` and `m, k ∈ {−j, …, j}`.
pub fn enumerate_basis1_merged(n: Half) -> Result<BasisEnumeration> {
    let irrep = IrrepLabel::equal(n)?;
    let start = if n.is_integer() { Half::ZERO } else { Half::HALF };
    let mut states = Vec::new();
    for j in Half::range(start, n, Half::ONE) {
        for m in Half::projections(j) {
            for k in Half::projections(j) {
                states.push(StateLabel::BasisIMerged { j, m, k });
            }
        }
    }
    Ok(BasisEnumeration::from_states(irrep, BasisKind::BasisIMerged, states))
}

/// All `(j₂, m₂, j₄, m₄)` with `j₂, j₄ ∈ {0, ½, …, (n₁+n₂)/2}`,
/// `j₂ + j₄ ∈ {n₂, …, n₁}` and `j₂ − j₄ ∈ {−n₂, …, n₂}` (unit steps).
pub fn enumerate_basis2(irrep: IrrepLabel) -> BasisEnumeration {
    let (n1, n2) = (irrep.n1, irrep.n2);
    let top = Half::from_twice((n1 + n2).twice() / 2);
    let unit_lattice = |v: Half, lo: Half, hi: Half| v >= lo && v <= hi && (v - lo).is_integer();
    let mut states = Vec::new();
    for j2 in Half::range(Half::ZERO, top, Half::HALF) {
        for j4 in Half::range(Half::ZERO, top, Half::HALF) {
            if !unit_lattice(j2 + j4, n2, n1) || !unit_lattice(j2 - j4, -n2, n2) {
                continue;
            }
            for m2 in Half::projections(j2) {
                for m4 in Half::projections(j4) {
                    states.push(StateLabel::BasisII { j2, m2, j4, m4 });
                }
            }
        }
    }
    BasisEnumeration::from_states(irrep, BasisKind::BasisII, states)
}

/// Re-enumerates the basis named by `(irrep, kind)`.
pub fn enumerate(irrep: IrrepLabel, kind: BasisKind) -> Result<BasisEnumeration> {
    match kind {
        BasisKind::BasisIFull => Ok(enumerate_basis1_full(irrep)),
        BasisKind::BasisII => Ok(enumerate_basis2(irrep)),
        BasisKind::BasisIMerged => {
            if irrep.n1 != irrep.n2 {
                return Err(Error::Unsupported(format!(
                    "the merged Basis I labelling needs n1 = n2, got {irrep}"
                )));
            }
            enumerate_basis1_merged(irrep.n1)
        }
    }
}
