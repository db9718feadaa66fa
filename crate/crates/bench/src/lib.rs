//! Benchmark fixtures.

use uqso5::{build_representation, BasisChoice, Half, IrrepLabel, QParam, Representation, Result};

/// Equal labels n = n1 = n2 used across the benches, as twice-values.
pub const EQUAL_TWICE: [i32; 4] = [2, 4, 6, 8];

pub fn equal_label(twice: i32) -> IrrepLabel {
    let n = Half::from_twice(twice);
    IrrepLabel::new(n, n).expect("equal labels are valid")
}

/// Labels with n1 > n2 for the classical Basis II build.
pub fn classical_labels() -> Vec<IrrepLabel> {
    [(2, 1), (3, 2), (4, 2), (5, 3)]
        .into_iter()
        .map(|(a, b)| IrrepLabel::new(Half::int(a), Half::int(b)).expect("valid label"))
        .collect()
}

pub fn build(irrep: IrrepLabel, basis: BasisChoice, q: f64) -> Result<Representation<f64>> {
    build_representation(irrep, basis, &QParam::new(q)?)
}
