//! Finite-dimensional irreducible representations of the quantum algebra
//! `U_q(SO(5))` in two Gel'fand–Tsetlin-type bases, with relation checks,
//! Casimir verification, δ-expansions and contraction limits.

pub mod analysis;
pub mod basis;
pub mod error;
pub mod exchange;
pub mod half;
pub mod qnum;
pub mod repbuild;
pub mod scalar;
pub mod sparse;
pub mod verify;

pub use analysis::{
    casimir_delta_expansion, casimir_eigenvalue_series, classical_casimir, contraction_limit, contraction_limit_value,
    separation_check, CasimirExpansion, ContractionResult, SeparationResult,
};
pub use basis::{
    dim_equal_labels, dim_formula, enumerate, enumerate_basis1_full, enumerate_basis1_merged, enumerate_basis2,
    BasisEnumeration, BasisKind, IrrepLabel, StateLabel,
};
pub use error::{Error, Result};
pub use exchange::{RepresentationExport, TripletMatrix};
pub use half::Half;
pub use qnum::{bracket, ratio_bracket, DeformationParams, DeltaSeries, QParam};
pub use repbuild::{
    build_basis1_equal, build_basis2_classical, build_basis2_qdeformed_equal, build_derived, build_representation,
    BasisChoice, CartanDiagonals, CartanWeight, CoefficientTableII, DerivedGenerators, Representation, Sign,
};
pub use scalar::{high_precision_digits, set_high_precision_digits, HighPrecision, Scalar};
pub use sparse::GeneratorMatrix;
pub use verify::{
    build_casimir, casimir_eigenvalue_formula, check_casimir, check_relations, verify, CasimirCheck, RelationId,
    RelationResidual, VerificationReport,
};
