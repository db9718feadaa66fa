use uqso5::{dim_formula, verify, BasisChoice};
use uqso5_bench::{build, classical_labels, equal_label, EQUAL_TWICE};

#[test]
fn fixtures_build_and_verify() {
    for twice in EQUAL_TWICE {
        let irrep = equal_label(twice);
        for basis in [BasisChoice::I, BasisChoice::II] {
            let rep = build(irrep, basis, 1.5).unwrap();
            assert_eq!(rep.dim() as u64, dim_formula(irrep));
            assert!(verify(&rep, None).unwrap().passed, "{irrep}");
        }
    }
    for irrep in classical_labels() {
        assert!(verify(&build(irrep, BasisChoice::II, 1.0).unwrap(), None).unwrap().passed, "{irrep}");
    }
}
