//! Acceptance suite. Prints one PASS/FAIL line per criterion, with detail
//! lines underneath, and exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uqso5::analysis::{casimir_delta_expansion, classical_casimir, contraction_limit, n1_ladder, separation_check};
use uqso5::basis::{
    dim_equal_labels, dim_formula, enumerate_basis1_full, enumerate_basis1_merged, enumerate_basis2, IrrepLabel,
    StateLabel,
};
use uqso5::repbuild::{build_basis1_equal, build_basis2_classical, build_basis2_qdeformed_equal, Representation};
use uqso5::verify::{check_casimir, check_relations, perturb_raising_entry, verify, Raising};
use uqso5::{Half, QParam};

const Q_SET: [f64; 3] = [0.7, 1.1, 1.5];

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    pass: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { pass: true, details: Vec::new() }
    }

    fn fail(&mut self, msg: String) {
        self.pass = false;
        self.details.push(msg);
    }

    fn note(&mut self, msg: String) {
        self.details.push(msg);
    }
}

fn h(t: i32) -> Half {
    Half::from_twice(t)
}

fn qp(q: f64) -> QParam<f64> {
    QParam::new(q).unwrap()
}

/// Every representation covered by the relation and Casimir criteria.
fn relation_suite() -> Vec<(String, Representation<f64>)> {
    let mut out = Vec::new();
    for t in 1..=8 {
        let n = h(t);
        for q in Q_SET {
            out.push((format!("I n={n} q={q}"), build_basis1_equal(n, &qp(q)).unwrap()));
            out.push((format!("II-q n={n} q={q}"), build_basis2_qdeformed_equal(n, &qp(q)).unwrap()));
        }
    }
    for irrep in IrrepLabel::all_up_to(Half::int(4)) {
        out.push((format!("II-cl {irrep}"), build_basis2_classical(irrep).unwrap()));
    }
    out
}

fn criterion_dimensions() -> Outcome {
    let mut o = Outcome::new();
    let mut checked = 0;
    for irrep in IrrepLabel::all_up_to(Half::int(5)) {
        let d = dim_formula(irrep);
        let full = enumerate_basis1_full(irrep).len() as u64;
        let two = enumerate_basis2(irrep).len() as u64;
        if full != d || two != d {
            o.fail(format!("{irrep}: formula {d}, Basis I full {full}, Basis II {two}"));
        }
        if irrep.n1() == irrep.n2() {
            let merged = enumerate_basis1_merged(irrep.n1()).unwrap().len() as u64;
            if merged != d {
                o.fail(format!("{irrep}: merged Basis I {merged} vs {d}"));
            }
        }
        checked += 1;
    }
    for t in 0..=12 {
        let n = h(t);
        let (a, b) = (dim_equal_labels(n), dim_formula(IrrepLabel::equal(n).unwrap()));
        if a != b {
            o.fail(format!("n={n}: equal-label formula {a} vs {b}"));
        }
    }
    o.note(format!("{checked} irreps with n1 <= 5, equal-label check for n <= 6"));
    o
}

fn criterion_relations(suite: &[(String, Representation<f64>)]) -> Outcome {
    let mut o = Outcome::new();
    let mut worst = (0.0f64, String::new());
    for (name, rep) in suite {
        for r in check_relations(rep).unwrap() {
            if r.max_abs_residual > worst.0 {
                worst = (r.max_abs_residual, format!("{name} {}", r.relation));
            }
            if !(r.max_abs_residual <= 1e-9) {
                o.fail(format!("{name}: {} = {:.3e}", r.relation, r.max_abs_residual));
            }
        }
    }
    o.note(format!("{} representations, worst residual {:.3e} ({})", suite.len(), worst.0, worst.1));
    o
}

fn criterion_casimir(suite: &[(String, Representation<f64>)]) -> Outcome {
    let mut o = Outcome::new();
    let mut worst = (0.0f64, String::new());
    for (name, rep) in suite {
        let c = check_casimir(rep).unwrap();
        let w = [c.max_offdiag, c.eigenvalue_spread, c.formula_deviation].into_iter().fold(0.0, f64::max);
        if w > worst.0 {
            worst = (w, name.clone());
        }
        if !(c.max_offdiag <= 1e-9 && c.eigenvalue_spread <= 1e-9 && c.formula_deviation <= 1e-9) {
            o.fail(format!(
                "{name}: offdiag {:.3e}, spread {:.3e}, deviation {:.3e}",
                c.max_offdiag, c.eigenvalue_spread, c.formula_deviation
            ));
        }
        if !(c.asymmetry <= 1e-9) {
            o.fail(format!("{name}: Casimir asymmetry {:.3e}", c.asymmetry));
        }
    }
    o.note(format!("worst Casimir deviation {:.3e} ({})", worst.0, worst.1));
    o
}

fn criterion_classical_limit() -> Outcome {
    let mut o = Outcome::new();
    let mut worst = 0.0f64;
    let mut terms = 0usize;
    for t in 0..=6 {
        let n = h(t);
        let irrep = IrrepLabel::equal(n).unwrap();
        let deformed = build_basis2_qdeformed_equal(n, &QParam::<f64>::classical()).unwrap();
        let classical = build_basis2_classical::<f64>(irrep).unwrap();
        for ((name, a), (_, b)) in deformed.named_generators().into_iter().zip(classical.named_generators()) {
            let diff = a.max_abs_diff(b).unwrap();
            worst = worst.max(diff);
            if !(diff <= 1e-12) {
                o.fail(format!("n={n} {name}: max entry difference {diff:.3e}"));
            }
        }

        // index identity on every nonzero term, at a generic q as well
        for rep in [&deformed, &build_basis2_qdeformed_equal(n, &qp(1.3)).unwrap()] {
            for (r, c, _) in rep.e1().entries() {
                let (StateLabel::BasisII { j2, m4, j4, .. }, StateLabel::BasisII { j2: t2, j4: t4, .. }) =
                    (rep.basis().state(c), rep.basis().state(r))
                else {
                    unreachable!()
                };
                let eps = (t2 - j2).double();
                let eps_p = (t4 - j4).double();
                let plus = eps == Half::ONE;
                let sign = |x: Half| if plus { x } else { -x };
                let sign_p = |x: Half| if plus { -x } else { x };
                let step = if plus { Half::ONE } else { Half::ZERO };
                let step_p = Half::ONE - step;
                let lhs = n + Half::ONE - (j2 + sign(m4) + step);
                let rhs = j4 + sign_p(m4) + step_p;
                terms += 1;
                if eps_p != -eps || lhs != rhs {
                    o.fail(format!("n={n}: term {} -> {} breaks the index identity", rep.basis().state(c), rep.basis().state(r)));
                }
            }
        }
    }
    o.note(format!("n <= 3: worst entry difference {worst:.3e}; index identity checked on {terms} terms"));
    o
}

fn criterion_expansion() -> Outcome {
    let mut o = Outcome::new();
    let mut a2_bad = 0;
    let mut ratio_bad = Vec::new();
    let mut plain_bad = 0;
    let mut count = 0;
    for irrep in IrrepLabel::all_up_to(Half::int(8)) {
        let e = casimir_delta_expansion(irrep, 4).unwrap();
        count += 1;
        if e.a2 != classical_casimir(irrep) {
            a2_bad += 1;
            o.fail(format!("{irrep}: A2 = {} vs {}", e.a2, classical_casimir(irrep)));
        }
        let (a, b) = (irrep.n1().to_rational(), irrep.n2().to_rational());
        let one = BigRational::from_integer(1.into());
        let two = BigRational::from_integer(2.into());
        let four = BigRational::from_integer(4.into());
        let product = &b * (&b + &one) * (&a + &one) * (&a + &two);
        if e.ratio_contribution != product {
            plain_bad += 1;
        }
        let stated = four * product;
        if e.ratio_contribution != stated {
            ratio_bad.push(format!("{irrep}: {} vs {}", e.ratio_contribution, stated));
        }
    }
    o.note(format!("A2 exact on {}/{count} irreps with n1 <= 8", count - a2_bad));
    if !ratio_bad.is_empty() {
        o.pass = false;
        o.note(format!(
            "ratio-factor contribution to A4 differs from 4 n2(n2+1)(n1+1)(n1+2) on {}/{count} irreps, e.g.",
            ratio_bad.len()
        ));
        for line in ratio_bad.iter().take(3) {
            o.note(format!("  {line}"));
        }
    }
    o.note(format!(
        "contribution equals n2(n2+1)(n1+1)(n1+2) exactly on {}/{count} irreps (expansion in ln q)",
        count - plain_bad
    ));
    o
}

fn criterion_contraction() -> Outcome {
    let mut o = Outcome::new();
    for q in [1.2, 1.5, 2.0] {
        let mut limits = Vec::new();
        for t in [0, 1, 2, 4] {
            let n2 = h(t);
            let r = contraction_limit(n2, q, 1.0, &n1_ladder(n2, 13)).unwrap();
            let line = format!(
                "q={q} n2={n2}: limit {:.10}, final relative error {:.3e}",
                r.limit_formula_value, r.final_relative_error
            );
            if r.final_relative_error <= 1e-6 {
                o.note(line);
            } else {
                let needed = (13..200)
                    .map(|count| contraction_limit(n2, q, 1.0, &n1_ladder(n2, count)).unwrap())
                    .find(|r| r.final_relative_error <= 1e-6)
                    .and_then(|r| r.sequence.last().map(|p| p.n1));
                let needed = needed.map_or("beyond n1 = n2+199".to_string(), |n| format!("first reached at n1 = {n}"));
                o.fail(format!("{line}; 1e-6 {needed}"));
            }
            limits.push(r.limit_formula_value);
        }
        if !limits.windows(2).all(|w| w[1] > w[0]) {
            o.fail(format!("q={q}: limit not strictly increasing in n2: {limits:?}"));
        }
    }
    o
}

fn criterion_separation() -> Outcome {
    let mut o = Outcome::new();
    let pair = (IrrepLabel::new(h(10), h(8)).unwrap(), IrrepLabel::new(h(12), h(4)).unwrap());
    for q in [1.01, 1.1, 1.5, 2.0] {
        let r = &separation_check(&[pair], q, 1e-6).unwrap()[0];
        let line = format!("q={q}: |difference| = {:.6e}", r.difference);
        if r.separated {
            o.note(line);
        } else {
            o.fail(line);
        }
    }
    o
}

fn criterion_mutation() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let reps = [
        build_basis1_equal(h(3), &qp(1.1)).unwrap(),
        build_basis2_qdeformed_equal(h(4), &qp(0.7)).unwrap(),
        build_basis2_classical::<f64>(IrrepLabel::new(h(6), h(2)).unwrap()).unwrap(),
    ];
    let mut weakest = f64::INFINITY;
    let samples = 30;
    for i in 0..samples {
        let rep = &reps[i % reps.len()];
        let which = if rng.gen_bool(0.5) { Raising::E1 } else { Raising::E2 };
        let nnz = match which {
            Raising::E1 => rep.e1().nnz(),
            Raising::E2 => rep.e2().nnz(),
        };
        let entry = rng.gen_range(0..nnz);
        let bad = perturb_raising_entry(rep, which, entry, 1e-3).unwrap();
        let dev = verify(&bad, Some(1e-9)).unwrap().max_algebraic_deviation();
        weakest = weakest.min(dev);
        if !(dev > 1e-5) {
            o.fail(format!("{} {which:?} entry #{entry}: largest deviation {dev:.3e}", rep.irrep()));
        }
    }
    o.note(format!("{samples} perturbations, smallest triggered deviation {weakest:.3e}"));
    o
}

fn main() -> ExitCode {
    let start = Instant::now();
    let suite = relation_suite();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("1 dimension identities", Box::new(criterion_dimensions)),
        ("2 relation suite", Box::new(|| criterion_relations(&suite))),
        ("3 Casimir scalar", Box::new(|| criterion_casimir(&suite))),
        ("4 classical-limit match", Box::new(criterion_classical_limit)),
        ("5 expansion coefficients", Box::new(criterion_expansion)),
        ("6 contraction limit", Box::new(criterion_contraction)),
        ("7 degeneracy splitting", Box::new(criterion_separation)),
        ("8 mutation sensitivity", Box::new(criterion_mutation)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let outcome = run();
        println!("{} criterion {name}", if outcome.pass { "PASS" } else { "FAIL" });
        for d in &outcome.details {
            println!("       {d}");
        }
        if !outcome.pass {
            failed += 1;
        }
    }
    println!(
        "acceptance: {}/{} criteria passed in {:.1?}",
        criteria.len() - failed,
        criteria.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
