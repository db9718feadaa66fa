use std::fs;
use std::io::Write;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::json;
use uqso5::analysis::n1_ladder;
use uqso5::{
    build_representation, casimir_delta_expansion, casimir_eigenvalue_formula, check_casimir, contraction_limit,
    dim_formula, separation_check, set_high_precision_digits, verify, BasisChoice, HighPrecision, IrrepLabel, QParam,
    RepresentationExport, Scalar, VerificationReport,
};

use crate::args::{BasisArg, Command, Format, IrrepArgs, NumericArgs, OutputArgs, Precision, QSpec};
use crate::error::CliError;

type CliResult = Result<ExitCode, CliError>;

pub fn run(command: Command) -> CliResult {
    match command {
        Command::Dim { irrep, out } => dim(&irrep, &out),
        Command::Build { irrep, basis, num, out } => {
            let irrep = irrep.irrep()?;
            match precision(&num)? {
                Precision::Double => build::<f64>(irrep, basis, &num, &out),
                Precision::High => build::<HighPrecision>(irrep, basis, &num, &out),
            }
        }
        Command::Verify { irrep, basis, input, num, out } => match input {
            Some(path) => verify_file(&path, &num, &out),
            None => {
                let irrep = irrep.irrep()?;
                let basis = basis.ok_or_else(|| CliError::Usage("--basis is required".into()))?;
                match precision(&num)? {
                    Precision::Double => verify_built::<f64>(irrep, basis, &num, &out),
                    Precision::High => verify_built::<HighPrecision>(irrep, basis, &num, &out),
                }
            }
        },
        Command::Casimir { irrep, basis, num, out } => {
            let irrep = irrep.irrep()?;
            match precision(&num)? {
                Precision::Double => casimir::<f64>(irrep, basis, &num, &out),
                Precision::High => casimir::<HighPrecision>(irrep, basis, &num, &out),
            }
        }
        Command::Expand { irrep, order, out } => expand(&irrep, order, &out),
        Command::Contract { n2, q, lambda, count, out } => {
            let q: f64 = QSpec::parse(&q)?.value()?;
            let result = contraction_limit(n2, q, lambda, &n1_ladder(n2, count))?;
            let text = match out.format.unwrap_or(Format::Json) {
                Format::Json => json_text(&result)?,
                Format::Csv => {
                    let rows = result.sequence.iter().map(|p| {
                        vec![
                            p.n1.to_string(),
                            n2.to_string(),
                            q.to_string(),
                            lambda.to_string(),
                            p.scaled_eigenvalue.to_string(),
                            result.limit_formula_value.to_string(),
                        ]
                    });
                    csv_text(&["n1", "n2", "q", "lambda", "scaled_eigenvalue", "limit"], rows)?
                }
            };
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Separate { pairs, q, tol, out } => {
            let q: f64 = QSpec::parse(&q)?.value()?;
            let results = separation_check(&pairs, q, tol)?;
            let text = match out.format.unwrap_or(Format::Json) {
                Format::Json => json_text(&json!({ "q": q, "tolerance": tol, "pairs": results }))?,
                Format::Csv => {
                    let rows = results.iter().map(|r| {
                        vec![
                            r.first.to_string(),
                            r.second.to_string(),
                            q.to_string(),
                            r.classical_value.clone(),
                            r.first_value.to_string(),
                            r.second_value.to_string(),
                            r.difference.to_string(),
                            r.separated.to_string(),
                        ]
                    });
                    let header =
                        ["first", "second", "q", "classical", "first_value", "second_value", "difference", "separated"];
                    csv_text(&header, rows)?
                }
            };
            emit(&out, &text)?;
            if results.iter().all(|r| r.separated) {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("some pairs are not separated at q = {q}");
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn precision(num: &NumericArgs) -> Result<Precision, CliError> {
    match (num.precision, num.digits) {
        (Precision::Double, Some(_)) => Err(CliError::Usage("--digits needs --precision high".into())),
        (Precision::High, digits) => {
            set_high_precision_digits(digits.unwrap_or(60))?;
            Ok(Precision::High)
        }
        (Precision::Double, None) => Ok(Precision::Double),
    }
}

fn q_param<S: Scalar>(num: &NumericArgs) -> Result<QParam<S>, CliError> {
    Ok(QParam::new(QSpec::parse(&num.q)?.value::<S>()?)?)
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), CliError> {
    let mut text = text.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &out.output {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Pretty JSON with sorted object keys.
fn json_text<T: Serialize>(value: &T) -> Result<String, CliError> {
    Ok(serde_json::to_string_pretty(&serde_json::to_value(value)?)?)
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn dim(irrep: &IrrepArgs, out: &OutputArgs) -> CliResult {
    let irrep = irrep.irrep()?;
    let d = dim_formula(irrep);
    let text = match out.format {
        None => d.to_string(),
        Some(Format::Json) => json_text(&json!({ "n1": irrep.n1(), "n2": irrep.n2(), "dim": d }))?,
        Some(Format::Csv) => csv_text(&["n1", "n2", "dim"], [vec![irrep.n1().to_string(), irrep.n2().to_string(), d.to_string()]])?,
    };
    emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn build<S: Scalar>(irrep: IrrepLabel, basis: BasisArg, num: &NumericArgs, out: &OutputArgs) -> CliResult {
    let q = q_param::<S>(num)?;
    let rep = build_representation(irrep, BasisChoice::from(basis), &q)?;
    let export = RepresentationExport::from_representation(&rep);
    let text = match out.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&export)?,
        Format::Csv => {
            let rows = export.generators.iter().flat_map(|g| {
                g.entries
                    .iter()
                    .map(move |(r, c, v)| vec![g.generator.clone(), r.to_string(), c.to_string(), v.clone()])
            });
            csv_text(&["generator", "row", "col", "value"], rows)?
        }
    };
    emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn report_text(report: &VerificationReport, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => json_text(report),
        Format::Csv => {
            let mut rows: Vec<Vec<String>> = report
                .residuals
                .iter()
                .map(|r| vec![r.relation.to_string(), format!("{:e}", r.max_abs_residual), format!("{:e}", report.tolerance)])
                .collect();
            for (name, v) in [
                ("casimir_max_offdiag", report.casimir_max_offdiag),
                ("casimir_eigenvalue_spread", report.casimir_eigenvalue_spread),
                ("casimir_vs_formula", report.casimir_vs_formula),
                ("casimir_asymmetry", report.casimir_asymmetry),
            ] {
                rows.push(vec![name.to_string(), format!("{v:e}"), format!("{:e}", report.casimir_tolerance)]);
            }
            csv_text(&["check", "max_abs_residual", "tolerance"], rows)
        }
    }
}

fn finish_report(report: &VerificationReport, out: &OutputArgs) -> CliResult {
    emit(out, &report_text(report, out.format.unwrap_or(Format::Json))?)?;
    if report.passed {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("verification failed for {} in basis {}", report.irrep, report.basis_kind);
        Ok(ExitCode::from(1))
    }
}

fn verify_built<S: Scalar>(irrep: IrrepLabel, basis: BasisArg, num: &NumericArgs, out: &OutputArgs) -> CliResult {
    let q = q_param::<S>(num)?;
    let rep = build_representation(irrep, BasisChoice::from(basis), &q)?;
    finish_report(&verify(&rep, num.tol)?, out)
}

/// Re-verifies an exported bundle at the precision it was written with.
fn verify_file(path: &std::path::Path, num: &NumericArgs, out: &OutputArgs) -> CliResult {
    let export = RepresentationExport::from_json(&fs::read_to_string(path)?)?;
    let report = if export.precision == "double" {
        verify(&export.to_representation::<f64>()?, num.tol)?
    } else if let Some(digits) = export.precision.strip_prefix("high:") {
        let digits: usize = digits
            .parse()
            .map_err(|_| CliError::Usage(format!("bad precision tag `{}`", export.precision)))?;
        set_high_precision_digits(digits)?;
        verify(&export.to_representation::<HighPrecision>()?, num.tol)?
    } else {
        return Err(CliError::Usage(format!("unknown precision tag `{}`", export.precision)));
    };
    finish_report(&report, out)
}

fn casimir<S: Scalar>(irrep: IrrepLabel, basis: Option<BasisArg>, num: &NumericArgs, out: &OutputArgs) -> CliResult {
    let q = q_param::<S>(num)?;
    let value = casimir_eigenvalue_formula(irrep, &q);
    let check = match basis {
        Some(b) => Some(check_casimir(&build_representation(irrep, BasisChoice::from(b), &q)?)?),
        None => None,
    };
    let text = match out.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&json!({
            "irrep": irrep,
            "q": q.q().to_exact_string(),
            "precision": S::precision_tag(),
            "eigenvalue": value.to_exact_string(),
            "matrix": check,
        }))?,
        Format::Csv => {
            let opt = |f: fn(&uqso5::CasimirCheck) -> f64| check.as_ref().map_or(String::new(), |c| format!("{:e}", f(c)));
            let row = vec![
                irrep.n1().to_string(),
                irrep.n2().to_string(),
                q.q().to_exact_string(),
                value.to_exact_string(),
                opt(|c| c.max_offdiag),
                opt(|c| c.eigenvalue_spread),
                opt(|c| c.formula_deviation),
            ];
            csv_text(&["n1", "n2", "q", "eigenvalue", "max_offdiag", "eigenvalue_spread", "formula_deviation"], [row])?
        }
    };
    emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn expand(irrep: &IrrepArgs, order: usize, out: &OutputArgs) -> CliResult {
    let irrep = irrep.irrep()?;
    let e = casimir_delta_expansion(irrep, order)?;
    let text = match out.format.unwrap_or(Format::Json) {
        Format::Json => json_text(&json!({
            "irrep": irrep,
            "order": order,
            "a2": e.a2.to_string(),
            "a4": e.a4.to_string(),
            "higher": e.higher.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "ratio_contribution": e.ratio_contribution.to_string(),
        }))?,
        Format::Csv => csv_text(
            &["n1", "n2", "a2", "a4", "ratio_contribution"],
            [vec![
                irrep.n1().to_string(),
                irrep.n2().to_string(),
                e.a2.to_string(),
                e.a4.to_string(),
                e.ratio_contribution.to_string(),
            ]],
        )?,
    };
    emit(out, &text)?;
    Ok(ExitCode::SUCCESS)
}
