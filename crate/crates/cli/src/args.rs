use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use uqso5::{BasisChoice, Half, IrrepLabel, Scalar};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "uqso5", version, about = "Build and check U_q(so(5)) representations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the dimension of an irrep.
    Dim {
        #[command(flatten)]
        irrep: IrrepArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Export generator matrices as sparse triplets.
    Build {
        #[command(flatten)]
        irrep: IrrepArgs,
        #[arg(long, value_enum)]
        basis: BasisArg,
        #[command(flatten)]
        num: NumericArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check every defining relation and the Casimir operator.
    Verify {
        #[command(flatten)]
        irrep: IrrepArgs,
        #[arg(long, value_enum, required_unless_present = "input")]
        basis: Option<BasisArg>,
        /// Verify a bundle written by `build` instead of building one.
        #[arg(long, conflicts_with_all = ["basis", "n", "n1", "n2"])]
        input: Option<PathBuf>,
        #[command(flatten)]
        num: NumericArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Casimir eigenvalue, and its matrix deviation when a basis is given.
    Casimir {
        #[command(flatten)]
        irrep: IrrepArgs,
        #[arg(long, value_enum)]
        basis: Option<BasisArg>,
        #[command(flatten)]
        num: NumericArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exact coefficients of the eigenvalue in powers of ln q.
    Expand {
        #[command(flatten)]
        irrep: IrrepArgs,
        /// Highest even power of ln q to keep.
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Rescaled eigenvalues for growing n1 and their predicted limit.
    Contract {
        #[arg(long, value_parser = parse_half)]
        n2: Half,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        /// Number of n1 values, starting at n1 = n2.
        #[arg(long, default_value_t = 13)]
        count: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check that classically degenerate irreps split at q != 1.
    Separate {
        /// Pair of irreps as `n1,n2:n1,n2`; repeatable.
        #[arg(long = "pair", value_parser = parse_pair, default_value = "5,4:6,2")]
        pairs: Vec<(IrrepLabel, IrrepLabel)>,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct IrrepArgs {
    #[arg(long, value_parser = parse_half)]
    pub n1: Option<Half>,
    /// Defaults to 0.
    #[arg(long, value_parser = parse_half)]
    pub n2: Option<Half>,
    /// Shorthand for `--n1 N --n2 N`.
    #[arg(long, value_parser = parse_half, conflicts_with_all = ["n1", "n2"])]
    pub n: Option<Half>,
}

impl IrrepArgs {
    pub fn irrep(&self) -> Result<IrrepLabel, CliError> {
        let (n1, n2) = match (self.n, self.n1) {
            (Some(n), _) => (n, n),
            (None, Some(n1)) => (n1, self.n2.unwrap_or(Half::ZERO)),
            (None, None) => return Err(CliError::Usage("give --n1 (and --n2) or --n".into())),
        };
        Ok(IrrepLabel::new(n1, n2)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BasisArg {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
}

impl From<BasisArg> for BasisChoice {
    fn from(b: BasisArg) -> Self {
        match b {
            BasisArg::I => BasisChoice::I,
            BasisArg::II => BasisChoice::II,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Precision {
    Double,
    High,
}

#[derive(Debug, Clone, Args)]
pub struct NumericArgs {
    /// Deformation parameter: a decimal, `exp(x)`, or `1`.
    #[arg(long, default_value = "1")]
    pub q: String,
    #[arg(long, value_enum, default_value_t = Precision::Double)]
    pub precision: Precision,
    /// Significant digits in high precision (at least 50).
    #[arg(long)]
    pub digits: Option<usize>,
    /// Absolute tolerance; defaults to 1e-9 (double) or 1e-30 (high).
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

fn parse_half(s: &str) -> Result<Half, String> {
    s.parse().map_err(|e: uqso5::Error| e.to_string())
}

fn parse_pair(s: &str) -> Result<(IrrepLabel, IrrepLabel), String> {
    let label = |part: &str| -> Result<IrrepLabel, String> {
        let (a, b) = part.split_once(',').ok_or_else(|| format!("`{part}` is not `n1,n2`"))?;
        IrrepLabel::new(parse_half(a)?, parse_half(b)?).map_err(|e| e.to_string())
    };
    let (a, b) = s.split_once(':').ok_or_else(|| format!("`{s}` is not `n1,n2:n1,n2`"))?;
    Ok((label(a)?, label(b)?))
}

/// A numeric deformation parameter as written on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum QSpec {
    Decimal(String),
    Exp(String),
}

impl QSpec {
    pub fn parse(s: &str) -> Result<Self, CliError> {
        let t = s.trim();
        if matches!(t.to_ascii_lowercase().as_str(), "general" | "generic" | "symbolic") {
            return Err(CliError::Unsupported(
                "symbolic q is not supported; matrix elements are evaluated at a numeric q > 0 \
                 (solutions for general (n1, n2) at q != 1 are not available in either basis)"
                    .into(),
            ));
        }
        if let Some(inner) = t.strip_prefix("exp(").and_then(|r| r.strip_suffix(')')) {
            return Ok(QSpec::Exp(inner.trim().to_string()));
        }
        Ok(QSpec::Decimal(t.to_string()))
    }

    pub fn value<S: Scalar>(&self) -> Result<S, CliError> {
        let v = match self {
            QSpec::Decimal(d) => S::parse_decimal(d),
            QSpec::Exp(x) => S::parse_decimal(x).map(|x| x.exp()),
        }
        .map_err(|e| CliError::Usage(format!("invalid --q: {e}")))?;
        if !(v > S::zero()) {
            return Err(CliError::Usage(format!("--q must be positive, got {v}")));
        }
        Ok(v)
    }
}
