//! Command-line front end: construct, inspect and check quasi-Trefftz bases.
//!
//! All data travels as JSON files (see the library's `io` module for the
//! document shapes). Results go to the output file or standard output;
//! diagnostics go to standard error, controlled by the `QT_LOG` environment
//! variable (`off`, `info` or `debug`). Exit codes separate failure causes:
//! 1 for malformed or out-of-range input, 2 for an operator whose nominal
//! order degenerates at the expansion center, 3 for a failed internal
//! self-check after solving, 4 for a basis that fails verification.

use clap::{Args, Parser, Subcommand};
use qtrefftz::multiindex::dim_poly;
use qtrefftz::oracle::{verify_quasi_trefftz, VerifyReport};
use qtrefftz::{
    io, particular_solution, quasi_trefftz_basis, select_pivot, Complex64, Error, GradedPoly,
    OperatorSpec, QTBasis, Rational, Scalar, DEFAULT_REL_TOL,
};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qtrefftz",
    version,
    about = "Quasi-Trefftz polynomial bases for linear differential operators"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Coefficient arithmetic selection; exact rationals unless `--float` asks
/// for complex double precision.
#[derive(Args)]
struct ArithmeticFlags {
    /// Use exact rational arithmetic (the default)
    #[arg(long, conflicts_with = "float")]
    exact: bool,
    /// Use complex double-precision arithmetic
    #[arg(long)]
    float: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a quasi-Trefftz basis for an operator
    Basis {
        /// Operator JSON file
        #[arg(short = 'i', long)]
        input: PathBuf,
        /// Destination for the basis JSON (standard output when omitted)
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        arithmetic: ArithmeticFlags,
    },
    /// Print the dimensions of the full, image and quasi-Trefftz spaces
    Dim {
        /// Operator JSON file
        #[arg(short = 'i', long)]
        input: PathBuf,
    },
    /// Find a polynomial whose truncated image equals a right-hand side
    Solve {
        /// Operator JSON file
        #[arg(short = 'i', long)]
        input: PathBuf,
        /// Right-hand-side polynomial JSON file (degree ≤ p − γ)
        #[arg(short = 'f', long)]
        rhs: PathBuf,
        /// Destination for the solution JSON (standard output when omitted)
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        arithmetic: ArithmeticFlags,
    },
    /// Apply the truncated operator to a polynomial
    Apply {
        /// Operator JSON file
        #[arg(short = 'i', long)]
        input: PathBuf,
        /// Polynomial JSON file (degree ≤ p)
        #[arg(short = 'P', long)]
        poly: PathBuf,
        /// Destination for the image JSON (standard output when omitted)
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        arithmetic: ArithmeticFlags,
    },
    /// Check a basis file against the kernel condition
    Verify {
        /// Operator JSON file
        #[arg(short = 'i', long)]
        input: PathBuf,
        /// Basis JSON file
        #[arg(short = 'b', long)]
        basis: PathBuf,
        /// Relative residual tolerance for floating-point checks
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        arithmetic: ArithmeticFlags,
    },
}

/// A failure bucketed by exit code.
enum Failure {
    /// Exit 1: unreadable, unparsable or out-of-range input.
    Data(String),
    /// Exit 2: the operator's nominal order vanishes at the center.
    Degenerate(String),
    /// Exit 3: the computed solution failed its own image check.
    SelfCheck(String),
    /// Exit 4: the basis failed verification.
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Data(_) => 1,
            Failure::Degenerate(_) => 2,
            Failure::SelfCheck(_) => 3,
            Failure::Verification(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Data(m)
            | Failure::Degenerate(m)
            | Failure::SelfCheck(m)
            | Failure::Verification(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::DegenerateOrder { .. } => Failure::Degenerate(format!(
                "{e}; declare the operator with that order to proceed"
            )),
            _ => Failure::Data(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("QT_LOG", "off"))
        .format_timestamp(None)
        .init();
    // flag mistakes are plain bad input (exit 1); clap's default exit code
    // for them would collide with the degenerate-order code 2
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = u8::from(e.use_stderr());
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Basis {
            input,
            output,
            arithmetic,
        } => {
            if arithmetic.float {
                cmd_basis::<Complex64>(&input, output.as_deref())
            } else {
                cmd_basis::<Rational>(&input, output.as_deref())
            }
        }
        Command::Dim { input } => cmd_dim(&input),
        Command::Solve {
            input,
            rhs,
            output,
            arithmetic,
        } => {
            if arithmetic.float {
                cmd_solve::<Complex64>(&input, &rhs, output.as_deref())
            } else {
                cmd_solve::<Rational>(&input, &rhs, output.as_deref())
            }
        }
        Command::Apply {
            input,
            poly,
            output,
            arithmetic,
        } => {
            if arithmetic.float {
                cmd_apply::<Complex64>(&input, &poly, output.as_deref())
            } else {
                cmd_apply::<Rational>(&input, &poly, output.as_deref())
            }
        }
        Command::Verify {
            input,
            basis,
            tol,
            arithmetic,
        } => {
            if arithmetic.float {
                cmd_verify::<Complex64>(&input, &basis, tol)
            } else {
                cmd_verify::<Rational>(&input, &basis, tol)
            }
        }
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Data(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, content: &str) -> Result<(), Failure> {
    std::fs::write(path, content)
        .map_err(|e| Failure::Data(format!("cannot write {}: {e}", path.display())))
}

fn load_operator<S: Scalar>(path: &Path) -> Result<OperatorSpec<S>, Failure> {
    let op = io::operator_from_json(&read_file(path)?)?;
    log::info!(
        "operator: {} variables, order {}, degree {}",
        op.dim(),
        op.order(),
        op.degree()
    );
    Ok(op)
}

fn load_poly<S: Scalar>(path: &Path, op: &OperatorSpec<S>) -> Result<GradedPoly<S>, Failure> {
    let poly: GradedPoly<S> = io::poly_from_json(&read_file(path)?)?;
    if poly.dim() != op.dim() {
        return Err(Failure::Data(format!(
            "polynomial in {} has dimension {}, the operator has {}",
            path.display(),
            poly.dim(),
            op.dim()
        )));
    }
    if poly.center() != op.center() {
        return Err(Failure::Data(format!(
            "polynomial in {} is centered at {:?}, the operator at {:?}",
            path.display(),
            poly.center(),
            op.center()
        )));
    }
    Ok(poly)
}

/// Writes to the file when given, standard output otherwise. The `summary`
/// line goes to standard output in the first case and to the log in the
/// second, keeping standard output single-purpose.
fn emit(output: Option<&Path>, json: &str, summary: &str) -> Result<(), Failure> {
    match output {
        Some(path) => {
            write_file(path, json)?;
            println!("{summary}");
        }
        None => {
            println!("{json}");
            log::info!("{summary}");
        }
    }
    Ok(())
}

fn cmd_basis<S: Scalar>(input: &Path, output: Option<&Path>) -> Result<(), Failure> {
    let op = load_operator::<S>(input)?;
    let basis = quasi_trefftz_basis(&op)?;
    let basis = QTBasis::new(op, prune_all(basis.elements()), prune_all(basis.seeds()));
    let n = basis.len();
    emit(
        output,
        &io::basis_to_json(&basis),
        &format!("{n} basis elements"),
    )
}

fn prune_all<S: Scalar>(polys: &[GradedPoly<S>]) -> Vec<GradedPoly<S>> {
    polys
        .iter()
        .map(|e| e.normalized(DEFAULT_REL_TOL))
        .collect()
}

fn cmd_dim(input: &Path) -> Result<(), Failure> {
    // dimensions depend only on the shape, so any scalar instantiation works
    let op = load_operator::<Rational>(input)?;
    let full = dim_poly(op.dim(), op.degree());
    let image = dim_poly(op.dim(), op.image_degree());
    println!("dim P_{} = {full}", op.degree());
    println!("dim P_{} = {image}", op.image_degree());
    println!("dim QT_{} = {}", op.degree(), full - image);
    Ok(())
}

fn cmd_solve<S: Scalar>(input: &Path, rhs: &Path, output: Option<&Path>) -> Result<(), Failure> {
    let op = load_operator::<S>(input)?;
    let f = load_poly(rhs, &op)?;
    let pivot = select_pivot(&op.principal_part()?);
    let solution = particular_solution(&op, &pivot, &f)?;

    // the image of the solution must reproduce the right-hand side
    let image = op.apply_quasi_trefftz(&solution)?;
    let defect = image.sub(&f);
    let ok = if S::EXACT {
        defect.is_zero()
    } else {
        let scale = f.max_coeff_magnitude();
        let err = defect.max_coeff_magnitude();
        if scale > 0.0 {
            err / scale <= 1e-10
        } else {
            err <= 1e-10
        }
    };
    if !ok {
        return Err(Failure::SelfCheck(format!(
            "solution image deviates from the right-hand side by {:e}",
            defect.max_coeff_magnitude()
        )));
    }

    let solution = solution.normalized(DEFAULT_REL_TOL);
    emit(
        output,
        &io::poly_to_json(&solution),
        &format!("solution with {} terms", solution.num_terms()),
    )
}

fn cmd_apply<S: Scalar>(input: &Path, poly: &Path, output: Option<&Path>) -> Result<(), Failure> {
    let op = load_operator::<S>(input)?;
    let poly = load_poly(poly, &op)?;
    let image = op.apply_quasi_trefftz(&poly)?.normalized(DEFAULT_REL_TOL);
    emit(
        output,
        &io::poly_to_json(&image),
        &format!("image with {} terms", image.num_terms()),
    )
}

/// Verification summary printed by `verify`: element count against the
/// expected dimension, plus one residual report per element.
#[derive(Serialize)]
struct VerifySummary {
    count: usize,
    expected: usize,
    count_ok: bool,
    all_pass: bool,
    reports: Vec<VerifyReport>,
}

fn cmd_verify<S: Scalar>(input: &Path, basis: &Path, tol: f64) -> Result<(), Failure> {
    let op = load_operator::<S>(input)?;
    let doc: QTBasis<S> = io::basis_from_json(&read_file(basis)?)?;
    if doc.operator().dim() != op.dim() {
        return Err(Failure::Data(format!(
            "basis file is for a {}-variable operator, the input has {}",
            doc.operator().dim(),
            op.dim()
        )));
    }
    let mut reports = Vec::with_capacity(doc.len());
    for element in doc.elements() {
        reports.push(verify_quasi_trefftz(&op, element, tol)?);
    }
    let expected = qtrefftz::expected_basis_len(&op);
    let count = reports.len();
    let count_ok = count == expected;
    let residuals_ok = reports.iter().all(|r| r.pass);
    let summary = VerifySummary {
        count,
        expected,
        count_ok,
        all_pass: count_ok && residuals_ok,
        reports,
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&summary).expect("summary serialization cannot fail")
    );
    if summary.all_pass {
        Ok(())
    } else if !count_ok {
        Err(Failure::Verification(format!(
            "basis has {count} elements, expected {expected}"
        )))
    } else {
        let worst = summary
            .reports
            .iter()
            .map(|r| r.residual)
            .fold(0.0_f64, f64::max);
        Err(Failure::Verification(format!(
            "kernel condition violated; worst relative residual {worst:e}"
        )))
    }
}
