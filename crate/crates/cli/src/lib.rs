//! `nongauss` command line: argument grammar, dispatch and exit codes.
//!
//! Every invocation produces one [`OutputRecord`], printed as JSON or, with `--plain`, as
//! an aligned key/value table.
//!
//! Exit codes: 0 ok, 1 usage error, 2 domain error, 3 numerical failure or failed check.

pub mod commands;
pub mod output;

use clap::{Parser, Subcommand};
use nongauss_core::quadrature::QuadratureConfig;
use nongauss_core::renorm::{EXPECTATION_STEP, PDE_STEP};
use nongauss_core::ErrorClass;
use serde_json::{json, Value};

use commands::{CommandError, IntegralArgs};
use output::{OutputRecord, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "nongauss",
    version,
    about = "Renormalized non-Gaussian cubic integrals",
    allow_negative_numbers = true,
    after_help = "Coefficients are leading-first and may be integers, decimals or p/q rationals."
)]
struct Cli {
    /// Print an aligned key/value table instead of JSON.
    #[arg(long, global = true)]
    plain: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact discriminant of a polynomial.
    Disc {
        #[arg(long)]
        degree: Option<usize>,
        #[arg(required = true)]
        coeffs: Vec<String>,
    },
    /// Renormalized integral of |f|^(-2/n).
    Integral {
        /// Evaluate by quadrature instead of the closed form.
        #[arg(long)]
        numeric: bool,
        /// Evaluate both ways and compare.
        #[arg(long, conflicts_with = "numeric")]
        check: bool,
        #[arg(long, default_value_t = QuadratureConfig::default().rel_tol)]
        rel_tol: f64,
        #[arg(long, default_value_t = QuadratureConfig::default().max_levels)]
        max_levels: usize,
        /// Polynomial degree; anything other than 3 is evaluated numerically.
        #[arg(long)]
        degree: Option<usize>,
        #[arg(required = true)]
        coeffs: Vec<String>,
    },
    /// int dx / (a x^2 + b x + c).
    Gauss {
        #[arg(required = true)]
        coeffs: Vec<String>,
    },
    /// Renormalized moments <x^3>, <x^2 y>, <x y^2>, <y^3>.
    Expect {
        /// Compare against central differences of -log F.
        #[arg(long)]
        fd_check: bool,
        /// Step relative to the largest coefficient.
        #[arg(long, default_value_t = EXPECTATION_STEP)]
        step: f64,
        #[arg(required = true)]
        coeffs: Vec<String>,
    },
    /// Finite-difference residuals of the second-order identities satisfied by F.
    Verify {
        /// Step relative to the largest coefficient.
        #[arg(long, default_value_t = PDE_STEP)]
        step: f64,
        #[arg(required = true)]
        coeffs: Vec<String>,
    },
    /// Gamma/Beta identity residuals and the two integral constants.
    BetaCheck,
}

impl Command {
    /// Input echo used when a handler fails before producing its own.
    fn raw_inputs(&self) -> Value {
        match self {
            Command::Disc { coeffs, .. }
            | Command::Integral { coeffs, .. }
            | Command::Gauss { coeffs }
            | Command::Expect { coeffs, .. }
            | Command::Verify { coeffs, .. } => json!({ "coefficients": coeffs }),
            Command::BetaCheck => json!({}),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Disc { .. } => "disc",
            Command::Integral { .. } => "integral",
            Command::Gauss { .. } => "gauss",
            Command::Expect { .. } => "expect",
            Command::Verify { .. } => "verify",
            Command::BetaCheck => "beta-check",
        }
    }
}

/// Printed with every usage error.
pub const GRAMMAR: &str = "\
usage:
  nongauss [--plain] disc <coeffs...> [--degree n]
  nongauss [--plain] integral <a b c d> [--numeric | --check] [--rel-tol t] [--max-levels k]
  nongauss [--plain] integral --degree n <coeffs...> [--rel-tol t] [--max-levels k]
  nongauss [--plain] gauss <a b c>
  nongauss [--plain] expect <a b c d> [--fd-check] [--step h]
  nongauss [--plain] verify <a b c d> [--step h]
  nongauss [--plain] beta-check";

/// Options whose next token is their value.
const VALUE_OPTIONS: &[&str] = &["--degree", "--rel-tol", "--max-levels", "--step"];

fn looks_numeric(token: &str) -> bool {
    let body = token.strip_prefix(['-', '+']).unwrap_or(token);
    body.starts_with(|c: char| c.is_ascii_digit() || c == '.')
        && body.chars().all(|c| c.is_ascii_digit() || "./eE+-".contains(c))
}

/// Moves coefficient tokens behind a `--` so that values such as `-1/3` are never read as
/// flags, while flags after the coefficients keep working.
fn normalize_argv(argv: Vec<String>) -> Vec<String> {
    let mut out = Vec::with_capacity(argv.len() + 1);
    let mut positional = Vec::new();
    let mut tokens = argv.into_iter();
    if let Some(program) = tokens.next() {
        out.push(program);
    }
    let mut expecting_value = false;
    while let Some(tok) = tokens.next() {
        if expecting_value {
            out.push(tok);
            expecting_value = false;
        } else if tok == "--" {
            positional.extend(tokens.by_ref());
        } else if VALUE_OPTIONS.contains(&tok.as_str()) {
            out.push(tok);
            expecting_value = true;
        } else if looks_numeric(&tok) {
            positional.push(tok);
        } else {
            out.push(tok);
        }
    }
    if !positional.is_empty() {
        out.push("--".into());
        out.extend(positional);
    }
    out
}

/// What the binary prints and the code it exits with.
#[derive(Debug, Clone, PartialEq)]
pub struct Invocation {
    pub code: i32,
    pub output: String,
}

fn usage_record(command: &str, message: String) -> OutputRecord {
    OutputRecord {
        command: command.to_string(),
        inputs: Value::Null,
        result: Value::Null,
        warnings: Vec::new(),
        status: Status::Error,
        error_kind: Some("UsageError".into()),
        message: Some(message),
    }
}

/// Parses `argv` (program name first), runs the command and renders its record.
pub fn run<I, S>(argv: I) -> Invocation
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = argv.into_iter().map(Into::into).collect();
    let plain_requested = argv.iter().any(|a| a == "--plain");
    let attempted = argv
        .iter()
        .skip(1)
        .find(|a| !a.starts_with('-'))
        .cloned()
        .unwrap_or_default();
    let cli = match Cli::try_parse_from(normalize_argv(argv)) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Invocation {
                    code: EXIT_OK,
                    output: e.render().to_string(),
                };
            }
            let record = usage_record(&attempted, format!("{}\n{GRAMMAR}", e.render()));
            return render(record, plain_requested, EXIT_USAGE);
        }
    };

    let name = cli.command.name();
    let handled = match &cli.command {
        Command::Disc { degree, coeffs } => commands::disc(coeffs, *degree),
        Command::Integral {
            numeric,
            check,
            rel_tol,
            max_levels,
            degree,
            coeffs,
        } => commands::integral(IntegralArgs {
            coeffs,
            numeric: *numeric,
            check: *check,
            degree: *degree,
            config: QuadratureConfig {
                rel_tol: *rel_tol,
                max_levels: *max_levels,
                ..QuadratureConfig::default()
            },
        }),
        Command::Gauss { coeffs } => commands::gauss(coeffs),
        Command::Expect {
            fd_check,
            step,
            coeffs,
        } => commands::expect(coeffs, *fd_check, *step),
        Command::Verify { step, coeffs } => commands::verify(coeffs, *step),
        Command::BetaCheck => commands::beta_check(),
    };

    let (outcome, error) = match handled {
        Ok(mut outcome) => {
            let error = outcome.error.take();
            (Some(outcome), error)
        }
        Err(e) => (None, Some(e)),
    };
    let (inputs, result, warnings) = match outcome {
        Some(o) => (
            o.inputs,
            o.result,
            o.warnings.iter().map(|w| json!(w)).collect(),
        ),
        None => (cli.command.raw_inputs(), Value::Null, Vec::new()),
    };
    let (code, error_kind, message) = match error {
        None => (EXIT_OK, None, None),
        Some(CommandError::Usage(m)) => (
            EXIT_USAGE,
            Some("UsageError".to_string()),
            Some(format!("{m}\n\n{GRAMMAR}")),
        ),
        Some(CommandError::Core(e)) => {
            let code = match e.class() {
                ErrorClass::Usage => EXIT_USAGE,
                ErrorClass::Domain => EXIT_DOMAIN,
                ErrorClass::Numerical => EXIT_NUMERICAL,
            };
            let message = if code == EXIT_USAGE {
                format!("{e}\n\n{GRAMMAR}")
            } else {
                e.to_string()
            };
            (code, Some(e.kind().to_string()), Some(message))
        }
        Some(CommandError::CheckFailed { kind, message }) => {
            (EXIT_NUMERICAL, Some(kind.to_string()), Some(message))
        }
    };
    let record = OutputRecord {
        command: name.to_string(),
        inputs,
        result,
        warnings,
        status: if code == EXIT_OK { Status::Ok } else { Status::Error },
        error_kind,
        message,
    };
    render(record, cli.plain, code)
}

fn render(record: OutputRecord, plain: bool, code: i32) -> Invocation {
    let output = if plain {
        record.to_plain()
    } else {
        record.to_json() + "\n"
    };
    Invocation { code, output }
}
