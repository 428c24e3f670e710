//! One handler per subcommand. Each returns the `inputs` echo and the `result` payload.

use nongauss_core::discriminant::{
    discriminant_cubic_explicit, discriminant_general, discriminant_quartic_explicit,
    discriminant_quintic_explicit, resultant,
};
use nongauss_core::exact::{self, Rational};
use nongauss_core::poly::{Cubic, ExactCubic, Polynomial};
use nongauss_core::quadrature::{integral_numeric, integral_numeric_general, QuadratureConfig};
use nongauss_core::renorm::{
    closed_form_exact, expectations_exact, expectations_fd_check, gaussian_analogue,
    pde_identity_residuals, IntegralResult, Warning,
};
use nongauss_core::special_fn::{constants, identity_suite};
use nongauss_core::Error;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::output::{closed_form, exact, numeric};

/// `--check` fails when closed form and quadrature differ by more than this.
pub const CHECK_TOLERANCE: f64 = 1e-6;
/// Bound reported alongside finite-difference residuals.
pub const FD_BOUND: f64 = 1e-5;

#[derive(Debug)]
pub enum CommandError {
    Usage(String),
    Core(Error),
    /// The computation finished but a built-in check did not pass.
    CheckFailed { kind: &'static str, message: String },
}

impl From<Error> for CommandError {
    fn from(e: Error) -> Self {
        CommandError::Core(e)
    }
}

/// Result of a handler: payload and warnings, or an error with whatever payload exists.
pub struct Outcome {
    pub inputs: Value,
    pub result: Value,
    pub warnings: Vec<Warning>,
    pub error: Option<CommandError>,
}

impl Outcome {
    fn ok(inputs: Value, result: Value) -> Self {
        Outcome {
            inputs,
            result,
            warnings: Vec::new(),
            error: None,
        }
    }
}

type HandlerResult = std::result::Result<Outcome, CommandError>;

fn parse_coeffs(raw: &[String]) -> std::result::Result<Vec<Rational>, CommandError> {
    raw.iter().map(|s| exact::parse(s).map_err(CommandError::Core)).collect()
}

fn echo(coeffs: &[Rational]) -> Value {
    json!(coeffs.iter().map(exact::format).collect::<Vec<_>>())
}

fn expect_count(coeffs: &[Rational], n: usize, what: &str) -> std::result::Result<(), CommandError> {
    if coeffs.len() != n {
        return Err(CommandError::Usage(format!(
            "{what} takes {n} coefficients, got {}",
            coeffs.len()
        )));
    }
    Ok(())
}

fn check_degree(coeffs: &[Rational], degree: Option<usize>) -> std::result::Result<(), CommandError> {
    match degree {
        Some(n) if coeffs.len() != n + 1 => Err(CommandError::Usage(format!(
            "degree {n} needs {} coefficients, got {}",
            n + 1,
            coeffs.len()
        ))),
        _ => Ok(()),
    }
}

fn cubic_of(c: &[Rational]) -> ExactCubic {
    Cubic::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone())
}

fn integral_payload(r: &IntegralResult) -> Value {
    let value = match r.method {
        nongauss_core::Method::ClosedForm => closed_form(r.value),
        nongauss_core::Method::Numeric => numeric(r.value),
    };
    json!({
        "value": value,
        "method": r.method,
        "D": exact(exact::format(&r.discriminant.value)),
        "sign": r.discriminant.sign,
        "error_estimate": numeric(r.error_estimate),
    })
}

pub fn disc(raw: &[String], degree: Option<usize>) -> HandlerResult {
    let coeffs = parse_coeffs(raw)?;
    check_degree(&coeffs, degree)?;
    let inputs = json!({ "coefficients": echo(&coeffs), "degree": coeffs.len().saturating_sub(1) });

    if coeffs.len() == 4 {
        let d = discriminant_cubic_explicit(&cubic_of(&coeffs));
        let mut result = json!({
            "D": exact(exact::format(&d.value)),
            "sign": d.sign,
            "route": "explicit",
        });
        if !coeffs[0].is_zero() {
            let poly = Polynomial::new(coeffs.clone());
            let general = discriminant_general(&poly)?;
            result["resultant"] = json!(exact(exact::format(&resultant(&poly)?)));
            result["routes_agree"] = json!(general.value == d.value);
        }
        return Ok(Outcome::ok(inputs, result));
    }

    if coeffs.first().is_some_and(|c| c.is_zero()) {
        return Err(Error::DegenerateLeadingCoefficient.into());
    }
    let poly = Polynomial::new(coeffs.clone());
    let d = discriminant_general(&poly)?;
    let mut result = json!({
        "D": exact(exact::format(&d.value)),
        "sign": d.sign,
        "route": "sylvester",
        "resultant": exact(exact::format(&resultant(&poly)?)),
    });
    let explicit = match coeffs.len() {
        5 => Some(discriminant_quartic_explicit(&std::array::from_fn(|i| coeffs[i].clone()))),
        6 => Some(discriminant_quintic_explicit(&std::array::from_fn(|i| coeffs[i].clone()))),
        _ => None,
    };
    if let Some(e) = explicit {
        result["routes_agree"] = json!(e == d.value);
    }
    Ok(Outcome::ok(inputs, result))
}

pub struct IntegralArgs<'a> {
    pub coeffs: &'a [String],
    pub numeric: bool,
    pub check: bool,
    pub degree: Option<usize>,
    pub config: QuadratureConfig,
}

pub fn integral(args: IntegralArgs<'_>) -> HandlerResult {
    let coeffs = parse_coeffs(args.coeffs)?;
    check_degree(&coeffs, args.degree)?;
    let cfg = args.config;
    cfg.validate()?;
    let mode = if args.check {
        "check"
    } else if args.numeric || args.degree.is_some_and(|n| n != 3) {
        "numeric"
    } else {
        "closed-form"
    };
    let inputs = json!({
        "coefficients": echo(&coeffs),
        "degree": coeffs.len().saturating_sub(1),
        "mode": mode,
        "rel_tol": cfg.rel_tol,
        "max_levels": cfg.max_levels,
    });

    if coeffs.len() != 4 || args.degree.is_some_and(|n| n != 3) {
        if args.degree.is_none() {
            return Err(CommandError::Usage(format!(
                "a cubic takes 4 coefficients, got {}; pass --degree n for other degrees",
                coeffs.len()
            )));
        }
        if args.check {
            return Err(CommandError::Usage(
                "--check needs a closed form, which exists only for degree 3".into(),
            ));
        }
        if coeffs[0].is_zero() {
            return Err(Error::DegenerateLeadingCoefficient.into());
        }
        let f = Polynomial::new(coeffs.iter().map(exact::to_f64).collect());
        let r = integral_numeric_general(&f, &cfg)?;
        let mut outcome = Outcome::ok(inputs, integral_payload(&r));
        outcome.warnings = r.warnings;
        return Ok(outcome);
    }

    let cubic = cubic_of(&coeffs);
    if mode == "closed-form" {
        let r = closed_form_exact(&cubic)?;
        return Ok(Outcome::ok(inputs, integral_payload(&r)));
    }
    let r = integral_numeric(&cubic.to_f64(), &cfg)?;
    if mode == "numeric" {
        let mut outcome = Outcome::ok(inputs, integral_payload(&r));
        outcome.warnings = r.warnings;
        return Ok(outcome);
    }

    let closed = closed_form_exact(&cubic)?;
    let rel_diff = (r.value - closed.value).abs() / closed.value;
    let result = json!({
        "closed": closed_form(closed.value),
        "numeric": numeric(r.value),
        "rel_diff": numeric(rel_diff),
        "tolerance": CHECK_TOLERANCE,
        "error_estimate": numeric(r.error_estimate),
        "D": exact(exact::format(&closed.discriminant.value)),
        "sign": closed.discriminant.sign,
    });
    let error = (!(rel_diff <= CHECK_TOLERANCE)).then(|| CommandError::CheckFailed {
        kind: "CheckFailed",
        message: format!("closed form and quadrature differ by {rel_diff:e} > {CHECK_TOLERANCE:e}"),
    });
    Ok(Outcome {
        inputs,
        result,
        warnings: r.warnings,
        error,
    })
}

pub fn gauss(raw: &[String]) -> HandlerResult {
    let coeffs = parse_coeffs(raw)?;
    expect_count(&coeffs, 3, "gauss")?;
    let [a, b, c] = [0, 1, 2].map(|i| exact::to_f64(&coeffs[i]));
    let value = gaussian_analogue(a, b, c)?;
    let d2 = &coeffs[1] * &coeffs[1] - exact::from_i64(4) * &coeffs[0] * &coeffs[2];
    Ok(Outcome::ok(
        json!({ "coefficients": echo(&coeffs) }),
        json!({ "value": closed_form(value), "D": exact(exact::format(&d2)) }),
    ))
}

pub fn expect(raw: &[String], fd_check: bool, step: f64) -> HandlerResult {
    let coeffs = parse_coeffs(raw)?;
    expect_count(&coeffs, 4, "expect")?;
    let cubic = cubic_of(&coeffs);
    let moments = expectations_exact(&cubic)?;
    let approx = moments.to_f64();
    let mut inputs = json!({ "coefficients": echo(&coeffs) });
    let names = ["x3", "x2y", "xy2", "y3"];
    let mut exact_moments = serde_json::Map::new();
    let mut float_moments = serde_json::Map::new();
    for ((name, e), f) in names.iter().zip(moments.to_array()).zip(approx.to_array()) {
        exact_moments.insert(name.to_string(), json!(exact(exact::format(&e))));
        float_moments.insert(name.to_string(), json!(closed_form(f)));
    }
    let mut result = json!({ "exact": exact_moments, "value": float_moments });
    if !fd_check {
        return Ok(Outcome::ok(inputs, result));
    }

    inputs["step"] = json!(step);
    let check = expectations_fd_check(&cubic.to_f64(), step)?;
    let mut fd = serde_json::Map::new();
    let mut residuals = serde_json::Map::new();
    for ((name, v), r) in names.iter().zip(check.finite_difference.to_array()).zip(check.residuals) {
        fd.insert(name.to_string(), json!(numeric(v)));
        residuals.insert(name.to_string(), json!(numeric(r)));
    }
    let passed = check.max_residual() <= FD_BOUND;
    result["fd_check"] = json!({
        "step": check.step,
        "finite_difference": fd,
        "residuals": residuals,
        "bound": FD_BOUND,
        "passed": passed,
    });
    let error = (!passed).then(|| CommandError::CheckFailed {
        kind: "CheckFailed",
        message: format!("finite-difference residual {:e} exceeds {FD_BOUND:e}", check.max_residual()),
    });
    Ok(Outcome {
        inputs,
        result,
        warnings: Vec::new(),
        error,
    })
}

pub fn verify(raw: &[String], step: f64) -> HandlerResult {
    let coeffs = parse_coeffs(raw)?;
    expect_count(&coeffs, 4, "verify")?;
    let r = pde_identity_residuals(&cubic_of(&coeffs).to_f64(), step)?;
    let [ad_bc, bb_ac, cc_bd] = r.residuals;
    let passed = r.max_residual() <= FD_BOUND;
    let result = json!({
        "value": closed_form(r.value),
        "step": r.step,
        "residuals": {
            "ad_minus_bc": numeric(ad_bc),
            "bb_minus_ac": numeric(bb_ac),
            "cc_minus_bd": numeric(cc_bd),
        },
        "bound": FD_BOUND,
        "passed": passed,
    });
    let error = (!passed).then(|| CommandError::CheckFailed {
        kind: "CheckFailed",
        message: format!("identity residual {:e} exceeds {FD_BOUND:e}", r.max_residual()),
    });
    Ok(Outcome {
        inputs: json!({ "coefficients": echo(&coeffs), "step": step }),
        result,
        warnings: Vec::new(),
        error,
    })
}

pub fn beta_check() -> HandlerResult {
    let k = constants();
    let suite = identity_suite();
    let all_passed = suite.iter().all(|r| r.passed());
    let identities: Vec<Value> = suite
        .iter()
        .map(|r| {
            json!({
                "identity": r.identity,
                "argument": r.argument,
                "residual": numeric(r.residual),
                "bound": r.bound,
                "passed": r.passed(),
            })
        })
        .collect();
    let result = json!({
        "constants": {
            "c_minus": closed_form(k.c_minus),
            "c_plus": closed_form(k.c_plus),
        },
        "identities": identities,
        "all_passed": all_passed,
    });
    let error = (!all_passed).then(|| CommandError::CheckFailed {
        kind: "IdentityCheckFailed",
        message: "at least one Gamma/Beta identity exceeds its bound".into(),
    });
    Ok(Outcome {
        inputs: json!({}),
        result,
        warnings: Vec::new(),
        error,
    })
}
