use std::process::Command;

use nongauss_cli::{run, EXIT_DOMAIN, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, Value) {
    let argv = std::iter::once("nongauss").chain(args.iter().copied());
    let inv = run(argv);
    let json: Value = serde_json::from_str(&inv.output)
        .unwrap_or_else(|e| panic!("not JSON ({e}): {}", inv.output));
    (inv.code, json)
}

fn tagged<'a>(v: &'a Value, provenance: &str) -> &'a Value {
    assert_eq!(v["provenance"], provenance, "{v}");
    &v["value"]
}

#[test]
fn integral_check_example() {
    let (code, out) = call(&["integral", "1", "0", "-1", "0", "--check"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out["status"], "ok");
    let closed = tagged(&out["result"]["closed"], "closed-form").as_f64().unwrap();
    let numeric = tagged(&out["result"]["numeric"], "numeric").as_f64().unwrap();
    assert!((closed - 12.6197).abs() < 1e-4);
    assert!((numeric - 12.6197).abs() < 1e-4);
    assert!(tagged(&out["result"]["rel_diff"], "numeric").as_f64().unwrap() <= 1e-8);
    assert_eq!(tagged(&out["result"]["D"], "exact"), "4");
}

#[test]
fn disc_example() {
    let (code, out) = call(&["disc", "1", "2", "3", "5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(tagged(&out["result"]["D"], "exact"), "-367");
    assert_eq!(out["result"]["sign"], "Negative");
    assert_eq!(out["result"]["routes_agree"], true);
}

#[test]
fn disc_accepts_degenerate_cubic_and_higher_degrees() {
    let (code, out) = call(&["disc", "0", "1", "0", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(tagged(&out["result"]["D"], "exact"), "-4");

    let (code, out) = call(&["disc", "--degree", "4", "1", "0", "0", "0", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(tagged(&out["result"]["D"], "exact"), "256");
    assert_eq!(out["result"]["routes_agree"], true);

    let (code, out) = call(&["disc", "0", "1", "0", "0", "1"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert_eq!(out["error_kind"], "DegenerateLeadingCoefficient");

    let (code, _) = call(&["disc", "--degree", "5", "1", "0", "1"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn exact_rationals_round_trip() {
    let (code, out) = call(&["disc", "1/2", "-1/3", "0.25", "7"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out["inputs"]["coefficients"], serde_json::json!(["1/2", "-1/3", "1/4", "7"]));
    let d = tagged(&out["result"]["D"], "exact").as_str().unwrap().to_string();
    // feeding the echoed strings back reproduces the same exact discriminant
    let echoed: Vec<String> = out["inputs"]["coefficients"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    let mut args = vec!["disc"];
    args.extend(echoed.iter().map(String::as_str));
    let (_, again) = call(&args);
    assert_eq!(tagged(&again["result"]["D"], "exact").as_str().unwrap(), d);
}

#[test]
fn repeated_root_is_domain_error() {
    let (code, out) = call(&["integral", "1", "-3", "3", "-1"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert_eq!(out["status"], "error");
    assert_eq!(out["error_kind"], "DivergentIntegral");
}

#[test]
fn numeric_and_general_degree() {
    let (code, out) = call(&["integral", "--numeric", "1", "0", "0", "1"]);
    assert_eq!(code, EXIT_OK);
    let v = tagged(&out["result"]["value"], "numeric").as_f64().unwrap();
    assert!((v - 5.299_916_250_856_35).abs() < 1e-9);

    let (code, out) = call(&["integral", "--degree", "4", "1", "0", "0", "0", "1"]);
    assert_eq!(code, EXIT_OK);
    let v = tagged(&out["result"]["value"], "numeric").as_f64().unwrap();
    assert!((v - 3.708_149_354_602_744).abs() < 1e-9);

    let (code, out) = call(&["integral", "--degree", "4", "--check", "1", "0", "0", "0", "1"]);
    assert_eq!(code, EXIT_USAGE, "{out}");
}

#[test]
fn gauss_examples() {
    let (code, out) = call(&["gauss", "1", "0", "1"]);
    assert_eq!(code, EXIT_OK);
    let v = tagged(&out["result"]["value"], "closed-form").as_f64().unwrap();
    assert!((v - std::f64::consts::PI).abs() <= 1e-12 * std::f64::consts::PI);
    let (code, out) = call(&["gauss", "1", "2", "1"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert_eq!(out["error_kind"], "DomainError");
}

#[test]
fn expect_exact_moments() {
    let (code, out) = call(&["expect", "1", "0", "-1", "0", "--fd-check"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(tagged(&out["result"]["exact"]["x3"], "exact"), "1/6");
    assert_eq!(tagged(&out["result"]["exact"]["xy2"], "exact"), "-1/2");
    assert_eq!(out["result"]["fd_check"]["passed"], true);
}

#[test]
fn verify_and_beta_check() {
    let (code, out) = call(&["verify", "1", "2", "3", "5"]);
    assert_eq!(code, EXIT_OK);
    for key in ["ad_minus_bc", "bb_minus_ac", "cc_minus_bd"] {
        let r = tagged(&out["result"]["residuals"][key], "numeric").as_f64().unwrap();
        assert!(r <= 1e-5, "{key}: {r}");
    }
    let (code, out) = call(&["beta-check"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out["result"]["all_passed"], true);
    let relation = out["result"]["identities"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["identity"] == "BetaConstantRelation")
        .unwrap();
    assert!(tagged(&relation["residual"], "numeric").as_f64().unwrap() <= 1e-12);
}

#[test]
fn usage_errors() {
    for args in [
        &["integral", "1", "2", "3"][..],
        &["bogus"],
        &["integral", "1", "0", "-1", "0", "--rel-tol", "-1"],
        &["integral", "1", "0", "-1", "0", "--max-levels", "2"],
        &["expect", "1", "x", "0", "1"],
        &["integral", "--numeric", "--check", "1", "0", "0", "1"],
    ] {
        let (code, out) = call(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}: {out}");
        assert_eq!(out["status"], "error");
        assert!(out["message"].as_str().unwrap().contains("usage:"), "{out}");
    }
}

#[test]
fn stencil_error_is_domain() {
    let (code, out) = call(&["verify", "1", "0", "-3", "1.999999"]);
    assert_eq!(code, EXIT_DOMAIN);
    assert_eq!(out["error_kind"], "StencilCrossesSingularity");
}

#[test]
fn every_numeric_leaf_is_tagged() {
    fn walk(v: &Value, path: &str, untagged: &mut Vec<String>) {
        match v {
            Value::Object(m) if m.contains_key("provenance") => {}
            Value::Object(m) => {
                for (k, inner) in m {
                    // configuration echoes, not results
                    if matches!(k.as_str(), "bound" | "tolerance" | "step" | "argument") {
                        continue;
                    }
                    walk(inner, &format!("{path}.{k}"), untagged);
                }
            }
            Value::Array(items) => {
                for (i, inner) in items.iter().enumerate() {
                    walk(inner, &format!("{path}.{i}"), untagged);
                }
            }
            Value::Number(_) => untagged.push(path.to_string()),
            _ => {}
        }
    }
    for args in [
        &["integral", "1", "0", "-1", "0", "--check"][..],
        &["integral", "1", "0", "-1", "0"],
        &["disc", "1", "2", "3", "5"],
        &["gauss", "2", "2", "1"],
        &["expect", "1", "2", "3", "5", "--fd-check"],
        &["verify", "0", "1", "0", "1"],
        &["beta-check"],
    ] {
        let (_, out) = call(args);
        let mut untagged = Vec::new();
        walk(&out["result"], "result", &mut untagged);
        assert!(untagged.is_empty(), "{args:?}: {untagged:?}");
    }
}

#[test]
fn check_mode_never_ok_beyond_tolerance() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..60 {
        let c: Vec<String> = (0..4).map(|_| format!("{}", rng.gen_range(-2.0..2.0))).collect();
        let tol = format!("{:e}", 10f64.powf(rng.gen_range(-12.0..-1.0)));
        let mut args = vec!["integral", "--check", "--rel-tol", tol.as_str(), "--max-levels", "6"];
        args.extend(c.iter().map(String::as_str));
        let (code, out) = call(&args);
        if out["status"] == "ok" {
            assert_eq!(code, EXIT_OK);
            let diff = out["result"]["rel_diff"]["value"].as_f64().unwrap();
            assert!(diff <= 1e-6, "{args:?}: {diff}");
        } else {
            assert_ne!(code, EXIT_OK);
            if out["error_kind"] == "CheckFailed" {
                assert_eq!(code, EXIT_NUMERICAL);
            }
        }
    }
}

#[test]
fn plain_output_and_binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_nongauss");
    let out = Command::new(bin).args(["--plain", "gauss", "1", "0", "4"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[closed-form]"), "{text}");
    assert!(text.contains("1.5707963267948966"), "{text}");

    let out = Command::new(bin).args(["integral", "1", "-3", "3", "-1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_DOMAIN));
    let out = Command::new(bin).args(["disc"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    let out = Command::new(bin).args(["integral", "-1/3", "2", "0", "--check", "1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
}
