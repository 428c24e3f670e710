//! Acceptance suite. Runs every criterion at its stated tolerance and prints one line each.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use nongauss_cli::run;
use nongauss_core::discriminant::{
    discriminant_cubic_explicit, discriminant_general, discriminant_quartic_explicit,
    discriminant_quintic_explicit, key_lemma_check, resolvent_data, resultant,
    vandermonde_delta_sq, DiscriminantSign,
};
use nongauss_core::exact::{self, Rational};
use nongauss_core::poly::{Cubic, CubicCoeffs, Polynomial};
use nongauss_core::quadrature::{
    integral_numeric, integral_numeric_general, tanh_sinh, QuadratureConfig,
};
use nongauss_core::renorm::{
    closed_form_integral, expectations_exact, expectations_fd_check, pde_identity_residuals,
    EXPECTATION_STEP, PDE_STEP,
};
use nongauss_core::special_fn::{beta, constants, identity_suite, Identity};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// 30-digit references from an arbitrary-precision evaluation of the Beta function.
const C_MINUS_REF: f64 = 9.179_724_222_343_157_249_479_165_033_853;
const C_PLUS_REF: f64 = 15.899_748_752_569_049_615_823_205_496_84;
const HALF_BETA_QUARTER_REF: f64 = 3.708_149_354_602_743_836_867_700_694_39;
const QUINTIC_REF: f64 = 4.249_200_599_218_035_640_946_754_089_104;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn rel(x: f64, y: f64) -> f64 {
    (x - y).abs() / y.abs()
}

/// Random cubic with `|D| >= min_ratio * scale^4` and the requested sign of `D`.
fn sample_cubic(
    rng: &mut ChaCha8Rng,
    sign: Option<DiscriminantSign>,
    min_ratio: f64,
    zero_a: bool,
    zero_d: bool,
) -> CubicCoeffs {
    loop {
        let mut c: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-1.0..1.0));
        if zero_a {
            c[0] = 0.0;
        }
        if zero_d {
            c[3] = 0.0;
        }
        let cubic = Cubic::from_array(c);
        let Ok(closed) = closed_form_integral(&cubic) else { continue };
        let d = &closed.discriminant;
        if sign.is_some_and(|s| s != d.sign) {
            continue;
        }
        if d.to_f64().abs() >= min_ratio * cubic.scale().powi(4) {
            return cubic;
        }
    }
}

fn fundamental_formula(sign: DiscriminantSign, fixed: &[CubicCoeffs], seed: u64) -> Outcome {
    let start = Instant::now();
    let cfg = QuadratureConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases: Vec<CubicCoeffs> = fixed.to_vec();
    for i in 0..100 {
        cases.push(sample_cubic(&mut rng, Some(sign), 1e-3, i % 10 == 0, i % 10 == 5));
    }
    let k = constants();
    let mut worst: f64 = 0.0;
    let mut failures = 0;
    for c in &cases {
        let d = discriminant_cubic_explicit(&c.to_exact().unwrap());
        let expected = match d.sign {
            DiscriminantSign::Positive => k.c_plus / d.to_f64().powf(1.0 / 6.0),
            _ => k.c_minus / (-d.to_f64()).powf(1.0 / 6.0),
        };
        match integral_numeric(c, &cfg) {
            Ok(r) => worst = worst.max(rel(r.value, expected)),
            Err(e) => {
                failures += 1;
                eprintln!("  {c:?}: {e}");
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures == 0 && worst <= 1e-8 && elapsed < Duration::from_secs(5),
        format!(
            "{} cubics, worst |numeric - closed| / closed = {worst:.2e} (tol 1e-8), {failures} failures, {:.2} s (limit 5 s)",
            cases.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_1() -> Outcome {
    fundamental_formula(DiscriminantSign::Negative, &[Cubic::new(1.0, 0.0, 0.0, 1.0)], 101)
}

fn criterion_2() -> Outcome {
    let fixed = [
        Cubic::new(1.0, 0.0, -1.0, 0.0),
        Cubic::new(0.0, 1.0, 0.0, -1.0),
        Cubic::new(2.0, -1.0, -3.0, 0.0),
    ];
    let d = discriminant_cubic_explicit(&fixed[1].to_exact().unwrap());
    let mut o = fundamental_formula(DiscriminantSign::Positive, &fixed, 202);
    o.passed &= exact::format(&d.value) == "4";
    o.detail += &format!("; D(0,1,0,-1) = {}", exact::format(&d.value));
    o
}

fn criterion_3() -> Outcome {
    let k = constants();
    let relation = identity_suite()
        .into_iter()
        .find(|r| r.identity == Identity::BetaConstantRelation)
        .expect("suite includes the constant relation");
    let direct = (3f64.sqrt() * beta(1.0 / 3.0, 1.0 / 3.0).unwrap()
        - 2f64.cbrt() * beta(0.5, 1.0 / 6.0).unwrap())
    .abs()
        / k.c_minus;
    let (em, ep) = (rel(k.c_minus, C_MINUS_REF), rel(k.c_plus, C_PLUS_REF));
    outcome(
        relation.residual <= 1e-12 && direct <= 1e-12 && em <= 1e-12 && ep <= 1e-12,
        format!(
            "relation residual {direct:.2e} (tol 1e-12); C- = {:.15} ({em:.1e}), C+ = {:.15} ({ep:.1e}) vs references (tol 1e-12)",
            k.c_minus, k.c_plus
        ),
    )
}

fn criterion_4() -> Outcome {
    let inv = run(["nongauss", "gauss", "1", "0", "1"]);
    let json: serde_json::Value = serde_json::from_str(&inv.output).expect("JSON output");
    let value = json["result"]["value"]["value"].as_f64().unwrap_or(f64::NAN);
    let cli_err = rel(value, PI);
    // int_R dx/(1+x^2): [-1, 1] directly, |x| > 1 through u = 1/x on (0, 1]
    let cfg = QuadratureConfig::default();
    let center = tanh_sinh::integrate(|a, o| 1.0 / (1.0 + (a + o) * (a + o)), -1.0, 1.0, cfg.rel_tol, cfg.max_levels);
    let tail = tanh_sinh::integrate(|a, o| 1.0 / (1.0 + (a + o) * (a + o)), 0.0, 1.0, cfg.rel_tol, cfg.max_levels);
    let quad = center.value + 2.0 * tail.value;
    let quad_err = rel(quad, value);
    outcome(
        inv.code == 0 && cli_err <= 1e-12 && quad_err <= 1e-10,
        format!("gauss 1 0 1 = {value} (|x - pi|/pi = {cli_err:.1e}, tol 1e-12); quadrature {quad} ({quad_err:.1e}, tol 1e-10)"),
    )
}

fn monic_from_roots(a: &Rational, roots: &[Rational; 3]) -> Polynomial<Rational> {
    roots.iter().fold(Polynomial::constant(a.clone()), |p, r| {
        p.mul(&Polynomial::linear_factor(r.clone()))
    })
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let q = exact::from_i64;
    let mut mismatches = 0usize;
    let mut cubic_cases = 0usize;
    while cubic_cases < 10_000 {
        let c: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-50..=50));
        if c[0] == 0 {
            continue;
        }
        cubic_cases += 1;
        let cubic = Cubic::from_array(c.map(q));
        let poly = Polynomial::new(c.map(q).to_vec());
        let explicit = discriminant_cubic_explicit(&cubic).value;
        let general = discriminant_general(&poly).unwrap().value;
        let via_resultant = -resultant(&poly).unwrap() / q(c[0]);
        let via_resolvent = resolvent_data(&cubic).discriminant();
        if !(general == explicit && via_resultant == explicit && via_resolvent == explicit) {
            mismatches += 1;
        }
    }
    // a^4 Delta^2 needs the roots: build cubics from rational roots
    for _ in 0..10_000 {
        let mut rational = || Rational::new(rng.gen_range(-30i64..=30).into(), rng.gen_range(1i64..=9).into());
        let a = loop {
            let a = rational();
            if !a.is_zero() {
                break a;
            }
        };
        let roots = [rational(), rational(), rational()];
        let poly = monic_from_roots(&a, &roots);
        let c = poly.coeffs();
        let cubic = Cubic::new(c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone());
        let explicit = discriminant_cubic_explicit(&cubic).value;
        let ok = explicit == vandermonde_delta_sq(&roots, &a)
            && discriminant_general(&poly).unwrap().value == explicit
            && -resultant(&poly).unwrap() / &a == explicit
            && resolvent_data(&cubic).discriminant() == explicit;
        if !ok {
            mismatches += 1;
        }
    }
    let mut expansion_cases = 0usize;
    while expansion_cases < 2_000 {
        let c: [i64; 6] = std::array::from_fn(|_| rng.gen_range(-10..=10));
        if c[0] == 0 {
            continue;
        }
        expansion_cases += 1;
        let ok = if expansion_cases <= 1_000 {
            let c4: [Rational; 5] = std::array::from_fn(|i| q(c[i]));
            discriminant_general(&Polynomial::new(c4.to_vec())).unwrap().value
                == discriminant_quartic_explicit(&c4)
        } else {
            let c5 = c.map(q);
            discriminant_general(&Polynomial::new(c5.to_vec())).unwrap().value
                == discriminant_quintic_explicit(&c5)
        };
        if !ok {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && elapsed < Duration::from_secs(30),
        format!(
            "10^4 integer cubics + 10^4 rational-root cubics, 10^3 quartics, 10^3 quintics: {mismatches} mismatches, {:.1} s (limit 30 s)",
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut nonzero = 0;
    for _ in 0..1_000 {
        let mut r = || Rational::new(rng.gen_range(-1000i64..=1000).into(), rng.gen_range(1i64..=97).into());
        let (a, alpha, k, l) = (r(), r(), r(), r());
        if !key_lemma_check(&a, &alpha, &k, &l).is_zero() {
            nonzero += 1;
        }
    }
    outcome(nonzero == 0, format!("1000 rational (a, alpha, k, l): {nonzero} non-zero residuals"))
}

/// The 50 well-conditioned points shared by criteria 7 and 8: three worked examples plus
/// random cubics with `|D| >= scale^4`.
fn fd_points() -> Vec<CubicCoeffs> {
    let mut rng = ChaCha8Rng::seed_from_u64(707);
    let mut pts = vec![
        Cubic::new(1.0, 2.0, 3.0, 5.0),
        Cubic::new(1.0, 0.0, -1.0, 0.0),
        Cubic::new(0.0, 1.0, 0.0, 1.0),
    ];
    while pts.len() < 50 {
        pts.push(sample_cubic(&mut rng, None, 1.0, false, false));
    }
    pts
}

fn criterion_7() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut errors = 0;
    for c in fd_points() {
        match pde_identity_residuals(&c, PDE_STEP) {
            Ok(r) => worst = worst.max(r.max_residual()),
            Err(e) => {
                errors += 1;
                eprintln!("  {c:?}: {e}");
            }
        }
    }
    outcome(
        errors == 0 && worst <= 1e-5,
        format!("50 points, worst normalized residual {worst:.2e} at h = 1e-3 scale (tol 1e-5)"),
    )
}

fn criterion_8() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut errors = 0;
    for c in fd_points() {
        match expectations_fd_check(&c, EXPECTATION_STEP) {
            Ok(r) => worst = worst.max(r.max_residual()),
            Err(e) => {
                errors += 1;
                eprintln!("  {c:?}: {e}");
            }
        }
    }
    let q = |s: &str| exact::parse(s).unwrap();
    let x3 = expectations_exact(&Cubic::new(q("1"), q("0"), q("-1"), q("0"))).unwrap().x3;
    outcome(
        errors == 0 && worst <= 1e-5 && x3 == q("1/6"),
        format!(
            "50 points, worst relative residual {worst:.2e} (tol 1e-5); <x^3>(1,0,-1,0) = {} exactly",
            exact::format(&x3)
        ),
    )
}

fn criterion_9() -> Outcome {
    let cfg = QuadratureConfig::default();
    let quartic = Polynomial::new(vec![1.0, 0.0, 0.0, 0.0, 1.0]);
    let q4 = integral_numeric_general(&quartic, &cfg).map(|r| r.value);
    let quintic = Polynomial::new(vec![1.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
    let coarse = integral_numeric_general(&quintic, &QuadratureConfig { rel_tol: 1e-9, ..cfg });
    let fine = integral_numeric_general(&quintic, &QuadratureConfig { rel_tol: 1e-12, ..cfg });
    match (q4, coarse, fine) {
        (Ok(v4), Ok(c), Ok(f)) => {
            let e4 = rel(v4, HALF_BETA_QUARTER_REF);
            let e5 = rel(c.value, f.value);
            let e5_ref = rel(f.value, QUINTIC_REF);
            outcome(
                e4 <= 1e-8 && e5 <= 1e-8 && e5_ref <= 1e-8,
                format!(
                    "x^4+1: {v4} vs B(1/4,1/4)/2 ({e4:.1e}, tol 1e-8); x^5+1: {} at rel_tol 1e-9 vs 1e-12 ({e5:.1e}, tol 1e-8), vs reference {e5_ref:.1e}",
                    f.value
                ),
            )
        }
        (a, b, c) => outcome(false, format!("quadrature failed: {a:?} {b:?} {c:?}")),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("fundamental formula, D < 0", criterion_1),
        ("fundamental formula, D > 0", criterion_2),
        ("Beta constant relation and constants", criterion_3),
        ("Gaussian analogue", criterion_4),
        ("discriminant exactness", criterion_5),
        ("key lemma", criterion_6),
        ("second-order identities", criterion_7),
        ("renormalized expectations", criterion_8),
        ("general degree", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "{tag} [{}] {name}: {} ({:.2} s)",
            i + 1,
            o.detail,
            start.elapsed().as_secs_f64()
        );
        if !o.passed {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
