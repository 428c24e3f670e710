//! Gamma and Beta functions and the two constants of the renormalized cubic integral.
//!
//! The Gamma kernel is Godfrey's 15-term Lanczos series (`g = 607/128`), evaluated for
//! arguments `>= 1` and carried down to `(0, 1)` by the recurrence `Gamma(x) = Gamma(x+1)/x`.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};

const LANCZOS_G: f64 = 607.0 / 128.0;

const LANCZOS_COEFFS: [f64; 15] = [
    0.999_999_999_999_997_091_82,
    57.156_235_665_862_923_517,
    -59.597_960_355_475_491_248,
    14.136_097_974_741_747_174,
    -0.491_913_816_097_620_199_78,
    0.339_946_499_848_118_886_99e-4,
    0.465_236_289_270_485_756_65e-4,
    -0.983_744_753_048_795_646_77e-4,
    0.158_088_703_224_912_488_84e-3,
    -0.210_264_441_724_104_883_19e-3,
    0.217_439_618_115_212_643_20e-3,
    -0.164_318_106_536_763_890_22e-3,
    0.844_182_239_838_527_432_93e-4,
    -0.261_908_384_015_814_086_70e-4,
    0.368_991_826_595_316_227_04e-5,
];

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_741_78;

/// Series part of the Lanczos approximation at `z = x - 1`.
fn lanczos_sum(z: f64) -> f64 {
    LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .fold(LANCZOS_COEFFS[0], |acc, (k, &c)| acc + c / (z + (k + 1) as f64))
}

fn check_domain(x: f64) -> Result<()> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::Domain(format!("Gamma requires x > 0, got {x}")));
    }
    Ok(())
}

/// `ln Gamma(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> Result<f64> {
    check_domain(x)?;
    if x < 1.0 {
        return Ok(ln_gamma_unchecked(x + 1.0) - x.ln());
    }
    Ok(ln_gamma_unchecked(x))
}

fn ln_gamma_unchecked(x: f64) -> f64 {
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (z + 0.5) * t.ln() - t + lanczos_sum(z).ln()
}

/// `Gamma(x)` for `x > 0`; overflows to `inf` past `x ~ 171.6`.
pub fn gamma(x: f64) -> Result<f64> {
    check_domain(x)?;
    if x < 1.0 {
        return Ok(gamma_unchecked(x + 1.0) / x);
    }
    Ok(gamma_unchecked(x))
}

fn gamma_unchecked(x: f64) -> f64 {
    let z = x - 1.0;
    let t = z + LANCZOS_G + 0.5;
    // t^(z + 1/2) is split in two halves so it does not overflow before e^-t is applied.
    let half_power = t.powf(0.5 * (z + 0.5));
    (2.0 * PI).sqrt() * half_power * (-t).exp() * half_power * lanczos_sum(z)
}

/// `B(p, q) = Gamma(p) Gamma(q) / Gamma(p + q)`, evaluated in log space.
pub fn beta(p: f64, q: f64) -> Result<f64> {
    let lp = ln_gamma(p)?;
    let lq = ln_gamma(q)?;
    Ok((lp + lq - ln_gamma(p + q)?).exp())
}

/// `C_- = 2^(1/3) B(1/2, 1/6)` and `C_+ = 3 B(1/3, 1/3)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BetaConstants {
    pub c_minus: f64,
    pub c_plus: f64,
}

/// The constants, computed once from the Gamma kernel.
pub fn constants() -> BetaConstants {
    static CONSTANTS: OnceLock<BetaConstants> = OnceLock::new();
    *CONSTANTS.get_or_init(|| BetaConstants {
        c_minus: 2f64.cbrt() * beta(0.5, 1.0 / 6.0).expect("positive arguments"),
        c_plus: 3.0 * beta(1.0 / 3.0, 1.0 / 3.0).expect("positive arguments"),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Identity {
    /// `Gamma(x) Gamma(1 - x) = pi / sin(pi x)`
    Reflection,
    /// `Gamma(x/2) Gamma((x+1)/2) = 2^(1-x) Gamma(1/2) Gamma(x)`
    LegendreDuplication,
    /// `sqrt(3) B(1/3, 1/3) = 2^(1/3) B(1/2, 1/6)`
    BetaConstantRelation,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IdentityResidual {
    pub identity: Identity,
    pub argument: Option<f64>,
    pub residual: f64,
    pub bound: f64,
}

impl IdentityResidual {
    pub fn passed(&self) -> bool {
        self.residual <= self.bound
    }
}

pub const IDENTITY_BOUND: f64 = 1e-11;
pub const CONSTANT_RELATION_BOUND: f64 = 1e-12;

fn relative(lhs: f64, rhs: f64) -> f64 {
    (lhs - rhs).abs() / rhs.abs()
}

/// Relative residuals of the reflection formula on a grid in `(0, 1)`, the Legendre
/// duplication formula on a grid in `(0, 10]`, and the Beta-constant relation.
pub fn identity_suite() -> Vec<IdentityResidual> {
    let g = |x: f64| gamma(x).expect("grid points are positive");
    let mut out = Vec::new();

    for i in 1..40 {
        let x = i as f64 / 40.0;
        out.push(IdentityResidual {
            identity: Identity::Reflection,
            argument: Some(x),
            residual: relative(g(x) * g(1.0 - x), PI / (PI * x).sin()),
            bound: IDENTITY_BOUND,
        });
    }

    let mut legendre_grid: Vec<f64> = (1..=50).map(|i| i as f64 / 5.0).collect();
    legendre_grid.push(2.0 / 3.0);
    for x in legendre_grid {
        let lhs = g(x / 2.0) * g((x + 1.0) / 2.0);
        let rhs = 2f64.powf(1.0 - x) * g(0.5) * g(x);
        out.push(IdentityResidual {
            identity: Identity::LegendreDuplication,
            argument: Some(x),
            residual: relative(lhs, rhs),
            bound: IDENTITY_BOUND,
        });
    }

    let k = constants();
    let b13 = beta(1.0 / 3.0, 1.0 / 3.0).expect("positive arguments");
    out.push(IdentityResidual {
        identity: Identity::BetaConstantRelation,
        argument: None,
        residual: (3f64.sqrt() * b13 - k.c_minus).abs() / k.c_minus,
        bound: CONSTANT_RELATION_BOUND,
    });
    out
}
