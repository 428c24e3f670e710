//! Closed form of the renormalized cubic integral and the quantities derived from it.
//!
//! `F(a, b, c, d) = C_+ / D^(1/6)` for `D > 0` and `C_- / (-D)^(1/6)` for `D < 0`, so the
//! value depends on the coefficients only through the exact discriminant. Everything here
//! evaluates `D` in rational arithmetic first and rounds once at the end.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::discriminant::{discriminant_cubic_explicit, DiscriminantResult, DiscriminantSign};
use crate::error::{Error, Result};
use crate::exact::{self, Rational};
use crate::poly::{CubicCoeffs, ExactCubic};
use crate::special_fn;

/// Default relative step for [`expectations_fd_check`].
pub const EXPECTATION_STEP: f64 = 1e-4;
/// Default relative step for [`pde_identity_residuals`].
pub const PDE_STEP: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    ClosedForm,
    Numeric,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", content = "message")]
pub enum Warning {
    IllConditioned(String),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegralResult {
    pub value: f64,
    pub method: Method,
    pub discriminant: DiscriminantResult,
    /// Zero for the closed form.
    pub error_estimate: f64,
    pub warnings: Vec<Warning>,
}

/// `K / |D|^(1/6)` with `K` chosen by the sign of `D`, using `exp(-ln|D| / 6)` so that
/// discriminants outside the `f64` range still give a finite answer.
fn value_from_discriminant(d: &Rational) -> f64 {
    let k = special_fn::constants();
    let constant = if d.is_positive() { k.c_plus } else { k.c_minus };
    constant * (-exact::ln_abs(d) / 6.0).exp()
}

fn reject_divergent(cubic: &ExactCubic, disc: &DiscriminantResult) -> Result<()> {
    if cubic.a.is_zero() && cubic.b.is_zero() {
        return Err(Error::DivergentIntegral(
            "a = b = 0: the tail |cx + d|^(-2/3) is not integrable".into(),
        ));
    }
    if disc.sign == DiscriminantSign::Zero {
        return Err(Error::DivergentIntegral(
            "D = 0: a repeated root makes the integrand non-integrable".into(),
        ));
    }
    Ok(())
}

pub fn closed_form_exact(cubic: &ExactCubic) -> Result<IntegralResult> {
    let disc = discriminant_cubic_explicit(cubic);
    reject_divergent(cubic, &disc)?;
    Ok(IntegralResult {
        value: value_from_discriminant(&disc.value),
        method: Method::ClosedForm,
        discriminant: disc,
        error_estimate: 0.0,
        warnings: Vec::new(),
    })
}

pub fn closed_form_integral(cubic: &CubicCoeffs) -> Result<IntegralResult> {
    closed_form_exact(&cubic.to_exact()?)
}

/// `int dx / (a x^2 + b x + c) = 2 pi / sqrt(4ac - b^2)` for a positive definite quadratic.
pub fn gaussian_analogue(a: f64, b: f64, c: f64) -> Result<f64> {
    let (ea, eb, ec) = (exact::from_f64(a)?, exact::from_f64(b)?, exact::from_f64(c)?);
    if !ea.is_positive() {
        return Err(Error::Domain(format!("leading coefficient must be positive, got {a}")));
    }
    let minus_disc = exact::from_i64(4) * &ea * &ec - &eb * &eb;
    if !minus_disc.is_positive() {
        return Err(Error::Domain(
            "b^2 - 4ac must be negative for the integral to converge".into(),
        ));
    }
    Ok(2.0 * std::f64::consts::PI / exact::to_f64(&minus_disc).sqrt())
}

/// The four renormalized moments `<x^3>, <x^2 y>, <x y^2>, <y^3>`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Expectations<T> {
    pub x3: T,
    pub x2y: T,
    pub xy2: T,
    pub y3: T,
}

pub type ExpectationSet = Expectations<f64>;

impl<T: Clone> Expectations<T> {
    pub fn to_array(&self) -> [T; 4] {
        [self.x3.clone(), self.x2y.clone(), self.xy2.clone(), self.y3.clone()]
    }
}

impl Expectations<Rational> {
    pub fn to_f64(&self) -> ExpectationSet {
        let [x3, x2y, xy2, y3] = self.to_array().map(|v| exact::to_f64(&v));
        Expectations { x3, x2y, xy2, y3 }
    }
}

/// `-d log F / d(a, b, c, d)`, i.e. `(1/6) grad D / D`.
pub fn expectations_exact(cubic: &ExactCubic) -> Result<Expectations<Rational>> {
    let disc = discriminant_cubic_explicit(cubic);
    if disc.sign == DiscriminantSign::Zero {
        return Err(Error::DivergentIntegral(
            "D = 0: expectation values are undefined".into(),
        ));
    }
    let (a, b, c, d) = (&cubic.a, &cubic.b, &cubic.c, &cubic.d);
    let r = exact::from_i64;
    let six_d = r(6) * &disc.value;
    Ok(Expectations {
        x3: (r(18) * b * c * d - r(4) * c * c * c - r(54) * a * d * d) / &six_d,
        x2y: (r(2) * b * c * c + r(18) * a * c * d - r(12) * b * b * d) / &six_d,
        xy2: (r(2) * b * b * c + r(18) * a * b * d - r(12) * a * c * c) / &six_d,
        y3: (r(18) * a * b * c - r(4) * b * b * b - r(54) * a * a * d) / &six_d,
    })
}

pub fn expectations(cubic: &CubicCoeffs) -> Result<ExpectationSet> {
    Ok(expectations_exact(&cubic.to_exact()?)?.to_f64())
}

/// Closed-form values at exact perturbations of a base point, refusing any perturbation
/// that leaves the sign region of `D`.
struct Stencil {
    center: [Rational; 4],
    sign: DiscriminantSign,
    h: Rational,
    step: f64,
    scale: f64,
}

impl Stencil {
    fn new(cubic: &CubicCoeffs, rel_step: f64) -> Result<Self> {
        if !(rel_step.is_finite() && rel_step > 0.0) {
            return Err(Error::InvalidConfig(format!("step must be positive, got {rel_step}")));
        }
        let exact_cubic = cubic.to_exact()?;
        let disc = discriminant_cubic_explicit(&exact_cubic);
        reject_divergent(&exact_cubic, &disc)?;
        let scale = cubic.scale();
        let step = rel_step * scale;
        Ok(Stencil {
            center: exact_cubic.to_array(),
            sign: disc.sign,
            h: exact::from_f64(step)?,
            step,
            scale,
        })
    }

    /// `F` at `center + h * sum(multiplier * e_index)`.
    fn value(&self, moves: &[(usize, i64)]) -> Result<f64> {
        let mut point = self.center.clone();
        for &(i, m) in moves {
            point[i] += exact::from_i64(m) * &self.h;
        }
        let disc = discriminant_cubic_explicit(&ExactCubic::from_array(point));
        if disc.sign != self.sign {
            return Err(Error::StencilCrossesSingularity);
        }
        Ok(value_from_discriminant(&disc.value))
    }

    /// Central second difference `d^2 F / dx_i dx_j` with spacing `k h`.
    fn second(&self, i: usize, j: usize, k: i64) -> Result<f64> {
        let hk = self.step * k as f64;
        if i == j {
            let mid = self.value(&[])?;
            let plus = self.value(&[(i, k)])?;
            let minus = self.value(&[(i, -k)])?;
            return Ok((plus - 2.0 * mid + minus) / (hk * hk));
        }
        let pp = self.value(&[(i, k), (j, k)])?;
        let pm = self.value(&[(i, k), (j, -k)])?;
        let mp = self.value(&[(i, -k), (j, k)])?;
        let mm = self.value(&[(i, -k), (j, -k)])?;
        Ok((pp - pm - mp + mm) / (4.0 * hk * hk))
    }

    /// Richardson combination of the spacings `h` and `2h`, accurate to `O(h^4)`.
    fn second_extrapolated(&self, i: usize, j: usize) -> Result<f64> {
        Ok((4.0 * self.second(i, j, 1)? - self.second(i, j, 2)?) / 3.0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FdCheck {
    /// Absolute step `h = rel_step * scale`.
    pub step: f64,
    pub finite_difference: ExpectationSet,
    pub closed_form: ExpectationSet,
    /// `|fd - closed| / max(|closed|, 1/scale)` per moment.
    pub residuals: [f64; 4],
}

impl FdCheck {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Central differences of `-log F` in each coefficient against the closed-form moments.
///
/// The floor `1/scale` in the residual keeps moments that vanish identically from turning
/// rounding noise into an infinite relative error.
pub fn expectations_fd_check(cubic: &CubicCoeffs, rel_step: f64) -> Result<FdCheck> {
    let stencil = Stencil::new(cubic, rel_step)?;
    let closed_form = expectations(cubic)?;
    let mut fd = [0.0; 4];
    for (i, slot) in fd.iter_mut().enumerate() {
        let plus = stencil.value(&[(i, 1)])?.ln();
        let minus = stencil.value(&[(i, -1)])?.ln();
        *slot = -(plus - minus) / (2.0 * stencil.step);
    }
    let floor = 1.0 / stencil.scale;
    let closed = closed_form.to_array();
    let mut residuals = [0.0; 4];
    for i in 0..4 {
        residuals[i] = (fd[i] - closed[i]).abs() / closed[i].abs().max(floor);
    }
    let [x3, x2y, xy2, y3] = fd;
    Ok(FdCheck {
        step: stencil.step,
        finite_difference: Expectations { x3, x2y, xy2, y3 },
        closed_form,
        residuals,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PdeResiduals {
    pub step: f64,
    pub value: f64,
    /// `(d_a d_d - d_b d_c) F`, `(d_b^2 - d_a d_c) F`, `(d_c^2 - d_b d_d) F`, each scaled by
    /// `scale^2 / |F|`.
    pub residuals: [f64; 3],
}

impl PdeResiduals {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Finite-difference check of the three second-order differential identities satisfied by
/// `F`. Second derivatives are Richardson-extrapolated central differences, so the
/// stencil reaches `2h` from the base point.
pub fn pde_identity_residuals(cubic: &CubicCoeffs, rel_step: f64) -> Result<PdeResiduals> {
    let s = Stencil::new(cubic, rel_step)?;
    let value = s.value(&[])?;
    let d2 = |i, j| s.second_extrapolated(i, j);
    let raw = [
        d2(0, 3)? - d2(1, 2)?,
        d2(1, 1)? - d2(0, 2)?,
        d2(2, 2)? - d2(1, 3)?,
    ];
    let norm = s.scale * s.scale / value.abs();
    Ok(PdeResiduals {
        step: s.step,
        value,
        residuals: raw.map(|r| r.abs() * norm),
    })
}
