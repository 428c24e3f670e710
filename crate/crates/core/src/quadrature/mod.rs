//! Direct quadrature of `int |f(x)|^(-2/n) dx` over the real line.
//!
//! The line is cut at the real roots of `f` (and at its real critical points, where a
//! near-real complex pair produces a sharp peak) into panels whose singularities sit at
//! the endpoints. Beyond `|x| = M` the substitution `x = ±1/u` maps each tail onto
//! `(0, 1/M]`. Each panel is integrated by tanh-sinh quadrature.
//!
//! The integrand is evaluated from a factored form `lead * prod (x - r)^m * rest(x)`, with
//! `rest` monic and free of real roots, so that `|x - r|` is the quadrature offset itself
//! near a singular endpoint rather than a cancelling difference.

mod roots;
pub mod tanh_sinh;

pub use roots::{multiplicity_at, real_roots, root_modulus_bound};

use log::debug;
use serde::Serialize;

use crate::discriminant::{discriminant_cubic_explicit, discriminant_general, DiscriminantSign};
use crate::error::{Error, Result};
use crate::poly::{cubic_roots, quadratic_roots, CubicCoeffs, Polynomial, RealRoot};
use crate::renorm::{IntegralResult, Method, Warning};

/// `|D|` below this multiple of `scale^4` is flagged as ill-conditioned.
pub const ILL_CONDITIONED_DISCRIMINANT: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QuadratureConfig {
    pub rel_tol: f64,
    pub max_levels: usize,
    /// Normalized root separation below which a warning is raised.
    pub singularity_clearance: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            rel_tol: 1e-10,
            max_levels: 12,
            singularity_clearance: 1e-6,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol.is_finite() && self.rel_tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "rel_tol must be positive, got {}",
                self.rel_tol
            )));
        }
        if self.max_levels < 4 {
            return Err(Error::InvalidConfig(format!(
                "max_levels must be at least 4, got {}",
                self.max_levels
            )));
        }
        if !(self.singularity_clearance >= 0.0) {
            return Err(Error::InvalidConfig(
                "singularity_clearance must be non-negative".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PanelKind {
    Finite,
    /// `[M, inf)`, integrated in `u = 1/x`.
    UpperTail,
    /// `(-inf, -M]`, integrated in `u = -1/x`.
    LowerTail,
}

/// A piece of the real line in `x`. Tails have one infinite endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Panel {
    pub lo: f64,
    pub hi: f64,
    pub kind: PanelKind,
    /// Whether the endpoint is a real root of `f`.
    pub lo_singular: bool,
    pub hi_singular: bool,
}

/// `lead * prod (x - r)^m * rest(x)`.
#[derive(Clone, Debug, PartialEq)]
struct Factored {
    lead: f64,
    roots: Vec<RealRoot>,
    rest: Polynomial<f64>,
    /// `u^deg(rest) * rest(1/u)`.
    rest_reversed: Polynomial<f64>,
    degree: usize,
}

impl Factored {
    fn new(lead: f64, roots: Vec<RealRoot>, rest: Polynomial<f64>) -> Self {
        let degree = roots.iter().map(|r| r.multiplicity as usize).sum::<usize>() + rest.degree();
        let rest_reversed = {
            let mut c = rest.coeffs().to_vec();
            c.reverse();
            Polynomial::new(c)
        };
        Factored {
            lead,
            roots,
            rest,
            rest_reversed,
            degree,
        }
    }

    /// `ln |f(anchor + offset)|`, taking `x - r = offset` exactly when `anchor` is the root.
    fn ln_abs(&self, anchor: f64, offset: f64) -> f64 {
        let mut acc = self.lead.abs().ln();
        for r in &self.roots {
            let diff = if anchor == r.value {
                offset
            } else {
                (anchor - r.value) + offset
            };
            acc += r.multiplicity as f64 * diff.abs().ln();
        }
        acc + self.rest.eval_f64(anchor + offset).abs().ln()
    }

    /// `ln |u^deg f(sigma/u)|`, sign `sigma = ±1` selecting the tail.
    fn ln_abs_reversed(&self, sigma: f64, u: f64) -> f64 {
        let mut acc = self.lead.abs().ln();
        for r in &self.roots {
            acc += r.multiplicity as f64 * (1.0 - sigma * r.value * u).abs().ln();
        }
        acc + self.rest_reversed.eval_f64(sigma * u).abs().ln()
    }
}

/// How the real line is cut for integration.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PanelDecomposition {
    /// The `n` in `|f|^(-2/n)`: the degree, or 3 for a quadratic read as a cubic with `a = 0`.
    pub nominal_degree: usize,
    /// Sorted real roots of `f`.
    pub breakpoints: Vec<f64>,
    pub roots: Vec<RealRoot>,
    /// Real critical points used as additional, non-singular cuts.
    pub critical_points: Vec<f64>,
    /// Tails start at `±cutoff`.
    pub cutoff: f64,
    pub panels: Vec<Panel>,
    pub warnings: Vec<Warning>,
    #[serde(skip)]
    factored: Factored,
}

fn nominal_degree(degree: usize) -> usize {
    degree.max(3)
}

/// `|f(x)|^(-2/n)` via `exp(-(2/n) ln|f(x)|)`, with `n = max(deg f, 3)`.
pub fn integrand(f: &Polynomial<f64>, x: f64) -> Result<f64> {
    let v = f.eval_f64(x);
    if v == 0.0 {
        return Err(Error::SingularPoint(x));
    }
    let n = nominal_degree(f.degree()) as f64;
    Ok((-(2.0 / n) * v.abs().ln()).exp())
}

/// Splits off the real roots of `f`, returning them with the monic cofactor.
fn factor(f: &Polynomial<f64>) -> Result<(Vec<RealRoot>, Polynomial<f64>)> {
    let c = f.coeffs();
    let lead = c[0];
    match f.degree() {
        2 => {
            let roots = quadratic_roots(c[0], c[1], c[2])?;
            let rest = if roots.is_empty() {
                Polynomial::new(vec![1.0, c[1] / lead, c[2] / lead])
            } else {
                Polynomial::constant(1.0)
            };
            Ok((roots, rest))
        }
        3 => {
            let cubic = CubicCoeffs::from_array([c[0], c[1], c[2], c[3]]);
            let set = cubic_roots(&cubic)?;
            let rest = if set.count_with_multiplicity() == 1 {
                let q = cubic.factor_out_root(&set.real_roots[0].value)?;
                Polynomial::new(vec![1.0, q.k / q.a, q.l / q.a])
            } else {
                Polynomial::constant(1.0)
            };
            Ok((set.real_roots, rest))
        }
        _ => {
            let roots = real_roots(f);
            let mut order: Vec<&RealRoot> = roots.iter().collect();
            order.sort_by(|x, y| x.value.abs().total_cmp(&y.value.abs()));
            let mut rest = f.scale(&(1.0 / lead));
            for r in order {
                for _ in 0..r.multiplicity {
                    rest = rest.deflate(&r.value).0;
                }
            }
            let rest = rest.scale(&(1.0 / rest.leading()));
            Ok((roots, rest))
        }
    }
}

fn critical_points(f: &Polynomial<f64>) -> Result<Vec<f64>> {
    let d = f.derivative();
    let pts = match d.degree() {
        0 => Vec::new(),
        1 => vec![-d.coeffs()[1] / d.coeffs()[0]],
        2 => quadratic_roots(d.coeffs()[0], d.coeffs()[1], d.coeffs()[2])?
            .into_iter()
            .map(|r| r.value)
            .collect(),
        _ => real_roots(&d).into_iter().map(|r| r.value).collect(),
    };
    Ok(pts)
}

/// Locates the real roots of `f` and cuts the line into panels.
pub fn decompose(f: &Polynomial<f64>, cfg: &QuadratureConfig) -> Result<PanelDecomposition> {
    cfg.validate()?;
    if !f.is_finite() {
        return Err(Error::Domain("non-finite coefficient".into()));
    }
    if f.degree() < 2 {
        return Err(Error::DegreeTooLow {
            degree: f.degree(),
            minimum: 2,
        });
    }
    let n = nominal_degree(f.degree());
    let (roots, rest) = factor(f)?;
    for r in &roots {
        if 2 * r.multiplicity as usize >= n {
            return Err(Error::RepeatedRootDivergence {
                root: r.value,
                multiplicity: r.multiplicity,
            });
        }
    }

    let mut warnings = Vec::new();
    for w in roots.windows(2) {
        let gap = (w[1].value - w[0].value) / w[0].value.abs().max(w[1].value.abs()).max(1.0);
        if gap < cfg.singularity_clearance {
            warnings.push(Warning::IllConditioned(format!(
                "roots {} and {} are closer than the clearance {}",
                w[0].value, w[1].value, cfg.singularity_clearance
            )));
        }
    }

    let critical: Vec<f64> = critical_points(f)?
        .into_iter()
        .filter(|x| roots.iter().all(|r| r.value != *x))
        .collect();
    let cutoff = 1.0 + 2.0 * root_modulus_bound(f);

    let mut cuts: Vec<(f64, bool)> = roots.iter().map(|r| (r.value, true)).collect();
    cuts.extend(critical.iter().map(|&x| (x, false)));
    cuts.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut panels = vec![Panel {
        lo: f64::NEG_INFINITY,
        hi: -cutoff,
        kind: PanelKind::LowerTail,
        lo_singular: false,
        hi_singular: false,
    }];
    let mut prev = (-cutoff, false);
    for &cut in cuts.iter().chain(std::iter::once(&(cutoff, false))) {
        panels.push(Panel {
            lo: prev.0,
            hi: cut.0,
            kind: PanelKind::Finite,
            lo_singular: prev.1,
            hi_singular: cut.1,
        });
        prev = cut;
    }
    panels.push(Panel {
        lo: cutoff,
        hi: f64::INFINITY,
        kind: PanelKind::UpperTail,
        lo_singular: false,
        hi_singular: false,
    });

    debug!(
        "decomposed degree-{} polynomial: {} real roots, {} critical cuts, cutoff {cutoff}",
        f.degree(),
        roots.len(),
        critical.len()
    );
    Ok(PanelDecomposition {
        nominal_degree: n,
        breakpoints: roots.iter().map(|r| r.value).collect(),
        roots: roots.clone(),
        critical_points: critical,
        cutoff,
        panels,
        warnings,
        factored: Factored::new(f.leading(), roots, rest),
    })
}

impl PanelDecomposition {
    /// Integrates every panel to `rel_tol` and sums.
    pub fn integrate(&self, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
        let f = &self.factored;
        let n = self.nominal_degree as f64;
        let power = -2.0 / n;
        // u-power picked up by the tail substitution: u^(2 deg/n - 2)
        let tail_power = 2.0 * f.degree as f64 / n - 2.0;
        let (mut value, mut error) = (0.0, 0.0);
        for p in &self.panels {
            let est = match p.kind {
                PanelKind::Finite => tanh_sinh::integrate(
                    |a, o| (power * f.ln_abs(a, o)).exp(),
                    p.lo,
                    p.hi,
                    cfg.rel_tol,
                    cfg.max_levels,
                ),
                PanelKind::UpperTail | PanelKind::LowerTail => {
                    let sigma = if p.kind == PanelKind::UpperTail { 1.0 } else { -1.0 };
                    tanh_sinh::integrate(
                        |a, o| {
                            let u = a + o;
                            let lu = if tail_power == 0.0 { 0.0 } else { tail_power * u.ln() };
                            (lu + power * f.ln_abs_reversed(sigma, u)).exp()
                        },
                        0.0,
                        1.0 / self.cutoff,
                        cfg.rel_tol,
                        cfg.max_levels,
                    )
                }
            };
            debug!(
                "panel [{}, {}]: {} (err {:e}, {} levels, {} evaluations)",
                p.lo, p.hi, est.value, est.error, est.levels, est.evaluations
            );
            if !est.converged {
                return Err(Error::NoConvergence {
                    levels: est.levels,
                    estimate: est.value,
                    error: est.error,
                });
            }
            value += est.value;
            error += est.error;
        }
        Ok((value, error))
    }
}

/// Numeric value of the renormalized cubic integral.
pub fn integral_numeric(cubic: &CubicCoeffs, cfg: &QuadratureConfig) -> Result<IntegralResult> {
    cfg.validate()?;
    let exact_cubic = cubic.to_exact()?;
    if cubic.a == 0.0 && cubic.b == 0.0 {
        return Err(Error::DivergentIntegral(
            "a = b = 0: the tail |cx + d|^(-2/3) is not integrable".into(),
        ));
    }
    let disc = discriminant_cubic_explicit(&exact_cubic);
    if disc.sign == DiscriminantSign::Zero {
        return Err(Error::DivergentIntegral(
            "D = 0: a repeated root makes the integrand non-integrable".into(),
        ));
    }
    let dec = decompose(&cubic.to_polynomial(), cfg)?;
    let mut warnings = dec.warnings.clone();
    let scale = cubic.scale();
    if disc.to_f64().abs() < ILL_CONDITIONED_DISCRIMINANT * scale.powi(4) {
        warnings.push(Warning::IllConditioned(format!(
            "|D| = {:e} is below {ILL_CONDITIONED_DISCRIMINANT} * scale^4",
            disc.to_f64().abs()
        )));
    }
    let (value, error_estimate) = dec.integrate(cfg)?;
    Ok(IntegralResult {
        value,
        method: Method::Numeric,
        discriminant: disc,
        error_estimate,
        warnings,
    })
}

/// Numeric value of `int |f|^(-2/n)` for a polynomial of degree `n >= 3`.
pub fn integral_numeric_general(
    f: &Polynomial<f64>,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult> {
    cfg.validate()?;
    if f.degree() < 3 {
        return Err(Error::DegreeTooLow {
            degree: f.degree(),
            minimum: 3,
        });
    }
    let disc = discriminant_general(&f.to_exact()?)?;
    let dec = decompose(f, cfg)?;
    let (value, error_estimate) = dec.integrate(cfg)?;
    Ok(IntegralResult {
        value,
        method: Method::Numeric,
        discriminant: disc,
        error_estimate,
        warnings: dec.warnings,
    })
}
