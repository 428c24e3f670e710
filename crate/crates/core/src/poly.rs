//! Dense univariate polynomials over `f64` or exact rationals, plus cubic root analysis.
//!
//! Coefficients are stored leading-first: `coeffs[0]` multiplies `x^n`. The same order is
//! used by the JSON form (an array of coefficient strings) so that a polynomial and its
//! Sylvester matrix read the same way.

use std::fmt;

use num_traits::{FromPrimitive, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{self, Rational};

/// Scalar type a [`Polynomial`] can be built over.
pub trait Coefficient: Clone + fmt::Debug + PartialOrd + Signed + FromPrimitive {
    /// Whether arithmetic in this type is exact.
    const EXACT: bool;

    fn to_coeff_string(&self) -> String;
    /// Nearest `f64`, for diagnostics and tolerances.
    fn approx(&self) -> f64;
    fn parse_coeff(s: &str) -> Result<Self>;

    /// Whether `residual = f(alpha)` is small enough for `alpha` to count as a root.
    ///
    /// Exact types demand zero; floating types use a scale-aware absolute tolerance.
    fn residual_tolerance(max_coeff: &Self, alpha: &Self, degree: usize) -> Option<f64>;
}

impl Coefficient for f64 {
    const EXACT: bool = false;

    fn to_coeff_string(&self) -> String {
        format!("{self}")
    }

    fn approx(&self) -> f64 {
        *self
    }

    fn parse_coeff(s: &str) -> Result<Self> {
        if s.contains('/') {
            return Ok(exact::to_f64(&exact::parse(s)?));
        }
        s.trim().parse::<f64>().map_err(|e| Error::Parse {
            input: s.to_string(),
            reason: e.to_string(),
        })
    }

    fn residual_tolerance(max_coeff: &f64, alpha: &f64, degree: usize) -> Option<f64> {
        Some(1e-10 * (1.0 + max_coeff * alpha.abs().max(1.0).powi(degree as i32)))
    }
}

impl Coefficient for Rational {
    const EXACT: bool = true;

    fn to_coeff_string(&self) -> String {
        exact::format(self)
    }

    fn approx(&self) -> f64 {
        exact::to_f64(self)
    }

    fn parse_coeff(s: &str) -> Result<Self> {
        exact::parse(s)
    }

    fn residual_tolerance(_: &Rational, _: &Rational, _: usize) -> Option<f64> {
        None
    }
}

/// Dense polynomial, leading coefficient first, with no stored leading zeros.
///
/// The zero polynomial has no stored coefficients and reports degree 0.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> Polynomial<T> {
    /// Builds a polynomial from leading-first coefficients, dropping leading zeros.
    pub fn new(coeffs: Vec<T>) -> Self {
        let first = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(coeffs.len());
        Polynomial {
            coeffs: coeffs[first..].to_vec(),
        }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `x - root`.
    pub fn linear_factor(root: T) -> Self {
        Self::new(vec![T::one(), -root])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> T {
        self.coeffs.first().cloned().unwrap_or_else(T::zero)
    }

    pub fn constant_term(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn is_exact(&self) -> bool {
        T::EXACT
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        let n = self.degree();
        let coeffs = self
            .coeffs
            .iter()
            .take(n)
            .enumerate()
            .map(|(i, c)| c.clone() * T::from_usize(n - i).expect("small integer"))
            .collect();
        Self::new(coeffs)
    }

    /// Returns `q` with `q(y) = p(y + t)` via repeated synthetic division.
    pub fn taylor_shift(&self, t: &T) -> Self {
        let mut c = self.coeffs.clone();
        let n = self.degree();
        for i in 0..n {
            for j in 1..=(n - i) {
                let carry = t.clone() * c[j - 1].clone();
                c[j] = c[j].clone() + carry;
            }
        }
        Self::new(c)
    }

    /// The reciprocal polynomial `x^n p(1/x)`.
    pub fn reverse(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Synthetic division by `x - root`: returns the quotient and the remainder `p(root)`.
    pub fn deflate(&self, root: &T) -> (Self, T) {
        if self.coeffs.is_empty() {
            return (Self::zero(), T::zero());
        }
        let mut quotient = Vec::with_capacity(self.coeffs.len());
        let mut acc = T::zero();
        for c in &self.coeffs {
            acc = acc * root.clone() + c.clone();
            quotient.push(acc.clone());
        }
        let remainder = quotient.pop().unwrap_or_else(T::zero);
        (Self::new(quotient), remainder)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs_coeff(&self) -> T {
        self.coeffs
            .iter()
            .map(|c| c.abs())
            .fold(T::zero(), |m, c| if c > m { c } else { m })
    }

    /// Coefficients padded with leading zeros to exactly `len` entries.
    pub fn padded(&self, len: usize) -> Vec<T> {
        let mut out = vec![T::zero(); len.saturating_sub(self.coeffs.len())];
        out.extend(self.coeffs.iter().cloned());
        out
    }
}

impl Polynomial<f64> {
    pub fn to_exact(&self) -> Result<Polynomial<Rational>> {
        Ok(Polynomial::new(
            self.coeffs
                .iter()
                .map(|&c| exact::from_f64(c))
                .collect::<Result<_>>()?,
        ))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
    }

    /// `sum |c_i| |x|^(n-i)`, the natural scale of a Horner evaluation at `x`.
    pub fn eval_magnitude(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs.iter().fold(0.0, |acc, &c| acc * ax + c.abs())
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }
}

impl Polynomial<Rational> {
    pub fn to_f64(&self) -> Polynomial<f64> {
        Polynomial::new(self.coeffs.iter().map(exact::to_f64).collect())
    }
}

impl<T: Coefficient> Serialize for Polynomial<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(|c| c.to_coeff_string()).collect();
        strings.serialize(serializer)
    }
}

impl<'de, T: Coefficient> Deserialize<'de> for Polynomial<T> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        let coeffs = strings
            .iter()
            .map(|s| T::parse_coeff(s))
            .collect::<Result<Vec<T>>>()
            .map_err(D::Error::custom)?;
        Ok(Polynomial::new(coeffs))
    }
}

/// The coefficients `(a, b, c, d)` of `a x^3 + b x^2 + c x + d`.
///
/// `a = 0` is allowed; the quadratic then keeps its place as a degenerate cubic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cubic<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

pub type CubicCoeffs = Cubic<f64>;
pub type ExactCubic = Cubic<Rational>;

impl<T: Coefficient> Cubic<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Cubic { a, b, c, d }
    }

    pub fn from_array([a, b, c, d]: [T; 4]) -> Self {
        Cubic { a, b, c, d }
    }

    pub fn to_array(&self) -> [T; 4] {
        [self.a.clone(), self.b.clone(), self.c.clone(), self.d.clone()]
    }

    pub fn to_polynomial(&self) -> Polynomial<T> {
        Polynomial::new(self.to_array().to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.to_array().iter().all(|c| c.is_zero())
    }

    /// `(d, c, b, a)`: the substitution `x -> 1/x`.
    pub fn reversed(&self) -> Self {
        Cubic::new(self.d.clone(), self.c.clone(), self.b.clone(), self.a.clone())
    }

    pub fn negated(&self) -> Self {
        Cubic::new(-self.a.clone(), -self.b.clone(), -self.c.clone(), -self.d.clone())
    }

    pub fn scaled(&self, s: &T) -> Self {
        let [a, b, c, d] = self.to_array().map(|x| x * s.clone());
        Cubic::new(a, b, c, d)
    }

    /// Coefficients of `f(x + t)`.
    pub fn shifted(&self, t: &T) -> Self {
        let shifted = self.to_polynomial().taylor_shift(t).padded(4);
        Cubic::new(
            shifted[0].clone(),
            shifted[1].clone(),
            shifted[2].clone(),
            shifted[3].clone(),
        )
    }

    pub fn eval(&self, x: &T) -> T {
        ((self.a.clone() * x.clone() + self.b.clone()) * x.clone() + self.c.clone()) * x.clone()
            + self.d.clone()
    }

    /// Largest coefficient magnitude.
    pub fn scale(&self) -> T {
        self.to_polynomial().max_abs_coeff()
    }

    /// Splits off the linear factor `x - alpha`: `f = (x - alpha)(a x^2 + k x + l)`.
    pub fn factor_out_root(&self, alpha: &T) -> Result<CubicFactorization<T>> {
        let residual = self.eval(alpha);
        let tolerance = T::residual_tolerance(&self.scale(), alpha, 3);
        let rejected = match tolerance {
            Some(tol) => residual.approx().abs() > tol,
            None => !residual.is_zero(),
        };
        if rejected {
            return Err(Error::NotARoot {
                alpha: alpha.approx(),
                residual: residual.approx().abs(),
                tolerance: tolerance.unwrap_or(0.0),
            });
        }
        let k = self.b.clone() + self.a.clone() * alpha.clone();
        // Backward deflation leaves the smaller mismatch once |alpha| > 1.
        let l = if alpha.abs() > T::one() {
            -self.d.clone() / alpha.clone()
        } else {
            self.c.clone() + k.clone() * alpha.clone()
        };
        Ok(CubicFactorization {
            alpha: alpha.clone(),
            a: self.a.clone(),
            k,
            l,
        })
    }
}

impl CubicCoeffs {
    pub fn to_exact(&self) -> Result<ExactCubic> {
        let [a, b, c, d] = self.to_array();
        Ok(Cubic::new(
            exact::from_f64(a)?,
            exact::from_f64(b)?,
            exact::from_f64(c)?,
            exact::from_f64(d)?,
        ))
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }
}

impl ExactCubic {
    pub fn to_f64(&self) -> CubicCoeffs {
        let [a, b, c, d] = self.to_array().map(|x| exact::to_f64(&x));
        Cubic::new(a, b, c, d)
    }
}

/// `a x^3 + b x^2 + c x + d = (x - alpha)(a x^2 + k x + l)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicFactorization<T> {
    pub alpha: T,
    pub a: T,
    pub k: T,
    pub l: T,
}

impl<T: Coefficient> CubicFactorization<T> {
    /// Rebuilds `(b, c, d) = (k - a alpha, l - k alpha, -l alpha)`.
    pub fn reconstruct(&self) -> Cubic<T> {
        let (a, alpha, k, l) = (&self.a, &self.alpha, &self.k, &self.l);
        Cubic::new(
            a.clone(),
            k.clone() - a.clone() * alpha.clone(),
            l.clone() - k.clone() * alpha.clone(),
            -(l.clone() * alpha.clone()),
        )
    }

    pub fn quadratic(&self) -> Polynomial<T> {
        Polynomial::new(vec![self.a.clone(), self.k.clone(), self.l.clone()])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RootClass {
    ThreeDistinctReal,
    OneRealOneComplexPair,
    RepeatedRoot,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RealRoot {
    pub value: f64,
    pub multiplicity: u32,
}

/// Real roots of a cubic in ascending order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSet {
    pub real_roots: Vec<RealRoot>,
    pub classification: RootClass,
}

impl RootSet {
    /// Real roots counted with multiplicity.
    pub fn count_with_multiplicity(&self) -> u32 {
        self.real_roots.iter().map(|r| r.multiplicity).sum()
    }
}

/// All real roots of a cubic with `a != 0`.
///
/// Classification comes from the exact sign of the discriminant of the given `f64`
/// coefficients. Roots are located by the trigonometric form (three real roots) or by
/// Cardano's formula (one real root) from exactly computed depressed-cubic data, then
/// polished by Newton steps. Repeated roots are rational functions of the coefficients
/// and are returned from exact arithmetic.
pub fn cubic_roots(cubic: &CubicCoeffs) -> Result<RootSet> {
    if !cubic.is_finite() {
        return Err(Error::Domain("non-finite cubic coefficient".into()));
    }
    if cubic.a == 0.0 {
        return Err(Error::DegenerateLeadingCoefficient);
    }
    let ex = cubic.to_exact()?;
    let disc = crate::discriminant::discriminant_cubic_explicit(&ex);
    let (a, b, c, d) = (&ex.a, &ex.b, &ex.c, &ex.d);
    let r = |n: i64| exact::from_i64(n);

    let poly = cubic.to_polynomial();
    let mut roots = match disc.sign {
        crate::discriminant::DiscriminantSign::Zero => {
            let big_a = b * b - r(3) * a * c;
            if big_a.is_zero() {
                let triple = -b / (r(3) * a);
                vec![RealRoot {
                    value: exact::to_f64(&triple),
                    multiplicity: 3,
                }]
            } else {
                let double = (r(9) * a * d - b * c) / (r(2) * &big_a);
                let simple = (r(4) * a * b * c - r(9) * a * a * d - b * b * b) / (a * &big_a);
                vec![
                    RealRoot {
                        value: exact::to_f64(&double),
                        multiplicity: 2,
                    },
                    RealRoot {
                        value: exact::to_f64(&simple),
                        multiplicity: 1,
                    },
                ]
            }
        }
        sign => {
            // x = y - b/(3a), y^3 + p y + q = 0
            let p = (r(3) * a * c - b * b) / (r(3) * a * a);
            let q = (r(2) * b * b * b - r(9) * a * b * c + r(27) * a * a * d)
                / (r(27) * a * a * a);
            let shift = exact::to_f64(&(b / (r(3) * a)));
            let (pf, qf) = (exact::to_f64(&p), exact::to_f64(&q));
            let located: Vec<f64> = if sign == crate::discriminant::DiscriminantSign::Positive {
                let m = 2.0 * (-pf / 3.0).sqrt();
                let arg = (3.0 * qf / (pf * m)).clamp(-1.0, 1.0);
                let theta = arg.acos() / 3.0;
                (0..3)
                    .map(|k| {
                        m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos() - shift
                    })
                    .collect()
            } else {
                // q^2/4 + p^3/27 = -D / (108 a^4) > 0
                let s = exact::to_f64(&(-disc.value.clone() / (r(108) * a * a * a * a))).sqrt();
                let big = -qf.signum() * (qf.abs() / 2.0 + s).cbrt();
                let big = if qf == 0.0 { s.cbrt() } else { big };
                let other = if big != 0.0 { -pf / (3.0 * big) } else { 0.0 };
                vec![big + other - shift]
            };
            located
                .into_iter()
                .map(|x| RealRoot {
                    value: newton_polish(&poly, x),
                    multiplicity: 1,
                })
                .collect()
        }
    };
    roots.sort_by(|x, y| x.value.total_cmp(&y.value));

    let classification = match disc.sign {
        crate::discriminant::DiscriminantSign::Positive => RootClass::ThreeDistinctReal,
        crate::discriminant::DiscriminantSign::Negative => RootClass::OneRealOneComplexPair,
        crate::discriminant::DiscriminantSign::Zero => RootClass::RepeatedRoot,
    };
    Ok(RootSet {
        real_roots: roots,
        classification,
    })
}

/// Newton iteration that only accepts steps reducing `|f|`.
pub(crate) fn newton_polish(poly: &Polynomial<f64>, start: f64) -> f64 {
    let deriv = poly.derivative();
    let mut x = start;
    let mut fx = poly.eval_f64(x).abs();
    for _ in 0..16 {
        if fx == 0.0 {
            break;
        }
        let slope = deriv.eval_f64(x);
        if slope == 0.0 || !slope.is_finite() {
            break;
        }
        let next = x - poly.eval_f64(x) / slope;
        let f_next = poly.eval_f64(next).abs();
        if !(f_next < fx) {
            break;
        }
        x = next;
        fx = f_next;
    }
    x
}

/// Real roots of `b x^2 + c x + d` (`b != 0`), ascending, with multiplicity.
pub(crate) fn quadratic_roots(b: f64, c: f64, d: f64) -> Result<Vec<RealRoot>> {
    let ex = |x: f64| exact::from_f64(x);
    let (eb, ec, ed) = (ex(b)?, ex(c)?, ex(d)?);
    let disc = &ec * &ec - exact::from_i64(4) * &eb * &ed;
    let poly = Polynomial::new(vec![b, c, d]);
    if disc.is_zero() {
        let root = -ec / (exact::from_i64(2) * eb);
        return Ok(vec![RealRoot {
            value: exact::to_f64(&root),
            multiplicity: 2,
        }]);
    }
    if disc.is_negative() {
        return Ok(Vec::new());
    }
    let s = exact::to_f64(&disc).sqrt();
    let q = -0.5 * (c + c.signum() * s);
    let q = if c == 0.0 { -0.5 * s } else { q };
    let mut roots = vec![q / b, d / q];
    for r in roots.iter_mut() {
        *r = newton_polish(&poly, *r);
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots
        .into_iter()
        .map(|value| RealRoot {
            value,
            multiplicity: 1,
        })
        .collect())
}
