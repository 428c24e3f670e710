//! Exact resultants `R(f, f')` and discriminants.
//!
//! The general route builds the `(2n-1) x (2n-1)` Sylvester matrix of `f` and `f'` and
//! takes its determinant by fraction-free Bareiss elimination over big integers. The
//! closed expansions for degrees 3, 4 and 5 are independent oracles for that route.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, Rational};
use crate::poly::{Coefficient, Cubic, ExactCubic, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DiscriminantSign {
    Positive,
    Negative,
    Zero,
}

impl DiscriminantSign {
    pub fn of(x: &Rational) -> Self {
        if x.is_zero() {
            DiscriminantSign::Zero
        } else if x.is_negative() {
            DiscriminantSign::Negative
        } else {
            DiscriminantSign::Positive
        }
    }
}

/// An exact discriminant together with its sign.
///
/// Serializes the value as a canonical rational string.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiscriminantResult {
    #[serde(serialize_with = "serialize_rational")]
    pub value: Rational,
    pub sign: DiscriminantSign,
}

impl DiscriminantResult {
    pub fn new(value: Rational) -> Self {
        let sign = DiscriminantSign::of(&value);
        DiscriminantResult { value, sign }
    }

    pub fn to_f64(&self) -> f64 {
        exact::to_f64(&self.value)
    }
}

fn serialize_rational<S: serde::Serializer>(
    x: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&exact::format(x))
}

/// The band matrix whose determinant is `R(f, f')`.
///
/// Rows `0..n-1` hold shifted copies of `f`, rows `n-1..2n-1` shifted copies of `f'`.
#[derive(Clone, Debug, PartialEq)]
pub struct SylvesterMatrix {
    pub entries: Vec<Vec<Rational>>,
}

impl SylvesterMatrix {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    /// Determinant by Bareiss elimination after clearing row denominators.
    pub fn determinant(&self) -> Rational {
        let mut scale = BigInt::one();
        let rows: Vec<Vec<BigInt>> = self
            .entries
            .iter()
            .map(|row| {
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                scale *= &lcm;
                row.iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect()
            })
            .collect();
        Rational::new(bareiss_determinant(rows), scale)
    }
}

/// Fraction-free Gaussian elimination; every intermediate division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

pub fn sylvester_matrix(f: &Polynomial<Rational>) -> Result<SylvesterMatrix> {
    let n = f.degree();
    if f.is_zero() || n < 2 {
        return Err(Error::DegreeTooLow {
            degree: n,
            minimum: 2,
        });
    }
    let size = 2 * n - 1;
    let df = f.derivative();
    let mut entries = vec![vec![Rational::zero(); size]; size];
    for r in 0..n - 1 {
        for (j, c) in f.coeffs().iter().enumerate() {
            entries[r][r + j] = c.clone();
        }
    }
    for r in 0..n {
        for (j, c) in df.coeffs().iter().enumerate() {
            entries[n - 1 + r][r + j] = c.clone();
        }
    }
    Ok(SylvesterMatrix { entries })
}

/// `R(f, f')` as the determinant of the Sylvester matrix.
pub fn resultant(f: &Polynomial<Rational>) -> Result<Rational> {
    Ok(sylvester_matrix(f)?.determinant())
}

/// `D = (-1)^(n(n-1)/2) R(f, f') / a0`.
pub fn discriminant_general(f: &Polynomial<Rational>) -> Result<DiscriminantResult> {
    let r = resultant(f)?;
    let n = f.degree();
    let mut d = r / f.leading();
    if (n * (n - 1) / 2) % 2 == 1 {
        d = -d;
    }
    Ok(DiscriminantResult::new(d))
}

/// `D = b^2 c^2 + 18abcd - 4ac^3 - 4b^3 d - 27a^2 d^2`.
///
/// Valid for `a = 0`, where it reduces to `b^2 (c^2 - 4bd)`.
pub fn discriminant_cubic_explicit(cubic: &ExactCubic) -> DiscriminantResult {
    DiscriminantResult::new(cubic_discriminant_value(cubic))
}

pub(crate) fn cubic_discriminant_value<T: Coefficient>(cubic: &Cubic<T>) -> T {
    let Cubic { a, b, c, d } = cubic.clone();
    let k = |n: usize| T::from_usize(n).expect("small integer");
    b.clone() * b.clone() * c.clone() * c.clone()
        + k(18) * a.clone() * b.clone() * c.clone() * d.clone()
        - k(4) * a.clone() * c.clone() * c.clone() * c.clone()
        - k(4) * b.clone() * b.clone() * b.clone() * d.clone()
        - k(27) * a.clone() * a * d.clone() * d
}

/// One monomial of a transcribed discriminant expansion.
#[derive(Clone, Debug, Deserialize)]
pub struct Term {
    pub coefficient: i64,
    pub exponents: Vec<u32>,
}

#[derive(Debug, Deserialize)]
struct TermTables {
    degree_4: Vec<Term>,
    degree_5: Vec<Term>,
}

fn term_tables() -> &'static TermTables {
    static TABLES: OnceLock<TermTables> = OnceLock::new();
    TABLES.get_or_init(|| {
        serde_json::from_str(include_str!("../data/discriminant_terms.json"))
            .expect("bundled discriminant term table is valid JSON")
    })
}

/// Term table of the explicit degree-4 expansion (16 monomials).
pub fn quartic_terms() -> &'static [Term] {
    &term_tables().degree_4
}

/// Term table of the explicit degree-5 expansion (59 monomials).
pub fn quintic_terms() -> &'static [Term] {
    &term_tables().degree_5
}

fn eval_terms(terms: &[Term], coeffs: &[Rational]) -> Rational {
    terms
        .iter()
        .map(|t| {
            t.exponents
                .iter()
                .zip(coeffs)
                .fold(exact::from_i64(t.coefficient), |acc, (&e, c)| {
                    acc * num_traits::pow(c.clone(), e as usize)
                })
        })
        .fold(Rational::zero(), |acc, x| acc + x)
}

pub fn discriminant_quartic_explicit(coeffs: &[Rational; 5]) -> Rational {
    eval_terms(quartic_terms(), coeffs)
}

pub fn discriminant_quintic_explicit(coeffs: &[Rational; 6]) -> Rational {
    eval_terms(quintic_terms(), coeffs)
}

/// `A = b^2 - 3ac`, `B = bc - 9ad`, `C = c^2 - 3bd`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolventData<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: Coefficient> ResolventData<T> {
    /// `-(B^2 - 4AC) / 3`.
    pub fn discriminant(&self) -> T {
        let k = |n: usize| T::from_usize(n).expect("small integer");
        -(self.b.clone() * self.b.clone() - k(4) * self.a.clone() * self.c.clone()) / k(3)
    }
}

pub fn resolvent_data<T: Coefficient>(cubic: &Cubic<T>) -> ResolventData<T> {
    let Cubic { a, b, c, d } = cubic.clone();
    let k = |n: usize| T::from_usize(n).expect("small integer");
    let data = ResolventData {
        a: b.clone() * b.clone() - k(3) * a.clone() * c.clone(),
        b: b.clone() * c.clone() - k(9) * a * d.clone(),
        c: c.clone() * c - k(3) * b * d,
    };
    if T::EXACT {
        debug_assert_eq!(data.discriminant(), cubic_discriminant_value(cubic));
    }
    data
}

/// `a^4 ((alpha - beta)(alpha - gamma)(beta - gamma))^2`.
pub fn vandermonde_delta_sq<T: Coefficient>(roots: &[T; 3], a: &T) -> T {
    let [x, y, z] = roots.clone();
    let delta = (x.clone() - y.clone()) * (x - z.clone()) * (y - z);
    let a2 = a.clone() * a.clone();
    a2.clone() * a2 * delta.clone() * delta
}

/// Residual of `(a alpha^2 + k alpha + l)^2 (4al - k^2) = -D`, where `b, c, d` are rebuilt
/// from `b = k - a alpha`, `c = l - k alpha`, `d = -l alpha`.
pub fn key_lemma_check<T: Coefficient>(a: &T, alpha: &T, k: &T, l: &T) -> T {
    let cubic = Cubic::new(
        a.clone(),
        k.clone() - a.clone() * alpha.clone(),
        l.clone() - k.clone() * alpha.clone(),
        -(l.clone() * alpha.clone()),
    );
    let value_at = a.clone() * alpha.clone() * alpha.clone() + k.clone() * alpha.clone() + l.clone();
    let four = T::from_usize(4).expect("small integer");
    let lhs = value_at.clone() * value_at * (four * a.clone() * l.clone() - k.clone() * k.clone());
    (lhs + cubic_discriminant_value(&cubic)).abs()
}
