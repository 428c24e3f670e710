//! Renormalized non-Gaussian integrals of binary cubic forms.
//!
//! The central object is `F(a, b, c, d) = int |a x^3 + b x^2 + c x + d|^(-2/3) dx`, which
//! has the closed form `C / |D|^(1/6)` in terms of the cubic discriminant `D`. The crate
//! provides exact discriminants, the Gamma/Beta constants, the closed form and its
//! derivatives, and an independent singular quadrature that evaluates the integral
//! directly (also for `|f|^(-2/n)` with `n > 3`).

pub mod discriminant;
pub mod error;
pub mod exact;
pub mod poly;
pub mod quadrature;
pub mod renorm;
pub mod special_fn;

pub use discriminant::{DiscriminantResult, DiscriminantSign};
pub use error::{Error, ErrorClass, Result};
pub use exact::Rational;
pub use poly::{Cubic, CubicCoeffs, ExactCubic, Polynomial, RealRoot, RootClass, RootSet};
pub use quadrature::{QuadratureConfig, PanelDecomposition};
pub use renorm::{ExpectationSet, IntegralResult, Method, Warning};
