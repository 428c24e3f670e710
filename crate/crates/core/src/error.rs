use thiserror::Error;

/// Errors raised by the library.
///
/// Every variant maps onto a stable name (see [`Error::kind`]) used in machine-readable output.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("leading coefficient is zero; route the input through the lower-degree path")]
    DegenerateLeadingCoefficient,

    #[error("{alpha} is not a root: residual {residual:e} exceeds tolerance {tolerance:e}")]
    NotARoot {
        alpha: f64,
        residual: f64,
        tolerance: f64,
    },

    #[error("polynomial degree {degree} is below the minimum {minimum}")]
    DegreeTooLow { degree: usize, minimum: usize },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("the renormalized integral diverges: {0}")]
    DivergentIntegral(String),

    #[error("integrand is singular at x = {0}")]
    SingularPoint(f64),

    #[error("real root {root} has multiplicity {multiplicity}; |x - root|^(-2m/n) is not integrable")]
    RepeatedRootDivergence { root: f64, multiplicity: u32 },

    #[error("quadrature did not reach the requested tolerance after {levels} levels (estimate {estimate}, error {error:e})")]
    NoConvergence {
        levels: usize,
        estimate: f64,
        error: f64,
    },

    #[error("finite-difference stencil leaves the sign region of the discriminant")]
    StencilCrossesSingularity,

    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Broad classification of [`Error`] used by front ends for exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The request is mathematically ill-posed for the given input.
    Domain,
    /// A numerical method failed to deliver the requested accuracy.
    Numerical,
    /// The input could not be understood.
    Usage,
}

impl Error {
    /// Stable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DegenerateLeadingCoefficient => "DegenerateLeadingCoefficient",
            Error::NotARoot { .. } => "NotARoot",
            Error::DegreeTooLow { .. } => "DegreeTooLow",
            Error::Domain(_) => "DomainError",
            Error::DivergentIntegral(_) => "DivergentIntegral",
            Error::SingularPoint(_) => "SingularPoint",
            Error::RepeatedRootDivergence { .. } => "RepeatedRootDivergence",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::StencilCrossesSingularity => "StencilCrossesSingularity",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::Parse { .. } => "ParseError",
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::NoConvergence { .. } => ErrorClass::Numerical,
            Error::Parse { .. } | Error::InvalidConfig(_) => ErrorClass::Usage,
            _ => ErrorClass::Domain,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
