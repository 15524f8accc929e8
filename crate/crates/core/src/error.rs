use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("m,p must be coprime (got m={m}, p={p})")]
    NotCoprime { m: i64, p: i64 },

    #[error("m,p must be positive (got m={m}, p={p})")]
    NonPositive { m: i64, p: i64 },

    #[error("color k must be at least 1 (got {0})")]
    InvalidColor(i64),

    #[error("argument outside the domain: {0}")]
    DomainError(String),

    #[error("z = {re}{im:+}i lies on a pole of the torsion function")]
    PoleError { re: f64, im: f64 },

    #[error("exponent range exceeded: {0}")]
    Overflow(String),

    #[error("sinh(kh/2) = {0:e} is numerically zero; use the exact Kashaev evaluation at the root of unity")]
    DivisionNearZero(f64),

    #[error("extrapolation did not converge: {0}")]
    NoConvergence(String),

    #[error("series has zero leading coefficient to order {0}")]
    ZeroLeadingCoefficient(usize),

    #[error("requested coefficient {needed} but series is only known below order {order}")]
    OrderExceeded { needed: usize, order: usize },

    #[error("index {index} outside {lo}..={hi}")]
    IndexOutOfRange { index: i64, lo: i64, hi: i64 },

    #[error("tolerance {target:e} not met (achieved {achieved:e})")]
    ToleranceNotMet { target: f64, achieved: f64 },

    #[error("integrand returned a non-finite value at x = {0}")]
    NonFiniteSample(f64),

    #[error("contour condition violated: {0}")]
    ContourConditionViolated(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for failures of a numerical method, as opposed to rejected input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence(_)
                | Error::ToleranceNotMet { .. }
                | Error::NonFiniteSample(_)
                | Error::Overflow(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
