use thiserror::Error;

/// Errors raised anywhere in the toolkit.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum WkbError {
    #[error("division by a series whose known window is zero")]
    DivisionByZero,
    #[error("antiderivative would produce a logarithm (z^-1 coefficient {coefficient})")]
    LogObstruction { coefficient: String },
    #[error("exponent {exponent} does not lie on the allowed lattice")]
    LatticeMismatch { exponent: String },
    #[error("coefficient power {0} is not representable exactly")]
    NonRepresentable(String),
    #[error("operation needs an explicit truncation order: {0}")]
    NeedsTruncation(&'static str),
    #[error("series is not a Taylor series: {0}")]
    NotTaylor(String),
    #[error("series is not invertible as a formal map: {0}")]
    NotInvertible(String),
    #[error("potential is not normalized as V(0)=0, V'(0)=1")]
    NotSimpleTurningPoint,
    #[error("holomorphy violated at order {order}: {detail}")]
    HolomorphyViolation { order: usize, detail: String },
    #[error("Pade denominator has a pole on the integration ray at {0}")]
    PoleOnRay(String),
    #[error("contour quadrature failed: {0}")]
    ContourFailure(String),
    #[error("path leaves the convergence domain: {0}")]
    DomainExit(String),
    #[error("trace left the analyticity region at {0}")]
    TraceEscape(String),
    #[error("identity failure: {0}")]
    IdentityFailure(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl WkbError {
    /// True for failures of a numerical procedure, as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            WkbError::PoleOnRay(_)
                | WkbError::ContourFailure(_)
                | WkbError::DomainExit(_)
                | WkbError::TraceEscape(_)
                | WkbError::IdentityFailure(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, WkbError>;
