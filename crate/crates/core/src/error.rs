use thiserror::Error;

/// Failure modes shared by every evaluation routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The argument sits on (or too close to) a pole of the function.
    #[error("pole: {0}")]
    Pole(String),

    /// A precondition on the arguments or on the context was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series never satisfied its stopping rule within `max_terms`.
    #[error("series did not converge within {max_terms} terms ({what})")]
    MaxTermsExceeded { what: String, max_terms: usize },

    /// Cancellation consumed more bits than the working precision provides.
    #[error("precision loss in {what}: needs ~{needed_bits} guard bits, {available_bits} available")]
    PrecisionLoss {
        what: String,
        needed_bits: u32,
        available_bits: u32,
    },

    /// Adaptive quadrature exhausted its refinement budget.
    #[error("quadrature failed: {0}")]
    QuadratureFailure(String),

    /// An iterative procedure (node doubling, Richardson, ...) did not settle.
    #[error("convergence failure: {0}")]
    ConvergenceFailure(String),

    /// No tail estimate is available for the requested line-integral setup.
    #[error("no tail bound available: {0}")]
    TailBoundUnavailable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
