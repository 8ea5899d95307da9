use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma argument {0} is not positive")]
    NonPositiveArgument(String),

    #[error("hypergeometric series does not terminate: no upper parameter is a nonpositive integer")]
    NonTerminating,

    #[error("lower parameter {param} vanishes before the series terminates at index {terminates_at}")]
    LowerParameterPole { param: String, terminates_at: u64 },

    #[error("divergent moment: {0}")]
    DivergentMoment(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("cannot add values carrying sqrt(pi)^{left} and sqrt(pi)^{right}")]
    MixedSqrtPi { left: i64, right: i64 },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("{0} is not an integer or half-integer")]
    NotHalfInteger(String),

    #[error("recurrence coefficient vanishes at p = {0}; cannot step downward")]
    SingularRecurrence(i64),

    #[error("quadrature did not reach tolerance {tol:e} with {nodes} nodes (last change {last_change:e})")]
    NoConvergence { tol: f64, nodes: usize, last_change: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
