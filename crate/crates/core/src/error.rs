use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid constellation order {0}: must be a power of two and at least 2")]
    InvalidOrder(usize),

    #[error("symbol index {index} out of range for order {order}")]
    IndexOutOfRange { index: usize, order: usize },

    #[error("map of order {0} violates the exclusive law")]
    ExclusiveLawViolated(usize),

    #[error("argument must be non-negative, got {0}")]
    NegativeArgument(f64),

    #[error("non-positive denominator {value} in closed-form term (k={k}, l={l})")]
    NumericalDegeneracy { value: f64, k: usize, l: usize },

    #[error("exhaustive enumeration needs {count:.3e} matrices, limit is {limit:.0e}; use sampled mode")]
    EnumerationTooLarge { count: f64, limit: f64 },

    #[error("need at least 2 qualifying points for a slope fit, found {0}")]
    InsufficientPoints(usize),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
