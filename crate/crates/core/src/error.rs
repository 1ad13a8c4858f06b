use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a distribution needs at least one atom")]
    Empty,

    #[error("value at position {index} is not finite ({value})")]
    NonFiniteValue { index: usize, value: f64 },

    #[error("{weights} weights supplied for {values} values")]
    LengthMismatch { values: usize, weights: usize },

    #[error("weight at position {index} must be finite and nonnegative, got {value}")]
    InvalidWeight { index: usize, value: f64 },

    #[error("weights must have a positive sum")]
    ZeroMass,

    #[error("alpha must lie in [0,1], got {0}")]
    InvalidAlpha(f64),

    #[error("order must be nonzero")]
    ZeroOrder,

    #[error("cannot parse order `{0}`")]
    BadOrder(String),

    #[error("order {order} is not supported by {operation}")]
    UnsupportedOrder { order: String, operation: &'static str },

    #[error("invalid density: {0}")]
    InvalidDensity(String),

    #[error("outside the domain: {0}")]
    Domain(String),

    #[error("solver gave up after {0} iterations")]
    NoConvergence(usize),

    #[error("bracket expansion exhausted after {0} steps without certifying a minimum")]
    BracketExhausted(usize),

    #[error("no sign change on [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("degenerate branch: {0}")]
    Degenerate(&'static str),

    #[error("the dual norm is only reached as t grows without bound, so there is no finite witness")]
    NoFiniteWitness,

    #[error("the oracle enumerates at most {max} atoms, got {got}")]
    TooManyAtoms { max: usize, got: usize },

    #[error("oracle resolution must be at least 10, got {0}")]
    ResolutionTooSmall(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
