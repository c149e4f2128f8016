use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("malformed rational literal {0:?} (expected \"p\" or \"p/q\")")]
    Malformed(String),
    #[error("rational literal {0:?} has a zero denominator")]
    ZeroDenominator(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order violation: lower > upper at {at}")]
    OrderViolation { at: String },

    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),

    #[error("invalid topology: {0}")]
    InvalidSpace(String),

    #[error("size {n} exceeds the configured bound {limit}")]
    BoundExceeded { n: usize, limit: usize },

    #[error("no continuous separating function: component {component} meets both sets")]
    NotSeparable { component: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("function carries no value at omega")]
    OmegaMissing,

    #[error("function carries a value at omega where none is allowed")]
    UnexpectedOmega,

    #[error("function is not convergent")]
    NotConvergent,

    #[error("gap violated at index {index}: lower + eps > upper")]
    GapViolation { index: usize },

    #[error("negative value at {at}")]
    NegativeInput { at: String },

    #[error("set contains omega")]
    ContainsOmega,

    #[error("cover hypothesis violated at {at}")]
    CoverViolation { at: String },

    #[error("threshold sets overlap at {at}")]
    ThresholdOverlap { at: String },

    #[error("empty family")]
    EmptyFamily,

    #[error("oracle broke its contract at step {step}: {detail}")]
    OracleContractViolation { step: usize, detail: String },

    #[error("separating function for pair ({r}, {s}) failed: {source}")]
    PairFailed { r: String, s: String, source: Box<Error> },

    #[error("approximation bound violated at n = {n}")]
    BoundViolation { n: usize },

    #[error("model {model} lacks the {capability} capability")]
    ModelCapabilityMissing { model: String, capability: String },

    #[error("instance is missing field `{0}`")]
    InstanceMissing(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Parse(#[from] ParseScalarError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
