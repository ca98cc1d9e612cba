use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid radicand {0}: must be a positive integer")]
    InvalidRadicand(String),

    #[error("radicand {0} is too large to reduce to squarefree form")]
    RadicandTooLarge(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("incompatible quadratic fields: sqrt({0}) and sqrt({1})")]
    IncompatibleField(u64, u64),

    /// The angle is an odd multiple of pi/2, so its tangent is not a finite value.
    #[error("right angle: {0}")]
    RightAngle(String),

    #[error("degenerate argument: {0}")]
    Degenerate(String),

    #[error("inconsistent input: {0}")]
    InconsistentInput(String),

    #[error("sqrt({0}) is not representable in a single quadratic field")]
    UnsupportedRadical(String),

    #[error("g = (f-1)/(f+1) is undefined at f = -1")]
    UndefinedDifference,

    #[error("right-hand side {0}*pi has no supported exact tangent")]
    UnsupportedRhs(String),

    #[error("|p/q| must be < 1 for the series, got {0}")]
    ReductionRequired(String),

    #[error("the digit engine only accepts rational arguments, got {0}")]
    RationalOnly(String),

    #[error("degenerate identity: {0}")]
    DegenerateIdentity(String),

    #[error("winding number could not be resolved: {0}")]
    WindingUnresolved(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            column,
            message: message.into(),
        }
    }
}
