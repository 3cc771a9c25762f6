use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible rings: {0}")]
    IncompatibleRing(String),

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("gcd(0, 0) is undefined")]
    UndefinedGcd,

    #[error("exponent overflow in variable {var}")]
    ExponentOverflow { var: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("provider inconsistency: {0}")]
    ProviderInconsistency(String),

    #[error("window selection failed: {reason}\n{diagnostic}")]
    WindowSelection { reason: String, diagnostic: String },

    #[error("budget exceeded: {required} point evaluations required, budget is {budget}")]
    Budget { required: u128, budget: u128 },

    #[error("symmetry violation: {0}")]
    SymmetryViolation(String),

    #[error("resource limit: {0}")]
    Timeout(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
