use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("{what}: size {size} exceeds guard {limit}")]
    Guard {
        what: &'static str,
        size: u128,
        limit: u128,
    },
    #[error("group is not abelian")]
    NotAbelian,
    #[error("vertex set is empty")]
    EmptyVertexSet,
    #[error("closing hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("structure is weak: {0}")]
    Weak(String),
    #[error("structure does not verify: {0}")]
    NotVerified(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("bad spec `{spec}`: {msg}")]
    Spec { spec: String, msg: String },
    #[error("positivity violated: {0}")]
    Positivity(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not a bijection of the ground set")]
    NotBijection,
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn spec(spec: &str, msg: impl Into<String>) -> Self {
        Error::Spec {
            spec: spec.to_string(),
            msg: msg.into(),
        }
    }
}
