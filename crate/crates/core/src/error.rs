use thiserror::Error;

/// Errors raised by the library. Every variant maps onto one of the CLI
/// exit codes through [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic backend mismatch: {left} vs {right}")]
    BackendMismatch {
        left: &'static str,
        right: &'static str,
    },

    #[error("{what} = {requested} exceeds the limit {limit}")]
    LimitExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("missing forcing value v_{t}")]
    MissingForcing { t: i64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("superdiagonal entry h[{row},{col}] must be exactly -1", col = row + 1)]
    Superdiagonal { row: usize },

    #[error("invalid signed elementary product: {0}")]
    InvalidSep(String),
}

impl Error {
    /// Short machine-readable tag, used in CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::BackendMismatch { .. } => "backend_mismatch",
            Error::LimitExceeded { .. } => "limit_exceeded",
            Error::Domain(_) => "domain",
            Error::MissingForcing { .. } => "missing_forcing",
            Error::Parse(_) => "parse",
            Error::InvalidMatrix(_) => "invalid_matrix",
            Error::Superdiagonal { .. } => "superdiagonal",
            Error::InvalidSep(_) => "invalid_sep",
        }
    }

    /// 2 parse/domain, 3 limit breach, 4 missing data.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::LimitExceeded { .. } => 3,
            Error::MissingForcing { .. } => 4,
            _ => 2,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Guard used by every exponential evaluator.
pub(crate) fn check_limit(what: &'static str, requested: usize, limit: usize) -> Result<()> {
    if requested > limit {
        return Err(Error::LimitExceeded {
            what,
            requested,
            limit,
        });
    }
    Ok(())
}
