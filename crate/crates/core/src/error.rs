use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("point {index} has a non-finite coordinate ({x}, {y})")]
    NonFinite { index: usize, x: f64, y: f64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("instance has {n} points, oracle is capped at {cap}")]
    OracleCap { n: usize, cap: usize },

    #[error("{algorithm} produced an infeasible solution on {instance}: {details}")]
    Infeasible {
        instance: String,
        algorithm: String,
        details: String,
    },

    #[error("invalid solution file: {0}")]
    Solution(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parameter(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
