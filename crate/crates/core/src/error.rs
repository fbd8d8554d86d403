use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("evaluation failed for {what} at x = {x}")]
    Evaluation { what: &'static str, x: f64 },

    #[error("no sign change on bracket [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    #[error("quadrature failed: {0}")]
    Quadrature(String),

    /// The generator inverse was asked for an argument below the cap `u_min`.
    #[error("generator inverse capped at u = {u:e}")]
    Cap { u: f64 },

    #[error("{}", match .line {
        Some(line) => format!("parse error at line {line}, field `{field}`: {message}"),
        None => format!("parse error in field `{field}`: {message}"),
    })]
    Parse {
        line: Option<usize>,
        field: String,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
