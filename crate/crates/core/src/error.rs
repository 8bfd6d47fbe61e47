use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is singular")]
    Singular,
    #[error("ill-conditioned: {0}")]
    IllConditioned(String),
    #[error("not a true 2x{n}x{n} entangled state: reduced density ranks ({r0}, {r1}, {r2})")]
    NotTrueEntangled { n: usize, r0: usize, r1: usize, r2: usize },
    #[error("indeterminate: {0}")]
    Indeterminate(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NotTrueEntangled { .. } => 1,
            Error::Parse(_) | Error::InvalidInput(_) | Error::Io(_) => 2,
            Error::IllConditioned(_) | Error::Indeterminate(_) | Error::Singular => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
