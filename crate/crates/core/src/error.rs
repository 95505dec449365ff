use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    #[error("index out of range: {0}")]
    Range(String),
    /// The request exceeds a configured memory or work budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("checked integer overflow in {0}")]
    Overflow(&'static str),
    #[error("pole at z = 1")]
    Pole,
    #[error("singular point: {0}")]
    Singularity(String),
    #[error("failed to converge: {0}")]
    Convergence(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("singular curve `{0}` (discriminant is zero)")]
    SingularCurve(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors that reflect a violated precondition rather than a
    /// failure during computation.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::Range(_)
                | Error::Resource(_)
                | Error::Pole
                | Error::Singularity(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
