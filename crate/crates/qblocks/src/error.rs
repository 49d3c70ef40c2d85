use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] qblocks_core::Error),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("I/O: {0}")]
    Io(#[from] std::io::Error),
    #[error("label {0} has no basis in the family")]
    MissingLabel(String),
    #[error("sample matrix is ill-conditioned (condition number {condition:.3e}); use more or different tau samples")]
    IllConditioned { condition: f64 },
    #[error("unknown suite '{0}' (known: all, {known})", known = crate::verify::SUITES.join(", "))]
    UnknownSuite(String),
    #[error("unknown selector '{0}'; expected one of: {known}", known = crate::selector::SELECTOR_HELP)]
    UnknownSelector(String),
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
