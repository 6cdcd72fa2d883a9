use crate::algebra::AxiomReport;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A table that is not square, has the wrong size, or has out-of-range entries.
    #[error("malformed table: {0}")]
    Structure(String),
    #[error("axioms fail: {0}")]
    Axioms(AxiomReport),
    #[error("invalid diagram: {0}")]
    Diagram(String),
    #[error("invalid cocycle: {0}")]
    Cocycle(String),
    #[error("invalid coloring: {0}")]
    Coloring(String),
    #[error("unknown catalog entry `{0}`")]
    Catalog(String),
    #[error("refused: {0}")]
    Guard(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
