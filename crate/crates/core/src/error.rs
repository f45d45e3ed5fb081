use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("quantization error: {0}")]
    Quantization(String),
    #[error("separation not certified: {0}")]
    Certification(String),
    #[error("no surd within tolerance of {value} (row {row}, term {term})")]
    Snap { value: String, row: String, term: String },
    #[error("operator mismatch: {0}")]
    Mismatch(String),
    #[error("integration error: {0}")]
    Integration(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
