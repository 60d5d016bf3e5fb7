use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("population size must be at least 2, got {0}")]
    PopulationTooSmall(u32),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid packed agent state {0:#010x}")]
    InvalidState(u32),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("trials mix different parameters")]
    MixedParams,
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
