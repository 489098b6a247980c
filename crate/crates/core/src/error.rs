use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("index out of range: arm {arm}, attribute {attribute} (instance is {arms}x{attributes})")]
    IndexOutOfRange {
        arm: usize,
        attribute: usize,
        arms: usize,
        attributes: usize,
    },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("hardness is undefined: {0}")]
    Hardness(String),

    #[error("prediction is vacuous: {0}")]
    VacuousPrediction(String),

    #[error("unknown algorithm `{0}` (valid identifiers: fcsr, us, sr, etc)")]
    UnknownAlgorithm(String),

    #[error("unknown synthetic instance `{0}` (valid: risky, feasibility, mean, combined)")]
    UnknownInstance(String),

    #[error("invalid sweep config: {0}")]
    Config(String),

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("portfolio error: {0}")]
    Portfolio(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Toml(#[from] toml::de::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
