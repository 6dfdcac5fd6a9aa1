use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("part `{part}`: {field} must be {expected}, got {value}")]
    InvalidPart {
        part: String,
        field: &'static str,
        expected: &'static str,
        value: f64,
    },

    #[error("part `{part}` is {height} mm tall but platform `{platform}` only allows {max} mm")]
    PartTooTall {
        part: String,
        platform: String,
        height: f64,
        max: f64,
    },

    #[error("duplicate part name `{0}`")]
    DuplicatePartName(String),

    #[error("part name must not be empty")]
    EmptyPartName,

    #[error("no parts")]
    NoParts,

    #[error("platform `{platform}`: {field} must be positive and finite, got {value}")]
    InvalidPlatform {
        platform: String,
        field: &'static str,
        value: f64,
    },

    #[error("economics: {field} must be non-negative and finite, got {value}")]
    InvalidEconomics { field: &'static str, value: f64 },

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("no candidate layouts to choose from")]
    NoCandidates,

    #[error("oracle refused: {count} sequences to evaluate exceeds the limit of {limit}")]
    OracleLimitExceeded { count: BigUint, limit: u64 },

    #[error("part `{part}` breaks the {mode} experiment precondition: {reason}")]
    ExperimentPrecondition {
        part: String,
        mode: &'static str,
        reason: String,
    },

    #[error("malformed instance document: {0}")]
    Syntax(#[from] serde_json::Error),

    #[error("csv import: {0}")]
    Csv(#[from] csv::Error),

    #[error("{0}")]
    Io(#[from] std::io::Error),
}
