use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{op}: invalid shape, expected {expected}, got {found}")]
    InvalidShape {
        op: &'static str,
        expected: String,
        found: String,
    },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("rank {rank} out of range 1..={max}")]
    InvalidRank { rank: usize, max: usize },

    #[error("{which} does not have orthonormal columns (deviation {deviation:.3e})")]
    NotOrthonormal { which: &'static str, deviation: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sufficient condition fails (condition value {condition_value}), no certificate")]
    NoCertificate { condition_value: f64 },

    #[error("outside domain: {0}")]
    OutsideDomain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn shape(op: &'static str, expected: impl Into<String>, found: impl Into<String>) -> Self {
        Error::InvalidShape {
            op,
            expected: expected.into(),
            found: found.into(),
        }
    }
}
