use thiserror::Error;

use crate::algebra::Catalog;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("generator catalog mismatch: {left:?} vs {right:?}")]
    CatalogMismatch { left: Catalog, right: Catalog },

    #[error("division by a series with zero constant term")]
    ZeroConstantTerm,

    #[error("not a total derivative: variational derivative is {residue}")]
    NotExact { residue: String },

    #[error("polynomial has a nonzero constant term")]
    ConstantTerm,

    #[error("table too shallow: need {needed}, have {available}")]
    InsufficientDepth { needed: u32, available: u32 },

    #[error("index {0} must be odd and positive")]
    BadIndex(i64),

    #[error("no consistent calibration: {0}")]
    NoConsistentCalibration(String),

    #[error("malformed index sets: {0}")]
    MalformedIndexSet(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("tau candidate rejected: {0}")]
    TauRejected(String),

    #[error("odd powers of z present in {0}")]
    OddPowers(String),
}

pub type Result<T> = std::result::Result<T, Error>;
