//! Reference computations for cross-checking `pf-core`.
//!
//! Everything here is deliberately naive and exponential. Production types appear only
//! at the boundary (inputs and outputs); the arithmetic underneath is reimplemented.

use std::fmt::Display;

use thiserror::Error;

pub mod fixtures;
pub mod lie;
pub mod mpoly;
pub mod perms;
pub mod series;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("degree cap exceeded: {0}")]
    DegreeCap(String),
    #[error("size cap exceeded: {0}")]
    SizeCap(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// One production-vs-oracle comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub case: String,
    pub production: String,
    pub oracle: String,
    pub equal: bool,
}

impl OracleReport {
    pub fn compare<T: PartialEq + Display>(case: impl Into<String>, production: &T, oracle: &T) -> Self {
        Self {
            case: case.into(),
            production: production.to_string(),
            oracle: oracle.to_string(),
            equal: production == oracle,
        }
    }
}

impl Display for OracleReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let verdict = if self.equal { "equal" } else { "DIFFERENT" };
        write!(
            f,
            "{}: {verdict} (production {}, oracle {})",
            self.case, self.production, self.oracle
        )
    }
}
