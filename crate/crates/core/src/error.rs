use thiserror::Error;

use crate::dpalgebra::{Heights, Monomial};
use crate::ffield::FieldError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("heights mismatch: {0} vs {1}")]
    HeightsMismatch(Heights, Heights),
    #[error("invalid heights: {0}")]
    InvalidHeights(String),
    #[error("monomial {0} lies outside the divided power algebra")]
    MonomialOutOfRange(Monomial),
    #[error("monomial {0} is not in the basis of {1}")]
    OutsideBasis(Monomial, String),
    #[error("x^({0}) does not exist at these heights")]
    NoGenerator(u64),
    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("eigenspaces have total dimension {found}, expected {expected}")]
    Defect { found: usize, expected: usize },
    #[error("vectors do not form a basis: {0}")]
    NotABasis(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl Error {
    pub(crate) fn parse(what: &'static str, input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            what,
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
