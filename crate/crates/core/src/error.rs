//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("bilinear form is degenerate (radical has dimension {radical_dim})")]
    DegenerateForm { radical_dim: usize },

    #[error("matrix is not symmetric at ({row},{col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("matrix has a nonzero diagonal entry at ({index},{index})")]
    NonzeroDiagonal { index: usize },

    #[error("quadratic form does not refine the given bilinear form")]
    NotARefinement,

    #[error("parameter out of range: {what}")]
    ParameterRange { what: String },

    #[error("the fixed-point count ell must be even, got {ell}")]
    OddEll { ell: i64 },

    #[error("subset must have even cardinality, got {len}")]
    OddSubset { len: usize },

    #[error("parse error at line {line}{}: {msg}", .col.map(|c| format!(", column {c}")).unwrap_or_default())]
    Parse {
        line: usize,
        col: Option<usize>,
        msg: String,
    },
}

impl Error {
    pub(crate) fn range(what: impl Into<String>) -> Error {
        Error::ParameterRange { what: what.into() }
    }

    pub(crate) fn parse(line: usize, col: Option<usize>, msg: impl Into<String>) -> Error {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }
}
