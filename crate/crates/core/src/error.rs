use thiserror::Error;

use crate::partitions::{Cell, Partition};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("box {cell} is not in the diagram {partition}")]
    BoxOutsideDiagram { partition: Partition, cell: Cell },

    #[error("{lower} -> {upper} is not an edge of the Young graph")]
    NotAnEdge { lower: Partition, upper: Partition },

    #[error("size {size} exceeds the enumeration cap {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    #[error("zero denominator: {0}")]
    ZeroDenominator(String),

    #[error("invalid index tuple: {0}")]
    InvalidIndexTuple(String),

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("pole in denominator parameter at m = {0}")]
    PoleInDenominator(usize),

    #[error("quadrature did not converge: estimated error {error:e} after {intervals} intervals")]
    QuadratureNonconvergence { error: f64, intervals: usize },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
