use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("unsupported group family: {0}")]
    UnsupportedFamily(String),

    #[error("group order {order} exceeds the bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },

    #[error("element index {element} is out of range for a group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("group is not abelian")]
    NotAbelian,

    #[error("bad connection set: {0}")]
    BadConnectionSet(String),

    #[error("graph is not regular (vertex {vertex} has degree {found}, expected {expected})")]
    NotRegular {
        vertex: usize,
        expected: usize,
        found: usize,
    },

    #[error(
        "graph is not quasi-strongly regular: adjacent pairs {first:?} and {second:?} \
         have {first_count} and {second_count} common neighbours"
    )]
    NotQsrg {
        first: (usize, usize),
        first_count: usize,
        second: (usize, usize),
        second_count: usize,
    },

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("matrix dimension {dimension} exceeds the guard {guard}")]
    DimensionTooLarge { dimension: usize, guard: usize },

    #[error("numeric eigenvalues disagree with the exact pass: {0}")]
    NumericMismatch(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("failed to write output: {0}")]
    Output(#[source] std::io::Error),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }
}
