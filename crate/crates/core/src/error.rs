use thiserror::Error;

use crate::exactgeom::RowRef;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("ray limit of {limit} exceeded during enumeration")]
    RayLimit { limit: usize },

    #[error("row limit of {limit} exceeded during elimination")]
    RowLimit { limit: usize },

    #[error("cone has a lineality space of dimension {0}")]
    NotPointed(usize),

    #[error("system is feasible under the given pins")]
    Feasible,

    #[error("row reference {0:?} does not resolve in the system")]
    UnresolvedRow(RowRef),

    #[error("subset {0} is not a coordinate of the space")]
    UnknownSubset(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("signaling box: marginal on {subset} differs between setting choices {first:?} and {second:?} by {gap:e}")]
    Signaling {
        subset: String,
        first: Vec<usize>,
        second: Vec<usize>,
        gap: f64,
    },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("unknown identifier `{0}`")]
    UnknownId(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
