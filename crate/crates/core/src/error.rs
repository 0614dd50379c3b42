use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::pexpr::ParseError;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Why an edge was rejected by [`crate::Hypergraph::build`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeDefect {
    WrongArity { expected: usize },
    RepeatedVertex,
    VertexOutOfRange { n: usize },
}

impl fmt::Display for EdgeDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeDefect::WrongArity { expected } => write!(f, "expected {expected} vertices"),
            EdgeDefect::RepeatedVertex => f.write_str("repeated vertex"),
            EdgeDefect::VertexOutOfRange { n } => write!(f, "vertex not below n = {n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("uniformity parameter d must be at least 1 (got {0})")]
    InvalidUniformity(usize),
    #[error("invalid edge {edge:?}: {defect}")]
    InvalidEdge { edge: Vec<u32>, defect: EdgeDefect },
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: u32, n: usize },
    #[error("input is not a Berge-tree")]
    NotATree,
    #[error("{what} exceeds the configured limit of {limit}")]
    LimitExceeded { what: &'static str, limit: u128 },
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}
