use thiserror::Error;

use crate::graph::Label;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("vertex {vertex} out of range for graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("label {0} assigned to more than one vertex")]
    DuplicateLabel(Label),
    #[error("invalid weights: {0}")]
    InvalidWeights(String),
    #[error("pattern is nonempty but the target graph has no vertices")]
    EmptyTarget,
    #[error("no image given for label {0}")]
    MissingPin(Label),
    #[error("label sets differ: {left:?} vs {right:?}")]
    LabelMismatch { left: Vec<Label>, right: Vec<Label> },
    #[error("expansion needs 2^{exponent} summands, over the limit of 2^{limit}")]
    TermLimit { exponent: usize, limit: usize },
    #[error("graph is not fully labeled")]
    NotFullyLabeled,
    #[error("unknown label {0}")]
    UnknownLabel(Label),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("pattern graph is not prime")]
    NotPrime,
    #[error("graph is not stringent")]
    NotStringent,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("gave up after {attempts} attempts: {what}")]
    GaveUp { attempts: u64, what: String },
    #[error("lambda {0} is not a dyadic rational within the expansion depth")]
    NotDyadic(f64),
    #[error("x = {x} outside [{lo}, {hi}]")]
    OutOfRange { x: f64, lo: f64, hi: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}
