use thiserror::Error;

use crate::netmodel::NodeRef;

#[derive(Debug, Error)]
pub enum NetError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{block}: edge ({from}, {to}) out of range")]
    EdgeOutOfRange {
        block: &'static str,
        from: usize,
        to: usize,
    },
    #[error("{block}: parallel edge ({from}, {to})")]
    DuplicateEdge {
        block: &'static str,
        from: usize,
        to: usize,
    },
    #[error("node {0} does not exist")]
    NodeOutOfRange(NodeRef),
    #[error("cannot parse node `{0}` (expected a:<i> or b:<i>)")]
    InvalidNodeSpec(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Errors from the metric, heuristic and design routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Net(#[from] NetError),
    #[error("target failure size {d} outside [{min}, {max}]")]
    TargetOutOfRange { d: usize, min: usize, max: usize },
    #[error("operation requires a bidirectional star network")]
    NotBidirectionalStar,
    #[error("network is not operating: {0}")]
    InvalidNetwork(String),
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("initial removal set is infeasible: fails {failed} < {d} nodes")]
    InfeasibleInitial { failed: usize, d: usize },
    #[error("linear relaxation is infeasible")]
    LpInfeasible,
    #[error("config: {0}")]
    Config(String),
    #[error("csv: {0}")]
    Csv(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
