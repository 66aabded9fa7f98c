//! Interdependent-network robustness toolkit: cascade simulation, exact and
//! heuristic minimum-removal metrics, and robust interdependency design.

pub mod bench;
mod bits;
pub mod cascade;
pub mod design;
pub mod error;
pub mod exact;
pub mod generators;
pub mod heuristics;
pub mod lp;
pub mod netmodel;
pub mod rng;

pub use cascade::{cascade, one_stage_failures, CascadeEngine, CascadeResult};
pub use error::{Error, NetError, Result};
pub use netmodel::{
    BipartiteGraph, Directionality, FailureSet, InterdependentNetwork, IntraTopology, NodeRef,
    NodeSet, RemovalSet, Side, Violation,
};
