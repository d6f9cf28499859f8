//! Zero-memory graph exploration with vertex coloring.
//!
//! An oblivious agent walks an anonymous undirected connected graph. It sees
//! only the color of its current vertex and the multiset of neighbor colors,
//! colors the vertex it stands on, and either moves into a neighbor color
//! class (the adversary picks the concrete vertex) or stops. The crate
//! provides:
//!
//! - [`graph`]: graphs, structural analyses (circumference, classification),
//!   and a bit-exact text format;
//! - [`families`]: witness-family generators and exhaustive enumeration of
//!   labeled trees and connected graphs;
//! - [`model`]: the execution semantics, environments, traces, and outcomes;
//! - [`algorithms`]: the exploration strategies;
//! - [`adversary`]: exhaustive verification over all starts and adversary
//!   branches, with guaranteed-coverage analysis;
//! - [`synthesis`]: budget-bounded strategy synthesis and refutation, with a
//!   brute-force table-enumeration oracle;
//! - [`corpus`]: the corpus mini-grammar shared with the command line.

pub mod adversary;
pub mod algorithms;
pub mod corpus;
pub mod families;
pub mod graph;
pub mod model;
pub mod synthesis;

pub use graph::{Graph, GraphError};
pub use model::{Color, Environment, MoveDecision, Outcome, Strategy};
