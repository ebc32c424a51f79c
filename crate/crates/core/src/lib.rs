//! Extremal graphs for clique counts with a fixed number of edges: builders for
//! Turán, colex and colex Turán graphs, exact clique and shadow counts, closed
//! forms for the extremal values, brute-force oracles that re-derive them, and
//! runnable versions of the deletion procedures used in stability arguments.

pub mod canon;
pub mod colex;
pub mod constructions;
pub mod extremal;
pub mod graph;
pub mod oracle;
pub mod processes;

pub use canon::{are_isomorphic, canonical_form, canonical_graph, CanonicalForm};
pub use colex::{KSet, KSetFamily};
pub use graph::{CliqueProfile, Graph, GraphError, Vertex};
