//! Long cycles through two prescribed edges in vertex-weighted 2-connected
//! cubic multigraphs, with a guaranteed weight bound, machine-checkable
//! derivation traces and a brute-force verification harness.
//!
//! The central entry point is [`longcycle::long_cycle`]: given a cubic
//! multigraph, non-negative integer vertex weights and two edges such that
//! every 2-edge cut separates them, it constructs a cycle through both edges
//! whose weight is at least `w(G)^0.8` (adjacent edges) or `c·w(G)^0.8`
//! (nonadjacent, `c = 1/(8^0.8 − 6^0.8)`). The Eulerian construction for
//! 3-edge-connected graphs of arbitrary degree lives in [`eulerian`].

pub mod bounds;
pub mod corpus;
pub mod cuts;
pub mod cycle;
pub mod error;
pub mod eulerian;
mod flow;
pub mod generate;
pub mod graph;
pub mod io;
pub mod longcycle;
pub mod oracle;
pub mod search;
pub mod surgery;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{EdgeId, MultiGraph, VertexId, WeightMap};
