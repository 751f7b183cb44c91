//! Exact 3-coloring toolkit for small-diameter graphs.
//!
//! The crate bundles: preprocessing reductions (diamond and sibling
//! elimination with coloring lift-back), four solving strategies (a
//! dominating-set enumeration, a diameter-2 minimum-degree enumeration, a
//! polynomial 2SAT-based algorithm for diameter-2 graphs with an
//! articulation neighborhood, and a diameter-3 seed strategy), generators
//! for the extremal and hardness graph families the solvers are calibrated
//! against, and DIMACS-style I/O.

pub mod domset;
pub mod generators;
pub mod graph;
pub mod io;
pub mod reduce;
pub mod sat;
pub mod solver;

#[cfg(test)]
pub(crate) mod testfx;

pub use graph::{Graph, GraphMetrics, VertexSet};
pub use solver::{Answer, Coloring, SolveOpts, SolveReport, Strategy};
