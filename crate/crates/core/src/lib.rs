//! Metric dimension of circulant graphs `C(n, ±{1..t})`.
//!
//! * [`graph`]: graphs, distances (closed form and BFS), diameter sets.
//! * [`resolve`]: representations, `~_S` classes, blocks and clusters.
//! * [`formulas`]: closed forms and general bounds.
//! * [`solver`]: exact search, a brute-force oracle, cluster minimisation.
//! * [`constructions`]: explicit bases for `t = 4`.
//! * [`lemmas`]: a registry of cluster lemmas and a checker for them.

pub mod constructions;
pub mod formulas;
pub mod graph;
pub mod lemmas;
pub mod resolve;
pub mod solver;

pub use graph::{CirculantGraph, GraphError, Hops, Vertex};
