//! Rigidity matroids, tree polynomials and picture spaces of graphs in the
//! plane.
//!
//! Graphs have at most 64 vertices and 64 edges; edge sets are `u64`
//! bitmasks over the graph's edge order.

pub mod cli;
pub mod cycles;
pub mod error;
pub mod field;
pub mod graph;
pub mod partition;
pub mod picture;
pub mod poly;
pub mod rigidity;
pub mod treepoly;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{EdgeSet, Graph, Multigraph};
pub use partition::Partition;
pub use poly::MultilinearPoly;
