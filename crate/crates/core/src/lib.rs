//! Size-Ramsey numbers of uniform hypergraphs: core data types, exact
//! arrow checks, explicit constructions and random-host experiments.

pub mod arrow;
pub mod coloring;
pub mod constructions;
pub mod embedding;
pub mod error;
pub mod hypergraph;
pub mod independence;
pub mod iso;
pub mod randomlab;
pub mod search;

pub use coloring::{Color, EdgeColoring};
pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, Vertex};

/// Default node budget for a full arrow search.
pub const DEFAULT_ARROWS_BUDGET: u64 = 100_000_000;
/// Default node budget for a single copy search.
pub const DEFAULT_COPY_BUDGET: u64 = 10_000_000;
