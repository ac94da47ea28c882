//! Exact weighted counting of independent sets by branch and reduce, with a
//! chromatic-number front end.
//!
//! The crate is `no_std` and only needs `alloc`. Every quantity is an exact
//! rational, so results are reproducible bit for bit.

#![no_std]

extern crate alloc;

pub mod cardinality;
pub mod chromatic;
pub mod generate;
pub mod graph;
pub mod iscount;
pub mod oracle;
pub mod partition;
pub mod procedures;

pub use cardinality::{CardinalityState, Rational};
pub use graph::{Graph, VertexId, VertexSet};
pub use iscount::{count_independent_sets, iscount, iscount_with_stats, EngineConfig, SearchStats};
pub use partition::Partition;
