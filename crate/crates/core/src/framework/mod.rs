//! Generic runners turning problem adapters into solution streams.
//!
//! Every runner keeps its traversal on an explicit stack, so a stream can be
//! paused between any two solutions. Child order is whatever order the adapter
//! returns; runs are therefore deterministic.
//!
//! Runners accept a `verify` flag. With it set, contract checks that cost more
//! than the enumeration itself are enabled (global duplicate detection,
//! flashlight soundness, union membership, grow validity). Cheap structural
//! checks (measure decrease, breadth bound) are always on.

mod bounded_tree;
mod compression;
mod flashlight;
mod solution_search;
mod union;

pub use bounded_tree::{run_bounded_tree, BoundedTreeAdapter, BoundedTreeRun, TreeStats};
pub use compression::{run_iterative_compression, CompressionRun, CompressionSpec};
pub use flashlight::{run_flashlight, FlashlightAdapter, FlashlightRun, FlashlightStats};
pub use solution_search::{
    run_solution_search, OutputEvent, OutputPosition, SolutionSearchAdapter, SolutionSearchRun,
};
pub use union::{run_union, UnionEvent, UnionRun, UnionSpec};
