//! Enumeration of parameterized problems with FPT delay.
//!
//! The crate is organised in three layers:
//!
//! * [`framework`] holds five generic runners that turn problem-specific
//!   adapters into duplicate-free, pausable [`SolutionStream`]s: bounded search
//!   trees, flashlight search, solution search with alternating output, union
//!   enumeration over overlapping streams, and iterative compression.
//! * [`problems`] instantiates those runners for feedback vertex sets in
//!   tournaments, closest strings, integer points of small ILPs, simple paths on
//!   `k` vertices, vertex covers, and minimum-weight Steiner trees.
//! * [`oracle`] and [`harness`] provide brute-force ground truth, random
//!   instance generation and delay measurement.
//!
//! Instances are read and written through the line-oriented text formats in
//! [`instances`]; every solution leaves the crate in a canonical encoding so
//! two solutions are equal exactly when their bytes are.

pub mod error;
pub mod framework;
pub mod harness;
pub mod instances;
pub mod oracle;
pub mod problems;
pub mod stream;
mod subsets;

pub use error::EnumError;
pub use instances::{Instance, InstanceError, ProblemKind};
pub use stream::{collect_all, BoxStream, Solution, SolutionStream};
