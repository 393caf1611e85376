use thiserror::Error;

use crate::stream::Solution;

/// Contract violations surfaced by the enumeration runners.
///
/// These indicate a bug in an adapter (or in the scheme instantiation), never a
/// property of the input instance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("measure did not decrease: parent {parent}, child {child} at depth {depth}")]
    MeasureViolation { depth: usize, parent: u64, child: u64 },

    #[error("measure {measure} exceeds the depth bound {bound}")]
    MeasureBound { measure: u64, bound: u64 },

    #[error("split produced {children} children, breadth bound is {bound}")]
    BreadthViolation { children: usize, bound: usize },

    #[error("flashlight expanded a child without solutions at depth {depth}")]
    FlashlightViolation { depth: usize },

    #[error("union membership contradiction for {solution} (stream {stream})")]
    MembershipContradiction { solution: Solution, stream: usize },

    #[error("grow step {step} returned a set that is not a solution at parameter k+1")]
    GrowContractViolation { step: usize },

    #[error("solution {0} was produced twice")]
    DuplicateSolution(Solution),

    #[error("output {solution} failed validation: {reason}")]
    InvalidOutput { solution: Solution, reason: String },
}
