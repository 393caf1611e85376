//! The six problem instantiations and a dispatcher over them.

pub mod closest_string;
pub mod fvst;
pub mod hash_family;
pub mod ilp;
pub mod longest_path;
pub mod steiner;
pub mod vertex_cover;

use thiserror::Error;

use crate::instances::{Instance, ProblemKind};
use crate::stream::BoxStream;

use self::closest_string::ClosestStringAdapter;
use self::fvst::FvstAdapter;
use self::hash_family::HashFamilyError;
use self::ilp::IlpAdapter;
use self::longest_path::LongestPathSpec;
use self::steiner::{SteinerError, SteinerSolver};
use self::vertex_cover::VertexCoverSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("problem {kind} cannot run on this instance type")]
    WrongInstance { kind: ProblemKind },
    #[error(transparent)]
    HashFamily(#[from] HashFamilyError),
    #[error(transparent)]
    Steiner(#[from] SteinerError),
}

/// A problem bound to an instance and parameter, ready to stream.
pub enum Prepared<'i> {
    Fvst(FvstAdapter<'i>),
    ClosestString(ClosestStringAdapter<'i>),
    Ilp(IlpAdapter<'i>),
    LongestPath(LongestPathSpec<'i>),
    VertexCover(VertexCoverSpec<'i>, usize),
    Steiner(SteinerSolver),
}

/// Binds `instance` to `kind`. The parameter `k` is ignored for ILP (the
/// number of variables is part of the instance) and for Steiner tree.
pub fn prepare(instance: &Instance, kind: ProblemKind, k: usize) -> Result<Prepared<'_>, ProblemError> {
    let wrong = || ProblemError::WrongInstance { kind };
    Ok(match kind {
        ProblemKind::Fvst => Prepared::Fvst(FvstAdapter::new(instance.as_tournament().ok_or_else(wrong)?, k)),
        ProblemKind::ClosestString => {
            Prepared::ClosestString(ClosestStringAdapter::new(instance.as_strings().ok_or_else(wrong)?, k))
        }
        ProblemKind::Ilp => Prepared::Ilp(IlpAdapter::new(instance.as_ilp().ok_or_else(wrong)?)),
        ProblemKind::LongestPath => {
            Prepared::LongestPath(LongestPathSpec::new(instance.as_graph().ok_or_else(wrong)?, k)?)
        }
        ProblemKind::VertexCover => {
            Prepared::VertexCover(VertexCoverSpec::new(instance.as_graph().ok_or_else(wrong)?), k)
        }
        ProblemKind::Steiner => {
            let g = instance.as_graph().ok_or_else(wrong)?;
            if g.terminals().is_none() {
                return Err(wrong());
            }
            Prepared::Steiner(SteinerSolver::new(g)?)
        }
    })
}

impl Prepared<'_> {
    pub fn stream(&self, verify: bool) -> BoxStream<'_> {
        match self {
            Prepared::Fvst(a) => Box::new(fvst::enumerate_fvst(a, verify)),
            Prepared::ClosestString(a) => Box::new(closest_string::enumerate_closest_strings(a, verify)),
            Prepared::Ilp(a) => Box::new(ilp::enumerate_ilp(a, verify)),
            Prepared::LongestPath(s) => Box::new(longest_path::enumerate_longest_paths(s, verify)),
            Prepared::VertexCover(s, k) => Box::new(vertex_cover::enumerate_vertex_covers(s, *k, verify)),
            Prepared::Steiner(s) => Box::new(steiner::enumerate_steiner_trees(s, verify)),
        }
    }
}
