use std::collections::HashSet;

use crate::error::EnumError;
use crate::stream::{BoxStream, Solution, SolutionStream};

/// A bounded search tree whose children partition the parent's solutions.
///
/// `measure` bounds the remaining depth: nodes with measure 0 are leaves and
/// are enumerated directly by `leaf_enum`; every other node is split and each
/// child must have strictly smaller measure.
pub trait BoundedTreeAdapter {
    type Node;

    fn split(&self, node: &Self::Node) -> Vec<Self::Node>;
    fn measure(&self, node: &Self::Node) -> u64;
    fn leaf_enum<'a>(&'a self, node: &Self::Node) -> BoxStream<'a>;
    /// Maximum number of children of any node.
    fn breadth_bound(&self) -> usize;
    /// Maximum measure of any node.
    fn depth_bound(&self) -> u64;
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TreeStats {
    pub nodes: usize,
    pub leaves: usize,
    pub max_depth: usize,
    pub max_children: usize,
}

struct Frame<N> {
    measure: u64,
    depth: usize,
    children: std::vec::IntoIter<N>,
}

pub struct BoundedTreeRun<'a, A: BoundedTreeAdapter> {
    adapter: &'a A,
    root: Option<A::Node>,
    stack: Vec<Frame<A::Node>>,
    leaf: Option<BoxStream<'a>>,
    stats: TreeStats,
    seen: Option<HashSet<Solution>>,
    failed: bool,
}

pub fn run_bounded_tree<A: BoundedTreeAdapter>(
    adapter: &A,
    root: A::Node,
    verify: bool,
) -> BoundedTreeRun<'_, A> {
    BoundedTreeRun {
        adapter,
        root: Some(root),
        stack: Vec::new(),
        leaf: None,
        stats: TreeStats::default(),
        seen: verify.then(HashSet::new),
        failed: false,
    }
}

impl<A: BoundedTreeAdapter> BoundedTreeRun<'_, A> {
    pub fn stats(&self) -> &TreeStats {
        &self.stats
    }

    fn step(&mut self) -> Result<Option<Solution>, EnumError> {
        loop {
            if let Some(leaf) = self.leaf.as_mut() {
                match leaf.next_solution()? {
                    Some(s) => return Ok(Some(s)),
                    None => self.leaf = None,
                }
            }
            let (node, depth, parent) = match self.root.take() {
                Some(root) => (root, 0, None),
                None => {
                    let Some(top) = self.stack.last_mut() else {
                        return Ok(None);
                    };
                    match top.children.next() {
                        Some(child) => (child, top.depth + 1, Some(top.measure)),
                        None => {
                            self.stack.pop();
                            continue;
                        }
                    }
                }
            };
            self.stats.nodes += 1;
            self.stats.max_depth = self.stats.max_depth.max(depth);
            let measure = self.adapter.measure(&node);
            let bound = self.adapter.depth_bound();
            if measure > bound {
                return Err(EnumError::MeasureBound { measure, bound });
            }
            if let Some(parent) = parent {
                if measure >= parent {
                    return Err(EnumError::MeasureViolation { depth, parent, child: measure });
                }
            }
            if measure == 0 {
                self.stats.leaves += 1;
                self.leaf = Some(self.adapter.leaf_enum(&node));
                continue;
            }
            let children = self.adapter.split(&node);
            let bound = self.adapter.breadth_bound();
            if children.len() > bound {
                return Err(EnumError::BreadthViolation { children: children.len(), bound });
            }
            self.stats.max_children = self.stats.max_children.max(children.len());
            self.stack.push(Frame { measure, depth, children: children.into_iter() });
        }
    }
}

impl<A: BoundedTreeAdapter> SolutionStream for BoundedTreeRun<'_, A> {
    fn next_solution(&mut self) -> Result<Option<Solution>, EnumError> {
        if self.failed {
            return Ok(None);
        }
        let out = self.step();
        match &out {
            Err(_) => self.failed = true,
            Ok(Some(s)) => {
                if let Some(seen) = self.seen.as_mut() {
                    if !seen.insert(s.clone()) {
                        self.failed = true;
                        return Err(EnumError::DuplicateSolution(s.clone()));
                    }
                }
            }
            Ok(None) => {}
        }
        out
    }
}
