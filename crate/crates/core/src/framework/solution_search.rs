use std::collections::HashSet;

use crate::error::EnumError;
use crate::stream::{Solution, SolutionStream};

/// Search tree driven by a solution finder.
///
/// `find_solution` returns some solution of a node (or `None` if it has none);
/// `split_excluding(node, s)` returns children whose solution sets partition the
/// node's solutions minus `s`, and is empty when the node has no solution.
pub trait SolutionSearchAdapter {
    type Node;
    type Sol;

    fn find_solution(&self, node: &Self::Node) -> Option<Self::Sol>;
    fn split_excluding(&self, node: &Self::Node, sol: &Self::Sol) -> Vec<Self::Node>;
    fn encode(&self, sol: &Self::Sol) -> Solution;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputPosition {
    BeforeChildren,
    AfterChildren,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputEvent {
    pub depth: usize,
    pub position: OutputPosition,
    pub solution: Solution,
}

struct Frame<N> {
    depth: usize,
    solution: Solution,
    children: std::vec::IntoIter<N>,
}

/// Depth-first traversal with alternating output: a node's solution is
/// emitted before its subtree at even depth and after it at odd depth, which
/// keeps the distance between outputs bounded without a depth bound.
pub struct SolutionSearchRun<'a, A: SolutionSearchAdapter> {
    adapter: &'a A,
    root: Option<A::Node>,
    stack: Vec<Frame<A::Node>>,
    trace: Option<Vec<OutputEvent>>,
    seen: Option<HashSet<Solution>>,
    nodes: usize,
    failed: bool,
}

pub fn run_solution_search<A: SolutionSearchAdapter>(
    adapter: &A,
    root: A::Node,
    verify: bool,
) -> SolutionSearchRun<'_, A> {
    SolutionSearchRun {
        adapter,
        root: Some(root),
        stack: Vec::new(),
        trace: None,
        seen: verify.then(HashSet::new),
        nodes: 0,
        failed: false,
    }
}

impl<A: SolutionSearchAdapter> SolutionSearchRun<'_, A> {
    /// Record an [`OutputEvent`] per emitted solution.
    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn trace(&self) -> &[OutputEvent] {
        self.trace.as_deref().unwrap_or(&[])
    }

    pub fn nodes_visited(&self) -> usize {
        self.nodes
    }

    fn emit(&mut self, depth: usize, position: OutputPosition, s: Solution) -> Result<Option<Solution>, EnumError> {
        if let Some(seen) = self.seen.as_mut() {
            if !seen.insert(s.clone()) {
                self.failed = true;
                return Err(EnumError::DuplicateSolution(s));
            }
        }
        if let Some(trace) = self.trace.as_mut() {
            trace.push(OutputEvent { depth, position, solution: s.clone() });
        }
        Ok(Some(s))
    }

    /// Opens a frame for `node`; returns the solution to emit immediately when
    /// the depth is even.
    fn enter(&mut self, node: A::Node, depth: usize) -> Option<Solution> {
        self.nodes += 1;
        let sol = self.adapter.find_solution(&node)?;
        let children = self.adapter.split_excluding(&node, &sol);
        let solution = self.adapter.encode(&sol);
        let emit_now = depth.is_multiple_of(2);
        self.stack.push(Frame { depth, solution: solution.clone(), children: children.into_iter() });
        emit_now.then_some(solution)
    }
}

impl<A: SolutionSearchAdapter> SolutionStream for SolutionSearchRun<'_, A> {
    fn next_solution(&mut self) -> Result<Option<Solution>, EnumError> {
        if self.failed {
            return Ok(None);
        }
        if let Some(root) = self.root.take() {
            if let Some(s) = self.enter(root, 0) {
                return self.emit(0, OutputPosition::BeforeChildren, s);
            }
        }
        loop {
            let Some(top) = self.stack.last_mut() else {
                return Ok(None);
            };
            let depth = top.depth;
            match top.children.next() {
                Some(child) => {
                    if let Some(s) = self.enter(child, depth + 1) {
                        return self.emit(depth + 1, OutputPosition::BeforeChildren, s);
                    }
                }
                None => {
                    let frame = self.stack.pop().expect("nonempty stack");
                    if frame.depth % 2 == 1 {
                        return self.emit(frame.depth, OutputPosition::AfterChildren, frame.solution);
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::collect_all;

    /// Integers in an interval; split around the found point.
    struct Interval;

    impl SolutionSearchAdapter for Interval {
        type Node = (i64, i64);
        type Sol = i64;
        fn find_solution(&self, &(lo, hi): &(i64, i64)) -> Option<i64> {
            (lo <= hi).then_some(lo + (hi - lo) / 2)
        }
        fn split_excluding(&self, &(lo, hi): &(i64, i64), &s: &i64) -> Vec<(i64, i64)> {
            if lo > hi {
                return vec![];
            }
            vec![(lo, s - 1), (s + 1, hi)].into_iter().filter(|(a, b)| a <= b).collect()
        }
        fn encode(&self, s: &i64) -> Solution {
            Solution::new(s.to_string())
        }
    }

    #[test]
    fn empty_root() {
        assert!(collect_all(&mut run_solution_search(&Interval, (1, 0), true)).unwrap().is_empty());
    }

    #[test]
    fn singleton_root() {
        let out = collect_all(&mut run_solution_search(&Interval, (4, 4), true)).unwrap();
        assert_eq!(out, vec![Solution::from("4")]);
    }

    #[test]
    fn parity_of_output_positions() {
        let mut run = run_solution_search(&Interval, (0, 30), true).with_trace();
        let out = collect_all(&mut run).unwrap();
        assert_eq!(out.len(), 31);
        for ev in run.trace() {
            let expected = if ev.depth % 2 == 0 {
                OutputPosition::BeforeChildren
            } else {
                OutputPosition::AfterChildren
            };
            assert_eq!(ev.position, expected);
        }
        assert!(run.trace().iter().any(|e| e.depth >= 3));
    }
}
