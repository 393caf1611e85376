use std::collections::HashSet;

use crate::error::EnumError;
use crate::stream::{BoxStream, Solution, SolutionStream};

/// A partition tree in which `split` only ever returns children that hold at
/// least one solution (the embedded flashlight).
///
/// Because no branch is a dead end, the number of `measure`/`split` calls
/// between two outputs is bounded by twice the root measure plus one.
pub trait FlashlightAdapter {
    type Node;

    fn split(&self, node: &Self::Node) -> Vec<Self::Node>;
    fn measure(&self, node: &Self::Node) -> u64;
    fn leaf_enum<'a>(&'a self, node: &Self::Node) -> BoxStream<'a>;
    /// The decision procedure behind `split`; consulted only in verify mode.
    fn has_solution(&self, node: &Self::Node) -> bool;
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FlashlightStats {
    pub nodes: usize,
    /// `measure` plus `split` invocations so far.
    pub adapter_calls: u64,
    /// Largest number of `measure`/`split` calls between two consecutive
    /// outputs, counting the stretch before the first and after the last.
    pub max_calls_between_outputs: u64,
    /// Nodes checked against `has_solution` (verify mode only).
    pub verified_nodes: usize,
}

struct Frame<N> {
    measure: u64,
    depth: usize,
    children: std::vec::IntoIter<N>,
}

pub struct FlashlightRun<'a, A: FlashlightAdapter> {
    adapter: &'a A,
    root: Option<A::Node>,
    stack: Vec<Frame<A::Node>>,
    leaf: Option<BoxStream<'a>>,
    stats: FlashlightStats,
    calls_since_output: u64,
    verify: bool,
    seen: HashSet<Solution>,
    failed: bool,
}

pub fn run_flashlight<A: FlashlightAdapter>(
    adapter: &A,
    root: A::Node,
    verify: bool,
) -> FlashlightRun<'_, A> {
    FlashlightRun {
        adapter,
        root: Some(root),
        stack: Vec::new(),
        leaf: None,
        stats: FlashlightStats::default(),
        calls_since_output: 0,
        verify,
        seen: HashSet::new(),
        failed: false,
    }
}

impl<A: FlashlightAdapter> FlashlightRun<'_, A> {
    pub fn stats(&self) -> &FlashlightStats {
        &self.stats
    }

    fn call(&mut self) {
        self.stats.adapter_calls += 1;
        self.calls_since_output += 1;
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
            if self.verify && parent.is_some() {
                self.stats.verified_nodes += 1;
                if !self.adapter.has_solution(&node) {
                    return Err(EnumError::FlashlightViolation { depth });
                }
            }
            self.call();
            let measure = self.adapter.measure(&node);
            if let Some(parent) = parent {
                if measure >= parent {
                    return Err(EnumError::MeasureViolation { depth, parent, child: measure });
                }
            }
            if measure == 0 {
                self.leaf = Some(self.adapter.leaf_enum(&node));
                continue;
            }
            self.call();
            let children = self.adapter.split(&node);
            self.stack.push(Frame { measure, depth, children: children.into_iter() });
        }
    }

    fn close_interval(&mut self) {
        self.stats.max_calls_between_outputs =
            self.stats.max_calls_between_outputs.max(self.calls_since_output);
        self.calls_since_output = 0;
    }
}

impl<A: FlashlightAdapter> SolutionStream for FlashlightRun<'_, A> {
    fn next_solution(&mut self) -> Result<Option<Solution>, EnumError> {
        if self.failed {
            return Ok(None);
        }
        let out = self.step();
        match &out {
            Err(_) => self.failed = true,
            Ok(Some(s)) => {
                self.close_interval();
                if self.verify && !self.seen.insert(s.clone()) {
                    self.failed = true;
                    return Err(EnumError::DuplicateSolution(s.clone()));
                }
            }
            Ok(None) => self.close_interval(),
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::{collect_all, vec_stream};

    /// Binary strings of length `len` with no two adjacent ones; node = prefix.
    struct NoAdjacentOnes {
        len: usize,
        lying: bool,
    }

    impl NoAdjacentOnes {
        fn ok(&self, p: &[u8]) -> bool {
            !p.windows(2).any(|w| w == [1, 1])
        }
    }

    impl FlashlightAdapter for NoAdjacentOnes {
        type Node = Vec<u8>;
        fn split(&self, node: &Vec<u8>) -> Vec<Vec<u8>> {
            [0u8, 1]
                .iter()
                .map(|&b| {
                    let mut c = node.clone();
                    c.push(b);
                    c
                })
                .filter(|c| self.lying || self.ok(c))
                .collect()
        }
        fn measure(&self, node: &Vec<u8>) -> u64 {
            (self.len - node.len()) as u64
        }
        fn leaf_enum<'a>(&'a self, node: &Vec<u8>) -> BoxStream<'a> {
            let s: String = node.iter().map(|b| char::from(b'0' + b)).collect();
            vec_stream(if self.ok(node) { vec![Solution::new(s)] } else { vec![] })
        }
        fn has_solution(&self, node: &Vec<u8>) -> bool {
            self.ok(node)
        }
    }

    #[test]
    fn fibonacci_count_and_call_bound() {
        let a = NoAdjacentOnes { len: 6, lying: false };
        let mut run = run_flashlight(&a, vec![], true);
        let out = collect_all(&mut run).unwrap();
        // F(len + 2) strings without adjacent ones
        assert_eq!(out.len(), 21);
        assert!(run.stats().max_calls_between_outputs <= 2 * 6 + 1);
    }

    #[test]
    fn verify_catches_dishonest_split() {
        let a = NoAdjacentOnes { len: 3, lying: true };
        let err = collect_all(&mut run_flashlight(&a, vec![], true)).unwrap_err();
        assert!(matches!(err, EnumError::FlashlightViolation { .. }));
    }
}
