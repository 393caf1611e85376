//! Integer points of a box-bounded system `A x ≤ b`, by solution search.
//!
//! A node is the base system plus at most one extra lower and one extra upper
//! bound per variable. Splitting around a found point `s` produces, for each
//! `i`, the children "agree with `s` before `i`, exceed `s` at `i`" and "agree
//! before `i`, fall short at `i`": `2k` cells that partition everything but
//! `s`.

use crate::framework::{run_solution_search, SolutionSearchAdapter, SolutionSearchRun};
use crate::instances::{canonical, IlpSystem};
use crate::stream::Solution;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExtraBounds {
    pub lower: Option<i64>,
    pub upper: Option<i64>,
}

impl ExtraBounds {
    pub fn count(&self) -> usize {
        self.lower.is_some() as usize + self.upper.is_some() as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlpNode {
    pub extra: Vec<ExtraBounds>,
}

impl IlpNode {
    pub fn root(k: usize) -> Self {
        IlpNode { extra: vec![ExtraBounds::default(); k] }
    }

    pub fn max_extra_per_variable(&self) -> usize {
        self.extra.iter().map(ExtraBounds::count).max().unwrap_or(0)
    }
}

pub struct IlpAdapter<'s> {
    system: &'s IlpSystem,
}

impl<'s> IlpAdapter<'s> {
    pub fn new(system: &'s IlpSystem) -> Self {
        IlpAdapter { system }
    }

    pub fn root(&self) -> IlpNode {
        IlpNode::root(self.system.k())
    }

    /// Box of each variable after applying the node's extra bounds.
    pub fn effective_bounds(&self, node: &IlpNode) -> Vec<(i64, i64)> {
        self.system
            .bounds()
            .iter()
            .zip(&node.extra)
            .map(|(&(lo, hi), e)| (e.lower.map_or(lo, |l| l.max(lo)), e.upper.map_or(hi, |u| u.min(hi))))
            .collect()
    }

    pub fn contains(&self, node: &IlpNode, x: &[i64]) -> bool {
        x.len() == self.system.k()
            && self.effective_bounds(node).iter().zip(x).all(|(&(lo, hi), &v)| lo <= v && v <= hi)
            && self.system.satisfies(x)
    }

    /// First feasible point in lexicographic order, by depth-first search
    /// over the variables with per-row bound propagation.
    pub fn find_solution(&self, node: &IlpNode) -> Option<Vec<i64>> {
        let bounds = self.effective_bounds(node);
        if bounds.iter().any(|&(lo, hi)| lo > hi) {
            return None;
        }
        let mut x = vec![0i64; bounds.len()];
        self.search(&bounds, &mut x, 0).then_some(x)
    }

    fn search(&self, bounds: &[(i64, i64)], x: &mut [i64], i: usize) -> bool {
        if i == x.len() {
            return self.system.satisfies(x);
        }
        let Some((lo, hi)) = self.propagate(bounds, x, i) else {
            return false;
        };
        let mut v = lo;
        loop {
            x[i] = v;
            if self.search(bounds, x, i + 1) {
                return true;
            }
            if v == hi {
                return false;
            }
            v += 1;
        }
    }

    /// Range of variable `i` compatible with every row, given `x[..i]` fixed
    /// and later variables free within their boxes.
    fn propagate(&self, bounds: &[(i64, i64)], x: &[i64], i: usize) -> Option<(i64, i64)> {
        let (mut lo, mut hi) = (bounds[i].0 as i128, bounds[i].1 as i128);
        for (a, b) in self.system.rows() {
            let ai = a[i] as i128;
            let fixed: i128 = a[..i].iter().zip(&x[..i]).map(|(&c, &v)| c as i128 * v as i128).sum();
            let rest: i128 = a[i + 1..]
                .iter()
                .zip(&bounds[i + 1..])
                .map(|(&c, &(l, h))| (c as i128 * l as i128).min(c as i128 * h as i128))
                .sum();
            let slack = *b as i128 - fixed - rest;
            match ai.signum() {
                0 if slack < 0 => return None,
                1 => hi = hi.min(floor_div(slack, ai)),
                -1 => lo = lo.max(ceil_div(slack, ai)),
                _ => {}
            }
        }
        (lo <= hi).then_some((lo as i64, hi as i64))
    }

    /// The `2k` children around `s`, including those whose box is empty.
    pub fn split_unpruned(&self, node: &IlpNode, s: &[i64]) -> Vec<IlpNode> {
        let k = self.system.k();
        let mut out = Vec::with_capacity(2 * k);
        let mut prefix = node.clone();
        for i in 0..k {
            let e = prefix.extra[i];
            let mut above = prefix.clone();
            above.extra[i].lower = Some(match s[i].checked_add(1) {
                Some(v) => e.lower.map_or(v, |l| l.max(v)),
                None => i64::MAX,
            });
            if s[i] == i64::MAX {
                above.extra[i].upper = Some(i64::MIN);
            }
            let mut below = prefix.clone();
            below.extra[i].upper = Some(match s[i].checked_sub(1) {
                Some(v) => e.upper.map_or(v, |u| u.min(v)),
                None => i64::MIN,
            });
            if s[i] == i64::MIN {
                below.extra[i].lower = Some(i64::MAX);
            }
            out.push(above);
            out.push(below);
            prefix.extra[i] = ExtraBounds { lower: Some(s[i]), upper: Some(s[i]) };
        }
        out
    }

    /// Children around `s` whose box is nonempty; empty when the node has no
    /// integer point at all.
    pub fn split(&self, node: &IlpNode, s: &[i64]) -> Vec<IlpNode> {
        if !self.contains(node, s) && self.find_solution(node).is_none() {
            return Vec::new();
        }
        self.split_unpruned(node, s)
            .into_iter()
            .filter(|child| self.effective_bounds(child).iter().all(|&(lo, hi)| lo <= hi))
            .collect()
    }
}

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if a % b != 0 && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if a % b != 0 && ((a < 0) == (b < 0)) {
        q + 1
    } else {
        q
    }
}

impl SolutionSearchAdapter for IlpAdapter<'_> {
    type Node = IlpNode;
    type Sol = Vec<i64>;

    fn find_solution(&self, node: &IlpNode) -> Option<Vec<i64>> {
        IlpAdapter::find_solution(self, node)
    }

    fn split_excluding(&self, node: &IlpNode, sol: &Vec<i64>) -> Vec<IlpNode> {
        self.split(node, sol)
    }

    fn encode(&self, sol: &Vec<i64>) -> Solution {
        canonical::int_vector(sol)
    }
}

/// Every integer point of the system, each once.
pub fn enumerate_ilp<'a, 's>(adapter: &'a IlpAdapter<'s>, verify: bool) -> SolutionSearchRun<'a, IlpAdapter<'s>> {
    run_solution_search(adapter, adapter.root(), verify)
}
