//! All minimum-weight Steiner trees, by the Dreyfus–Wagner style table
//! `T[D, v, b]` with backlinks to every optimal witness.
//!
//! `D` is a set of terminals (bitmask in ascending terminal order), `v` a
//! non-terminal and `b` says whether `v` has degree 1 (`b = 1`) or at least 2
//! (`b = 0`) in the tree. Every terminal is a leaf whose neighbour is a
//! non-terminal; terminals that are not get a pendant of weight 1 which takes
//! over their role and is stripped from the output.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::error::EnumError;
use crate::instances::{canonical, UndirectedGraph};
use crate::stream::{Solution, SolutionStream};

pub const MAX_TERMINALS: usize = 16;
const INF: u64 = u64::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteinerError {
    #[error("terminals {a} and {b} lie in different components")]
    DisconnectedTerminals { a: usize, b: usize },
    #[error("{count} terminals exceed the supported maximum of {max}")]
    TooManyTerminals { count: usize, max: usize },
}

/// All-pairs distances plus the adjacency needed to walk tight edges.
#[derive(Debug, Clone)]
pub struct DistOracle {
    n: usize,
    dist: Vec<u64>,
    adj: Vec<Vec<(usize, usize, u64)>>,
}

impl DistOracle {
    pub fn new(n: usize, edges: &[(usize, usize)], weights: &[u64]) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (i, (&(u, v), &w)) in edges.iter().zip(weights).enumerate() {
            adj[u].push((v, i, w));
            adj[v].push((u, i, w));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        let mut dist = vec![INF; n * n];
        for s in 0..n {
            let row = &mut dist[s * n..(s + 1) * n];
            let mut heap = BinaryHeap::new();
            row[s] = 0;
            heap.push(Reverse((0u64, s)));
            while let Some(Reverse((d, x))) = heap.pop() {
                if d > row[x] {
                    continue;
                }
                for &(y, _, w) in &adj[x] {
                    let nd = d.saturating_add(w);
                    if nd < row[y] {
                        row[y] = nd;
                        heap.push(Reverse((nd, y)));
                    }
                }
            }
        }
        DistOracle { n, dist, adj }
    }

    pub fn from_graph(g: &UndirectedGraph) -> Self {
        let weights: Vec<u64> = (0..g.edges().len()).map(|i| g.weight(i)).collect();
        Self::new(g.n(), g.edges(), &weights)
    }

    /// `None` if `v` is unreachable from `u`.
    pub fn dist(&self, u: usize, v: usize) -> Option<u64> {
        let d = self.dist[u * self.n + v];
        (d != INF).then_some(d)
    }

    fn raw(&self, u: usize, v: usize) -> u64 {
        self.dist[u * self.n + v]
    }
}

/// Every minimum-weight `u`–`v` path as its list of edge ids, walking from
/// `u`. For `u = v` the single empty path.
pub fn enumerate_min_paths(oracle: &DistOracle, u: usize, v: usize) -> MinPaths<'_> {
    MinPaths { oracle, source: u, target: v, stack: Vec::new(), edges: Vec::new(), started: false, done: false }
}

pub struct MinPaths<'a> {
    oracle: &'a DistOracle,
    source: usize,
    target: usize,
    stack: Vec<(Vec<(usize, usize)>, usize)>,
    edges: Vec<usize>,
    started: bool,
    done: bool,
}

impl MinPaths<'_> {
    fn tight_steps(&self, x: usize) -> Vec<(usize, usize)> {
        let to_target = self.oracle.raw(x, self.target);
        self.oracle.adj[x]
            .iter()
            .filter(|&&(y, _, w)| {
                let rest = self.oracle.raw(y, self.target);
                rest != INF && rest.checked_add(w) == Some(to_target)
            })
            .map(|&(y, e, _)| (e, y))
            .collect()
    }
}

impl Iterator for MinPaths<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            if self.source == self.target {
                self.done = true;
                return Some(Vec::new());
            }
            if self.oracle.raw(self.source, self.target) == INF {
                self.done = true;
                return None;
            }
            let first = self.tight_steps(self.source);
            self.stack.push((first, 0));
        }
        loop {
            let Some((cands, idx)) = self.stack.last_mut() else {
                self.done = true;
                return None;
            };
            if *idx == cands.len() {
                self.stack.pop();
                self.edges.pop();
                continue;
            }
            let (e, y) = cands[*idx];
            *idx += 1;
            if y == self.target {
                let mut path = self.edges.clone();
                path.push(e);
                return Some(path);
            }
            self.edges.push(e);
            let next = self.tight_steps(y);
            self.stack.push((next, 0));
        }
    }
}

/// The instance after normalisation: terminals are leaves hanging off
/// non-terminals. Vertices `0..n` are the original ones, pendants follow.
#[derive(Debug, Clone)]
pub struct SteinerInstance {
    original_n: usize,
    original_edges: usize,
    n: usize,
    edges: Vec<(usize, usize)>,
    weights: Vec<u64>,
    /// Terminal vertices of the normalised graph, ordered by original id.
    terminals: Vec<usize>,
    is_terminal: Vec<bool>,
    /// Original terminal ids, ascending.
    original_terminals: Vec<usize>,
}

impl SteinerInstance {
    pub fn terminals(&self) -> &[usize] {
        &self.terminals
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn pendant_count(&self) -> usize {
        self.edges.len() - self.original_edges
    }
}

pub enum Preprocessed {
    /// At most one terminal: the empty edge set is the only minimum tree.
    Trivial,
    Instance(SteinerInstance),
}

pub fn preprocess(g: &UndirectedGraph) -> Result<Preprocessed, SteinerError> {
    let mut original_terminals: Vec<usize> = g.terminals().unwrap_or(&[]).to_vec();
    original_terminals.sort_unstable();
    if original_terminals.len() <= 1 {
        return Ok(Preprocessed::Trivial);
    }
    if original_terminals.len() > MAX_TERMINALS {
        return Err(SteinerError::TooManyTerminals { count: original_terminals.len(), max: MAX_TERMINALS });
    }
    let oracle = DistOracle::from_graph(g);
    let first = original_terminals[0];
    if let Some(&t) = original_terminals.iter().find(|&&t| oracle.dist(first, t).is_none()) {
        return Err(SteinerError::DisconnectedTerminals { a: first, b: t });
    }
    let mut is_original_terminal = vec![false; g.n()];
    for &t in &original_terminals {
        is_original_terminal[t] = true;
    }
    let mut edges = g.edges().to_vec();
    let mut weights: Vec<u64> = (0..edges.len()).map(|i| g.weight(i)).collect();
    let mut n = g.n();
    let mut terminals = Vec::with_capacity(original_terminals.len());
    for &t in &original_terminals {
        let nbrs = g.neighbors(t);
        if nbrs.len() == 1 && !is_original_terminal[nbrs[0]] {
            terminals.push(t);
        } else {
            edges.push((t, n));
            weights.push(1);
            terminals.push(n);
            n += 1;
        }
    }
    let mut is_terminal = vec![false; n];
    for &t in &terminals {
        is_terminal[t] = true;
    }
    Ok(Preprocessed::Instance(SteinerInstance {
        original_n: g.n(),
        original_edges: g.edges().len(),
        n,
        edges,
        weights,
        terminals,
        is_terminal,
        original_terminals,
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Witness {
    /// `T[D, u, 0] = T[left, u, 1] + T[D ∖ left, u, right_b]`.
    Merge { left: usize, right_b: u8 },
    /// `T[D, v, 1] = T[D, u, 0] + dist(u, v)`.
    Path { u: usize },
}

#[derive(Debug, Clone)]
pub struct SteinerTable {
    n: usize,
    values: Vec<u64>,
    links: Vec<Vec<Witness>>,
}

impl SteinerTable {
    fn index(&self, d: usize, v: usize, b: u8) -> usize {
        (d * self.n + v) * 2 + b as usize
    }

    /// `T[D, v, b]`, `None` for infinity.
    pub fn value(&self, d: usize, v: usize, b: u8) -> Option<u64> {
        let x = self.values[self.index(d, v, b)];
        (x != INF).then_some(x)
    }

    fn witnesses(&self, d: usize, v: usize, b: u8) -> &[Witness] {
        &self.links[self.index(d, v, b)]
    }
}

pub fn fill_table(inst: &SteinerInstance, oracle: &DistOracle) -> SteinerTable {
    let kk = inst.terminals.len();
    let n = inst.n;
    let masks = 1usize << kk;
    let mut table = SteinerTable { n, values: vec![INF; masks * n * 2], links: vec![Vec::new(); masks * n * 2] };
    let non_terminals: Vec<usize> = (0..n).filter(|&v| !inst.is_terminal[v]).collect();
    for (i, &t) in inst.terminals.iter().enumerate() {
        for &v in &non_terminals {
            let at = table.index(1 << i, v, 1);
            table.values[at] = oracle.raw(t, v);
        }
    }
    let relax = |table: &mut SteinerTable, at: usize, cand: u64, w: Witness| {
        if cand == INF || cand > table.values[at] {
            return;
        }
        if cand < table.values[at] {
            table.values[at] = cand;
            table.links[at].clear();
        }
        table.links[at].push(w);
    };
    for d in 1..masks {
        if d.count_ones() < 2 {
            continue;
        }
        let low = d & d.wrapping_neg();
        let rest = d & !low;
        for &u in &non_terminals {
            let at = table.index(d, u, 0);
            // D' = low ∪ (proper subset of the remaining terminals)
            let mut sub = rest;
            loop {
                sub = sub.wrapping_sub(1) & rest;
                let left = low | sub;
                let a = table.values[table.index(left, u, 1)];
                if a != INF {
                    for right_b in [0u8, 1] {
                        let b = table.values[table.index(d & !left, u, right_b)];
                        if b != INF {
                            relax(&mut table, at, a.saturating_add(b), Witness::Merge { left, right_b });
                        }
                    }
                }
                if sub == 0 {
                    break;
                }
            }
        }
        for &v in &non_terminals {
            let at = table.index(d, v, 1);
            for &u in &non_terminals {
                if u == v {
                    continue;
                }
                let a = table.values[table.index(d, u, 0)];
                let du = oracle.raw(u, v);
                if a != INF && du != INF {
                    relax(&mut table, at, a.saturating_add(du), Witness::Path { u });
                }
            }
        }
    }
    table
}

/// Normalised instance, distances and table for one Steiner instance.
pub struct SteinerSolver {
    inner: Option<(SteinerInstance, DistOracle, SteinerTable)>,
}

impl SteinerSolver {
    pub fn new(g: &UndirectedGraph) -> Result<Self, SteinerError> {
        let inner = match preprocess(g)? {
            Preprocessed::Trivial => None,
            Preprocessed::Instance(inst) => {
                let oracle = DistOracle::new(inst.n, &inst.edges, &inst.weights);
                let table = fill_table(&inst, &oracle);
                Some((inst, oracle, table))
            }
        };
        Ok(SteinerSolver { inner })
    }

    pub fn instance(&self) -> Option<&SteinerInstance> {
        self.inner.as_ref().map(|(i, _, _)| i)
    }

    pub fn table(&self) -> Option<&SteinerTable> {
        self.inner.as_ref().map(|(_, _, t)| t)
    }

    /// The non-terminal next to the first terminal, where all optimal trees
    /// are rooted.
    pub fn root(&self) -> Option<usize> {
        let (inst, oracle, _) = self.inner.as_ref()?;
        let t = inst.terminals[0];
        oracle.adj[t].first().map(|&(v, _, _)| v)
    }

    /// Optimal weight of the normalised instance (pendants included).
    pub fn normalised_optimum(&self) -> Option<u64> {
        let (inst, _, table) = self.inner.as_ref()?;
        table.value((1 << inst.terminals.len()) - 1, self.root()?, 0)
    }

    /// Optimal weight in the original graph.
    pub fn optimum(&self) -> u64 {
        match (self.instance(), self.normalised_optimum()) {
            (Some(inst), Some(w)) => w - inst.pendant_count() as u64,
            _ => 0,
        }
    }

    /// Table entries `(D, v, b)` reachable from the root through backlinks,
    /// i.e. those that take part in some optimal tree.
    pub fn reachable_entries(&self) -> Vec<(usize, usize, u8)> {
        let (Some((inst, _, table)), Some(root)) = (self.inner.as_ref(), self.root()) else {
            return Vec::new();
        };
        let mut seen = HashSet::new();
        let mut stack = vec![((1usize << inst.terminals.len()) - 1, root, 0u8)];
        while let Some(entry @ (d, v, b)) = stack.pop() {
            if !seen.insert(entry) || d.count_ones() == 1 {
                continue;
            }
            for w in table.witnesses(d, v, b) {
                match *w {
                    Witness::Merge { left, right_b } => {
                        stack.push((left, v, 1));
                        stack.push((d & !left, v, right_b));
                    }
                    Witness::Path { u } => stack.push((d, u, 0)),
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort_unstable();
        out
    }

    fn trees(&self, d: usize, v: usize, b: u8) -> Box<dyn Iterator<Item = FixedBitSet> + '_> {
        let (inst, oracle, table) = self.inner.as_ref().expect("non-trivial instance");
        let m = inst.edges.len();
        let to_bits = move |path: Vec<usize>| {
            let mut s = FixedBitSet::with_capacity(m);
            s.extend(path);
            s
        };
        if d.count_ones() == 1 {
            if b == 0 {
                return Box::new(std::iter::empty());
            }
            let t = inst.terminals[d.trailing_zeros() as usize];
            return Box::new(enumerate_min_paths(oracle, t, v).map(to_bits));
        }
        Box::new(table.witnesses(d, v, b).iter().flat_map(move |&w| -> Box<dyn Iterator<Item = FixedBitSet> + '_> {
            match w {
                Witness::Merge { left, right_b } => Box::new(self.trees(left, v, 1).flat_map(move |l| {
                    self.trees(d & !left, v, right_b).map(move |mut r| {
                        r.union_with(&l);
                        r
                    })
                })),
                Witness::Path { u } => Box::new(self.trees(d, u, 0).flat_map(move |sub| {
                    enumerate_min_paths(oracle, u, v).map(move |p| {
                        let mut s = sub.clone();
                        s.extend(p);
                        s
                    })
                })),
            }
        }))
    }
}

/// Every minimum-weight Steiner tree of the original graph as an edge set.
pub fn enumerate_steiner_trees(solver: &SteinerSolver, verify: bool) -> SteinerTrees<'_> {
    let inner = match (solver.instance(), solver.root()) {
        (Some(inst), Some(root)) => Some(solver.trees((1 << inst.terminals.len()) - 1, root, 0)),
        _ => None,
    };
    SteinerTrees { solver, inner, trivial_pending: solver.inner.is_none(), verify, seen: HashSet::new() }
}

pub struct SteinerTrees<'a> {
    solver: &'a SteinerSolver,
    inner: Option<Box<dyn Iterator<Item = FixedBitSet> + 'a>>,
    trivial_pending: bool,
    verify: bool,
    seen: HashSet<Solution>,
}

impl SteinerTrees<'_> {
    fn check(&self, inst: &SteinerInstance, edges: &FixedBitSet, sol: &Solution) -> Result<(), EnumError> {
        let invalid = |reason: &str| EnumError::InvalidOutput { solution: sol.clone(), reason: reason.to_string() };
        let weight: u64 = edges.ones().map(|e| inst.weights[e]).sum();
        if Some(weight) != self.solver.normalised_optimum() {
            return Err(invalid("weight differs from the table optimum"));
        }
        let mut parent: Vec<usize> = (0..inst.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in edges.ones() {
            let (u, v) = inst.edges[e];
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return Err(invalid("edge set contains a cycle"));
            }
            parent[a] = b;
        }
        let root = find(&mut parent, inst.terminals[0]);
        if inst.terminals.iter().any(|&t| find(&mut parent, t) != root) {
            return Err(invalid("terminals are not connected"));
        }
        Ok(())
    }
}

impl SolutionStream for SteinerTrees<'_> {
    fn next_solution(&mut self) -> Result<Option<Solution>, EnumError> {
        if self.trivial_pending {
            self.trivial_pending = false;
            return Ok(Some(canonical::edge_set(std::iter::empty())));
        }
        let Some(it) = self.inner.as_mut() else {
            return Ok(None);
        };
        let Some(edges) = it.next() else {
            self.inner = None;
            return Ok(None);
        };
        let inst = self.solver.instance().expect("non-trivial instance");
        let sol = canonical::edge_set(
            edges.ones().filter(|&e| e < inst.original_edges).map(|e| inst.edges[e]),
        );
        if self.verify {
            self.check(inst, &edges, &sol)?;
            if !self.seen.insert(sol.clone()) {
                return Err(EnumError::DuplicateSolution(sol));
            }
        }
        Ok(Some(sol))
    }
}

impl SteinerInstance {
    /// Original terminal ids, ascending.
    pub fn original_terminals(&self) -> &[usize] {
        &self.original_terminals
    }

    pub fn original_vertex_count(&self) -> usize {
        self.original_n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::collect_all;

    fn graph(n: usize, edges: &[(usize, usize, u64)], terminals: &[usize]) -> UndirectedGraph {
        let es: Vec<_> = edges.iter().map(|&(u, v, _)| (u, v)).collect();
        let ws = edges.iter().map(|&(_, _, w)| w).collect();
        UndirectedGraph::weighted(n, &es, ws).unwrap().with_terminals(terminals.to_vec()).unwrap()
    }

    fn trees(g: &UndirectedGraph) -> Vec<String> {
        let solver = SteinerSolver::new(g).unwrap();
        let mut out: Vec<String> =
            collect_all(&mut enumerate_steiner_trees(&solver, true)).unwrap().into_iter().map(Solution::into_string).collect();
        out.sort();
        out
    }

    #[test]
    fn min_paths() {
        let diamond = DistOracle::new(4, &[(0, 1), (1, 3), (0, 2), (2, 3)], &[1, 1, 1, 1]);
        assert_eq!(enumerate_min_paths(&diamond, 0, 3).collect::<Vec<_>>(), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(enumerate_min_paths(&diamond, 2, 2).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        let detour = DistOracle::new(3, &[(0, 1), (0, 2), (2, 1)], &[1, 1, 2]);
        assert_eq!(enumerate_min_paths(&detour, 0, 1).collect::<Vec<_>>(), vec![vec![0]]);
        let split = DistOracle::new(3, &[(0, 1)], &[1]);
        assert_eq!(enumerate_min_paths(&split, 0, 2).count(), 0);
        assert_eq!(diamond.dist(0, 3), Some(2));
    }

    #[test]
    fn preprocessing() {
        assert!(matches!(preprocess(&graph(3, &[(0, 1, 1)], &[2])).unwrap(), Preprocessed::Trivial));
        let p = graph(3, &[(0, 1, 1), (1, 2, 1)], &[0, 2]);
        let Preprocessed::Instance(inst) = preprocess(&p).unwrap() else { panic!() };
        assert_eq!(inst.terminals(), &[0, 2]);
        assert_eq!(inst.pendant_count(), 0);
        let tri = graph(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)], &[0, 1, 2]);
        let Preprocessed::Instance(inst) = preprocess(&tri).unwrap() else { panic!() };
        assert_eq!(inst.terminals(), &[3, 4, 5]);
        assert_eq!(inst.pendant_count(), 3);
        let apart = graph(4, &[(0, 1, 1), (2, 3, 1)], &[0, 3]);
        assert_eq!(preprocess(&apart).err(), Some(SteinerError::DisconnectedTerminals { a: 0, b: 3 }));
    }

    #[test]
    fn table_on_path() {
        let p = graph(3, &[(0, 1, 1), (1, 2, 1)], &[0, 2]);
        let solver = SteinerSolver::new(&p).unwrap();
        let t = solver.table().unwrap();
        assert_eq!(t.value(0b01, 1, 1), Some(1));
        assert_eq!(t.value(0b10, 1, 1), Some(1));
        assert_eq!(t.value(0b01, 1, 0), None);
        assert_eq!(t.value(0b11, 1, 0), Some(2));
        assert_eq!(t.value(0b11, 1, 1), None);
        assert_eq!(solver.root(), Some(1));
        assert_eq!(solver.optimum(), 2);
    }

    #[test]
    fn tree_examples() {
        assert_eq!(trees(&graph(3, &[(0, 1, 1), (1, 2, 1)], &[0, 2])), vec!["1 2,2 3"]);
        // a=1, u=2, v=3, b=4, w=5
        let two_routes = graph(5, &[(0, 1, 1), (1, 2, 2), (2, 3, 1), (1, 4, 1), (4, 2, 1)], &[0, 3]);
        assert_eq!(trees(&two_routes), vec!["1 2,2 3,3 4", "1 2,2 5,3 4,3 5"]);
        assert_eq!(SteinerSolver::new(&two_routes).unwrap().optimum(), 4);
        assert_eq!(trees(&graph(2, &[(0, 1, 3)], &[1])), vec![""]);
        let tri = graph(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)], &[0, 1, 2]);
        assert_eq!(trees(&tri), vec!["1 2,1 3", "1 2,2 3", "1 3,2 3"]);
        let with_island = graph(5, &[(0, 1, 1), (1, 2, 1), (3, 4, 1)], &[0, 2]);
        assert_eq!(trees(&with_island), vec!["1 2,2 3"]);
    }

    #[test]
    fn degree_one_entries_can_undershoot() {
        // t1 - v - t2 with a spur v - w: no tree has v as a leaf, yet the
        // recurrence routes through w and reports a finite value
        let g = graph(4, &[(0, 1, 1), (1, 2, 1), (1, 3, 1)], &[0, 2]);
        let solver = SteinerSolver::new(&g).unwrap();
        assert_eq!(solver.table().unwrap().value(0b11, 1, 1), Some(5));
        assert!(!solver.reachable_entries().contains(&(0b11, 1, 1)));
        assert_eq!(trees(&g), vec!["1 2,2 3"]);
    }

    #[test]
    fn star_and_adjacent_terminals() {
        let star = graph(4, &[(0, 1, 1), (0, 2, 1), (0, 3, 1)], &[1, 2, 3]);
        assert_eq!(trees(&star), vec!["1 2,1 3,1 4"]);
        let pair = graph(2, &[(0, 1, 5)], &[0, 1]);
        assert_eq!(trees(&pair), vec!["1 2"]);
        let c4 = graph(4, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)], &[0, 2]);
        assert_eq!(trees(&c4), vec!["1 2,2 3", "1 4,3 4"]);
    }
}
