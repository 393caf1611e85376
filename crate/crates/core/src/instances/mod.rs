//! Instance data model, text formats and canonical solution encodings.
//!
//! Vertices are `0..n` in memory and `1..=n` in every text format and every
//! canonical encoding.

pub mod canonical;
mod parse;
mod write;

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use thiserror::Error;

pub use parse::parse_instance;
pub use write::write_instance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid instance: {0}")]
    Invariant(String),
    #[error("unbounded instance: variable {variable} has no box bound")]
    UnboundedInstance { variable: usize },
}

impl InstanceError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        InstanceError::Parse { line, message: message.into() }
    }

    pub(crate) fn invariant(message: impl Into<String>) -> Self {
        InstanceError::Invariant(message.into())
    }
}

/// The six problems, by CLI tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemKind {
    Fvst,
    ClosestString,
    Ilp,
    LongestPath,
    VertexCover,
    Steiner,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 6] = [
        ProblemKind::Fvst,
        ProblemKind::ClosestString,
        ProblemKind::Ilp,
        ProblemKind::LongestPath,
        ProblemKind::VertexCover,
        ProblemKind::Steiner,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            ProblemKind::Fvst => "fvst",
            ProblemKind::ClosestString => "closest-string",
            ProblemKind::Ilp => "ilp",
            ProblemKind::LongestPath => "longest-path",
            ProblemKind::VertexCover => "vertex-cover",
            ProblemKind::Steiner => "steiner",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ProblemKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        ProblemKind::ALL
            .into_iter()
            .find(|k| k.tag() == s)
            .ok_or_else(|| format!("unknown problem `{s}`"))
    }
}

/// A tournament: exactly one arc between every pair of distinct vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tournament {
    out: Vec<FixedBitSet>,
}

impl Tournament {
    /// Builds a tournament from its arcs `(u, v)` meaning `u → v`.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self, InstanceError> {
        let mut out = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in arcs {
            if u >= n || v >= n {
                return Err(InstanceError::invariant(format!("arc {} {} out of range", u + 1, v + 1)));
            }
            if u == v {
                return Err(InstanceError::invariant(format!("self-loop at {}", u + 1)));
            }
            if out[u][v] || out[v][u] {
                return Err(InstanceError::invariant(format!(
                    "pair {{{}, {}}} oriented twice",
                    u.min(v) + 1,
                    u.max(v) + 1
                )));
            }
            out[u].insert(v);
        }
        for u in 0..n {
            for v in u + 1..n {
                if !out[u][v] && !out[v][u] {
                    return Err(InstanceError::invariant(format!("pair {{{}, {}}} unoriented", u + 1, v + 1)));
                }
            }
        }
        Ok(Tournament { out })
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out[u][v]
    }

    /// Arcs in ascending order of the unordered pair.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut arcs = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                arcs.push(if self.out[u][v] { (u, v) } else { (v, u) });
            }
        }
        arcs
    }
}

/// A simple undirected graph, optionally with positive integer edge weights
/// and a terminal set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    weights: Option<Vec<u64>>,
    terminals: Option<Vec<usize>>,
    adj: Vec<Vec<usize>>,
    adj_bits: Vec<FixedBitSet>,
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, InstanceError> {
        Self::build(n, edges, None, None)
    }

    pub fn weighted(n: usize, edges: &[(usize, usize)], weights: Vec<u64>) -> Result<Self, InstanceError> {
        Self::build(n, edges, Some(weights), None)
    }

    pub fn with_terminals(mut self, terminals: Vec<usize>) -> Result<Self, InstanceError> {
        let mut seen = FixedBitSet::with_capacity(self.n);
        for &t in &terminals {
            if t >= self.n {
                return Err(InstanceError::invariant(format!("terminal {} out of range", t + 1)));
            }
            if seen.put(t) {
                return Err(InstanceError::invariant(format!("terminal {} listed twice", t + 1)));
            }
        }
        self.terminals = Some(terminals);
        Ok(self)
    }

    fn build(
        n: usize,
        edges: &[(usize, usize)],
        weights: Option<Vec<u64>>,
        terminals: Option<Vec<usize>>,
    ) -> Result<Self, InstanceError> {
        let mut adj = vec![Vec::new(); n];
        let mut adj_bits = vec![FixedBitSet::with_capacity(n); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(InstanceError::invariant(format!("edge {} {} out of range", u + 1, v + 1)));
            }
            if u == v {
                return Err(InstanceError::invariant(format!("self-loop at {}", u + 1)));
            }
            if adj_bits[u][v] {
                return Err(InstanceError::invariant(format!("parallel edge {} {}", u + 1, v + 1)));
            }
            adj_bits[u].insert(v);
            adj_bits[v].insert(u);
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        if let Some(w) = &weights {
            if w.len() != edges.len() {
                return Err(InstanceError::invariant("weight count differs from edge count"));
            }
            if let Some(i) = w.iter().position(|&x| x == 0) {
                let (u, v) = edges[i];
                return Err(InstanceError::invariant(format!("edge {} {} has nonpositive weight", u + 1, v + 1)));
            }
        }
        let g = UndirectedGraph { n, edges: edges.to_vec(), weights, terminals: None, adj, adj_bits };
        match terminals {
            Some(t) => g.with_terminals(t),
            None => Ok(g),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in input order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj_bits[u][v]
    }

    pub fn is_weighted(&self) -> bool {
        self.weights.is_some()
    }

    /// Weight of edge `i` (1 for unweighted graphs).
    pub fn weight(&self, i: usize) -> u64 {
        self.weights.as_ref().map_or(1, |w| w[i])
    }

    pub fn weights(&self) -> Option<&[u64]> {
        self.weights.as_deref()
    }

    pub fn terminals(&self) -> Option<&[usize]> {
        self.terminals.as_deref()
    }
}

/// Equal-length words over a fixed alphabet, stored as alphabet indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StringSet {
    alphabet: Vec<char>,
    len: usize,
    strings: Vec<Vec<usize>>,
}

impl StringSet {
    pub fn new(alphabet: Vec<char>, len: usize, words: &[&str]) -> Result<Self, InstanceError> {
        for (i, c) in alphabet.iter().enumerate() {
            if c.is_whitespace() {
                return Err(InstanceError::invariant("alphabet contains whitespace"));
            }
            if alphabet[..i].contains(c) {
                return Err(InstanceError::invariant(format!("alphabet repeats `{c}`")));
            }
        }
        if alphabet.is_empty() {
            return Err(InstanceError::invariant("empty alphabet"));
        }
        let mut strings = Vec::with_capacity(words.len());
        for w in words {
            let mut s = Vec::with_capacity(len);
            for c in w.chars() {
                let idx = alphabet
                    .iter()
                    .position(|a| *a == c)
                    .ok_or_else(|| InstanceError::invariant(format!("character `{c}` not in alphabet")))?;
                s.push(idx);
            }
            if s.len() != len {
                return Err(InstanceError::invariant(format!("string `{w}` does not have length {len}")));
            }
            strings.push(s);
        }
        Ok(StringSet { alphabet, len, strings })
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.strings.is_empty()
    }

    pub fn count(&self) -> usize {
        self.strings.len()
    }

    pub fn strings(&self) -> &[Vec<usize>] {
        &self.strings
    }

    pub fn render(&self, word: &[usize]) -> String {
        word.iter().map(|&i| self.alphabet[i]).collect()
    }
}

/// A system `A x ≤ b` over `k` integer variables with a box for each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IlpSystem {
    rows: Vec<(Vec<i64>, i64)>,
    bounds: Vec<(i64, i64)>,
}

impl IlpSystem {
    /// `bounds[i]` is the box of variable `i`; a missing box is rejected. An
    /// empty box (`lo > hi`) is allowed and has no integer points.
    pub fn new(k: usize, rows: Vec<(Vec<i64>, i64)>, bounds: Vec<Option<(i64, i64)>>) -> Result<Self, InstanceError> {
        if bounds.len() != k {
            return Err(InstanceError::invariant(format!("expected {k} box bounds, got {}", bounds.len())));
        }
        for (a, _) in &rows {
            if a.len() != k {
                return Err(InstanceError::invariant(format!("row has {} coefficients, expected {k}", a.len())));
            }
        }
        let bounds = bounds
            .into_iter()
            .enumerate()
            .map(|(i, b)| b.ok_or(InstanceError::UnboundedInstance { variable: i + 1 }))
            .collect::<Result<_, _>>()?;
        Ok(IlpSystem { rows, bounds })
    }

    pub fn k(&self) -> usize {
        self.bounds.len()
    }

    pub fn rows(&self) -> &[(Vec<i64>, i64)] {
        &self.rows
    }

    pub fn bounds(&self) -> &[(i64, i64)] {
        &self.bounds
    }

    pub fn satisfies(&self, x: &[i64]) -> bool {
        x.iter().zip(&self.bounds).all(|(v, (lo, hi))| lo <= v && v <= hi)
            && self.rows.iter().all(|(a, b)| {
                a.iter().zip(x).map(|(c, v)| *c as i128 * *v as i128).sum::<i128>() <= *b as i128
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Instance {
    Tournament(Tournament),
    Graph(UndirectedGraph),
    Strings(StringSet),
    Ilp(IlpSystem),
}

impl Instance {
    pub fn as_tournament(&self) -> Option<&Tournament> {
        match self {
            Instance::Tournament(t) => Some(t),
            _ => None,
        }
    }

    pub fn as_graph(&self) -> Option<&UndirectedGraph> {
        match self {
            Instance::Graph(g) => Some(g),
            _ => None,
        }
    }

    pub fn as_strings(&self) -> Option<&StringSet> {
        match self {
            Instance::Strings(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_ilp(&self) -> Option<&IlpSystem> {
        match self {
            Instance::Ilp(s) => Some(s),
            _ => None,
        }
    }
}
