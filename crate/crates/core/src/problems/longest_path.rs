//! Simple paths on exactly `k` vertices, as a union over the colorings of a
//! perfect hash family of the colorful paths of each coloring.
//!
//! A path and its reversal are the same solution. Each per-coloring stream
//! emits only the orientation that is lexicographically smaller, and the
//! membership test works on that canonical form.

use std::collections::BTreeMap;

use thiserror::Error;

use super::hash_family::{build_hash_family, Coloring, HashFamilyError, PerfectHashFamily};
use crate::error::EnumError;
use crate::framework::{run_union, UnionRun, UnionSpec};
use crate::instances::{canonical, UndirectedGraph};
use crate::stream::{BoxStream, Solution, SolutionStream};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("not a simple path on {k} vertices of the graph: {reason}")]
    InvalidPath { k: usize, reason: String },
}

/// `P(C, u)`: for a color set `C` (bitmask) and an end vertex `u`, the
/// vertices that precede `u` on some path whose colors are exactly `C`.
#[derive(Debug, Clone, Default)]
pub struct PathTable {
    k: usize,
    entries: BTreeMap<(u32, usize), Vec<usize>>,
}

impl PathTable {
    pub fn get(&self, colors: u32, u: usize) -> &[usize] {
        self.entries.get(&(colors, u)).map_or(&[], Vec::as_slice)
    }

    pub fn full_mask(&self) -> u32 {
        full_mask(self.k)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn full_mask(k: usize) -> u32 {
    if k >= 32 {
        u32::MAX
    } else {
        (1u32 << k) - 1
    }
}

/// Fills `P(C, u)` for all `|C| ≥ 2` by growing color sets one vertex at a
/// time: `v ∈ P(C, u)` iff `vu` is an edge, `γ(u) ∈ C` and `P(C ∖ {γ(u)}, v)`
/// is nonempty (for `|C| = 2`: iff `vu` is an edge with `γ(v) ≠ γ(u)`).
pub fn compute_path_table(g: &UndirectedGraph, k: usize, coloring: &Coloring) -> PathTable {
    let mut entries: BTreeMap<(u32, usize), Vec<usize>> = BTreeMap::new();
    if k < 2 {
        return PathTable { k, entries };
    }
    let bit = |v: usize| 1u32 << coloring.color(v);
    let mut level: Vec<(u32, usize)> = Vec::new();
    for &(v, w) in g.edges() {
        if coloring.color(v) != coloring.color(w) {
            let c = bit(v) | bit(w);
            entries.entry((c, w)).or_default().push(v);
            entries.entry((c, v)).or_default().push(w);
        }
    }
    level.extend(entries.keys().copied());
    for _ in 3..=k {
        let mut next: BTreeMap<(u32, usize), Vec<usize>> = BTreeMap::new();
        for &(c, v) in &level {
            for &u in g.neighbors(v) {
                if c & bit(u) == 0 {
                    next.entry((c | bit(u), u)).or_default().push(v);
                }
            }
        }
        level = next.keys().copied().collect();
        entries.extend(next);
    }
    for preds in entries.values_mut() {
        preds.sort_unstable();
        preds.dedup();
    }
    PathTable { k, entries }
}

/// Whether `path` (a simple path on `k` vertices of `g`) uses `k` distinct
/// colors under `coloring`.
pub fn is_colorful(g: &UndirectedGraph, k: usize, coloring: &Coloring, path: &[usize]) -> Result<bool, PathError> {
    let invalid = |reason: String| PathError::InvalidPath { k, reason };
    if path.len() != k {
        return Err(invalid(format!("has {} vertices", path.len())));
    }
    if let Some(&v) = path.iter().find(|&&v| v >= g.n()) {
        return Err(invalid(format!("vertex {} out of range", v + 1)));
    }
    for (i, &v) in path.iter().enumerate() {
        if path[..i].contains(&v) {
            return Err(invalid(format!("vertex {} repeats", v + 1)));
        }
    }
    if let Some(w) = path.windows(2).find(|w| !g.adjacent(w[0], w[1])) {
        return Err(invalid(format!("{} and {} are not adjacent", w[0] + 1, w[1] + 1)));
    }
    Ok(coloring.is_rainbow(path))
}

/// Lazily built stream of the `k`-colorful paths of one coloring, by `k`
/// nested loops over the table, held as a cursor stack.
pub struct ColorfulPaths<'a> {
    g: &'a UndirectedGraph,
    k: usize,
    coloring: &'a Coloring,
    table: Option<PathTable>,
    levels: Vec<(Vec<usize>, usize)>,
    path: Vec<usize>,
    done: bool,
}

pub fn enumerate_colorful_paths<'a>(g: &'a UndirectedGraph, k: usize, coloring: &'a Coloring) -> ColorfulPaths<'a> {
    ColorfulPaths { g, k, coloring, table: None, levels: Vec::new(), path: Vec::new(), done: k == 0 }
}

impl ColorfulPaths<'_> {
    fn start(&mut self) {
        let table = compute_path_table(self.g, self.k, self.coloring);
        let first: Vec<usize> = if self.k == 1 {
            (0..self.g.n()).collect()
        } else {
            let full = table.full_mask();
            (0..self.g.n()).filter(|&v| !table.get(full, v).is_empty()).collect()
        };
        self.levels.push((first, 0));
        self.table = Some(table);
    }
}

impl SolutionStream for ColorfulPaths<'_> {
    fn next_solution(&mut self) -> Result<Option<Solution>, EnumError> {
        if self.done {
            return Ok(None);
        }
        if self.table.is_none() {
            self.start();
        }
        let table = self.table.as_ref().expect("table built");
        loop {
            let depth = self.levels.len();
            let Some((cands, idx)) = self.levels.last_mut() else {
                self.done = true;
                return Ok(None);
            };
            if *idx == cands.len() {
                self.levels.pop();
                continue;
            }
            let v = cands[*idx];
            *idx += 1;
            self.path.truncate(depth - 1);
            self.path.push(v);
            if self.path.len() == self.k {
                if canonical::path_orientation(&self.path) {
                    return Ok(Some(canonical::path(&self.path)));
                }
                continue;
            }
            // loop i picks from P(all colors minus those of v_1..v_{i-2}, v_{i-1})
            let used = self.path[..self.path.len() - 1]
                .iter()
                .fold(0u32, |m, &u| m | 1 << self.coloring.color(u));
            let next = table.get(table.full_mask() & !used, v).to_vec();
            self.levels.push((next, 0));
        }
    }
}

pub struct LongestPathSpec<'g> {
    graph: &'g UndirectedGraph,
    k: usize,
    family: PerfectHashFamily,
}

impl<'g> LongestPathSpec<'g> {
    pub fn new(graph: &'g UndirectedGraph, k: usize) -> Result<Self, HashFamilyError> {
        let family = build_hash_family(graph.n(), k)?;
        Ok(LongestPathSpec { graph, k, family })
    }

    pub fn family(&self) -> &PerfectHashFamily {
        &self.family
    }
}

impl UnionSpec for LongestPathSpec<'_> {
    fn identifiers(&self) -> usize {
        if self.k == 0 {
            0
        } else {
            self.family.len()
        }
    }

    fn stream_for<'a>(&'a self, id: usize) -> BoxStream<'a> {
        Box::new(enumerate_colorful_paths(self.graph, self.k, &self.family.colorings[id]))
    }

    fn member(&self, id: usize, solution: &Solution) -> bool {
        let Some(path) = canonical::decode_vertices(solution.as_str()) else {
            return false;
        };
        canonical::path(&path) == *solution
            && is_colorful(self.graph, self.k, &self.family.colorings[id], &path).unwrap_or(false)
    }
}

/// Every simple path on `k` vertices, each once.
pub fn enumerate_longest_paths<'a>(spec: &'a LongestPathSpec<'_>, verify: bool) -> UnionRun<'a, LongestPathSpec<'a>> {
    run_union(spec, verify)
}
