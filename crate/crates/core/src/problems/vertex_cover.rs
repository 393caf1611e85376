//! Vertex covers of size at most `k` by iterative compression.
//!
//! Vertices are introduced in input order. `Gᵢ` is the subgraph induced by
//! the first `i` vertices; a step lifts a cover of `Gᵢ` to `G_{i+1}` by adding
//! the new vertex and then compresses it back to size `k`.

use crate::framework::{run_iterative_compression, CompressionRun, CompressionSpec};
use crate::instances::{canonical, UndirectedGraph};
use crate::stream::Solution;
use crate::subsets::{subsets_by_decreasing_size, BoundedSubsets};

pub struct VertexCoverSpec<'g> {
    graph: &'g UndirectedGraph,
}

impl<'g> VertexCoverSpec<'g> {
    pub fn new(graph: &'g UndirectedGraph) -> Self {
        VertexCoverSpec { graph }
    }
}

/// Whether `cover` covers every edge of the subgraph induced by `0..prefix`.
pub fn covers_prefix(g: &UndirectedGraph, prefix: usize, cover: &[usize]) -> bool {
    let mut in_cover = vec![false; g.n()];
    for &v in cover {
        in_cover[v] = true;
    }
    g.edges()
        .iter()
        .all(|&(u, v)| u >= prefix || v >= prefix || in_cover[u] || in_cover[v])
}

/// Covers of `G[0..prefix]` of size at most `k`, partitioned by their
/// intersection `C` with the cover `oversized`. Within a cell the base cover
/// `C ∪ N(F)` comes first, followed by its extensions by vertices outside
/// `C ∪ N(F) ∪ F`, by size and then lexicographically.
pub fn vc_compress<'g>(
    g: &'g UndirectedGraph,
    prefix: usize,
    k: usize,
    oversized: &[usize],
    emit_all: bool,
) -> Box<dyn Iterator<Item = Vec<usize>> + 'g> {
    let s_prime = oversized.to_vec();
    let cells = subsets_by_decreasing_size(s_prime.len()).filter_map(move |idx| {
        let mut in_c = vec![false; s_prime.len()];
        for &i in &idx {
            in_c[i] = true;
        }
        let f: Vec<usize> = (0..s_prime.len()).filter(|&i| !in_c[i]).map(|i| s_prime[i]).collect();
        let mut marks = vec![0u8; prefix];
        const IN_S: u8 = 1;
        const IN_F: u8 = 2;
        for &v in &f {
            marks[v] = IN_F;
        }
        for &i in &idx {
            marks[s_prime[i]] = IN_S;
        }
        for &v in &f {
            for &u in g.neighbors(v) {
                if u < prefix {
                    if marks[u] == IN_F {
                        return None;
                    }
                    marks[u] = IN_S;
                }
            }
        }
        let base: Vec<usize> = (0..prefix).filter(|&v| marks[v] == IN_S).collect();
        if base.len() > k {
            return None;
        }
        let free: Vec<usize> = (0..prefix).filter(|&v| marks[v] == 0).collect();
        Some((base, free))
    });
    let covers = cells.flat_map(move |(base, free)| {
        let room = k - base.len();
        BoundedSubsets::new(free, room).map(move |extra| {
            let mut s = base.clone();
            s.extend(extra);
            s.sort_unstable();
            s
        })
    });
    if emit_all {
        Box::new(covers)
    } else {
        Box::new(covers.take(1))
    }
}

impl CompressionSpec for VertexCoverSpec<'_> {
    type Prefix = usize;
    type Sol = Vec<usize>;

    fn units(&self) -> usize {
        self.graph.n()
    }

    fn initial(&self) -> (usize, Vec<usize>) {
        (0, Vec::new())
    }

    fn grow(&self, &i: &usize, _k: usize, sol: &Vec<usize>) -> (usize, Vec<usize>) {
        let mut s = sol.clone();
        s.push(i);
        (i + 1, s)
    }

    fn compress<'a>(
        &'a self,
        &i: &usize,
        k: usize,
        oversized: &Vec<usize>,
        emit_all: bool,
    ) -> Box<dyn Iterator<Item = Vec<usize>> + 'a> {
        vc_compress(self.graph, i, k, oversized, emit_all)
    }

    fn is_solution(&self, &i: &usize, k: usize, sol: &Vec<usize>) -> bool {
        sol.len() <= k && covers_prefix(self.graph, i, sol)
    }

    fn encode(&self, sol: &Vec<usize>) -> Solution {
        canonical::vertex_set(sol.iter().copied())
    }
}

pub fn enumerate_vertex_covers<'a>(spec: &'a VertexCoverSpec<'_>, k: usize, verify: bool) -> CompressionRun<'a, VertexCoverSpec<'a>> {
    run_iterative_compression(spec, k, verify)
}
