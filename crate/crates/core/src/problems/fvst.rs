//! Feedback vertex sets of size at most `k` in a tournament, by a bounded
//! search tree over directed triangles.
//!
//! A tournament is acyclic iff it has no directed triangle, so every feedback
//! vertex set meets every triangle. A node commits some vertices to the
//! solution (`deleted`) and some to its complement (`kept`); splitting on a
//! triangle enumerates which of its vertices the solution contains.

use fixedbitset::FixedBitSet;

use crate::framework::{run_bounded_tree, BoundedTreeAdapter, BoundedTreeRun};
use crate::instances::{canonical, Tournament};
use crate::stream::{BoxStream, IterStream};
use crate::subsets::BoundedSubsets;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfvstNode {
    pub deleted: FixedBitSet,
    pub kept: FixedBitSet,
    pub budget: usize,
}

impl GfvstNode {
    pub fn root(n: usize, k: usize) -> Self {
        GfvstNode { deleted: FixedBitSet::with_capacity(n), kept: FixedBitSet::with_capacity(n), budget: k }
    }

    pub fn from_sets(n: usize, deleted: &[usize], kept: &[usize], budget: usize) -> Self {
        let mut node = Self::root(n, budget);
        node.deleted.extend(deleted.iter().copied());
        node.kept.extend(kept.iter().copied());
        node
    }
}

/// First directed triangle among the vertices in `within`, as the cyclic
/// order starting at its smallest vertex; triples are scanned in
/// lexicographic order.
pub fn find_triangle_within(t: &Tournament, within: &FixedBitSet) -> Option<[usize; 3]> {
    let vs: Vec<usize> = within.ones().collect();
    for (i, &a) in vs.iter().enumerate() {
        for (j, &b) in vs.iter().enumerate().skip(i + 1) {
            for &c in &vs[j + 1..] {
                if t.has_arc(a, b) && t.has_arc(b, c) && t.has_arc(c, a) {
                    return Some([a, b, c]);
                }
                if t.has_arc(a, c) && t.has_arc(c, b) && t.has_arc(b, a) {
                    return Some([a, c, b]);
                }
            }
        }
    }
    None
}

/// Some directed triangle of `t` minus `excluded`, or `None` if what remains
/// is acyclic.
pub fn find_triangle(t: &Tournament, excluded: &FixedBitSet) -> Option<[usize; 3]> {
    let mut within = FixedBitSet::with_capacity(t.n());
    within.insert_range(..);
    within.difference_with(excluded);
    find_triangle_within(t, &within)
}

pub struct FvstAdapter<'t> {
    tournament: &'t Tournament,
    k: usize,
}

impl<'t> FvstAdapter<'t> {
    pub fn new(tournament: &'t Tournament, k: usize) -> Self {
        FvstAdapter { tournament, k }
    }

    pub fn root(&self) -> GfvstNode {
        GfvstNode::root(self.tournament.n(), self.k)
    }

    fn kept_is_acyclic(&self, node: &GfvstNode) -> bool {
        find_triangle_within(self.tournament, &node.kept).is_none()
    }
}

impl BoundedTreeAdapter for FvstAdapter<'_> {
    type Node = GfvstNode;

    /// One child per nonempty subset of the triangle that avoids `kept` and
    /// fits the budget; the rest of the triangle is kept.
    fn split(&self, node: &GfvstNode) -> Vec<GfvstNode> {
        let Some(tri) = find_triangle(self.tournament, &node.deleted) else {
            return Vec::new();
        };
        let mut children = Vec::with_capacity(7);
        for mask in 1u8..8 {
            let chosen: Vec<usize> = (0..3).filter(|i| mask >> i & 1 == 1).map(|i| tri[i]).collect();
            if chosen.len() > node.budget || chosen.iter().any(|&v| node.kept[v]) {
                continue;
            }
            let mut child = node.clone();
            for (i, &v) in tri.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    child.deleted.insert(v);
                } else {
                    child.kept.insert(v);
                }
            }
            child.budget -= chosen.len();
            children.push(child);
        }
        children
    }

    fn measure(&self, node: &GfvstNode) -> u64 {
        let cyclic_rest = find_triangle(self.tournament, &node.deleted).is_some();
        if cyclic_rest && self.kept_is_acyclic(node) {
            node.budget as u64
        } else {
            0
        }
    }

    /// At an acyclic remainder every superset of `deleted` within budget is a
    /// solution (deleting vertices keeps a tournament acyclic).
    fn leaf_enum<'a>(&'a self, node: &GfvstNode) -> BoxStream<'a> {
        if !self.kept_is_acyclic(node) || find_triangle(self.tournament, &node.deleted).is_some() {
            return crate::stream::empty_stream();
        }
        let base: Vec<usize> = node.deleted.ones().collect();
        let free: Vec<usize> =
            (0..self.tournament.n()).filter(|&v| !node.deleted[v] && !node.kept[v]).collect();
        let it = BoundedSubsets::new(free, node.budget).map(move |extra| {
            canonical::vertex_set(base.iter().copied().chain(extra))
        });
        Box::new(IterStream::new(it))
    }

    fn breadth_bound(&self) -> usize {
        7
    }

    fn depth_bound(&self) -> u64 {
        self.k as u64
    }
}

/// All feedback vertex sets with at most `k` vertices.
pub fn enumerate_fvst<'a, 't>(adapter: &'a FvstAdapter<'t>, verify: bool) -> BoundedTreeRun<'a, FvstAdapter<'t>> {
    run_bounded_tree(adapter, adapter.root(), verify)
}
