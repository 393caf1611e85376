//! Exhaustive reference enumerators. They test every candidate against the
//! defining predicate of each problem and share nothing with the schemes
//! beyond instance types and canonical encodings.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::instances::{canonical, IlpSystem, Instance, ProblemKind, StringSet, Tournament, UndirectedGraph};
use crate::stream::Solution;

/// Largest search space the oracle agrees to walk.
pub const MAX_CANDIDATES: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search space of {candidates} candidates exceeds the oracle guard")]
    TooLarge { candidates: u64 },
    #[error("problem {kind} cannot run on this instance type")]
    WrongInstance { kind: ProblemKind },
}

pub fn brute_force(instance: &Instance, kind: ProblemKind, k: usize) -> Result<BTreeSet<Solution>, OracleError> {
    let wrong = || OracleError::WrongInstance { kind };
    match kind {
        ProblemKind::Fvst => fvst(instance.as_tournament().ok_or_else(wrong)?, k),
        ProblemKind::ClosestString => closest_strings(instance.as_strings().ok_or_else(wrong)?, k),
        ProblemKind::Ilp => ilp_points(instance.as_ilp().ok_or_else(wrong)?),
        ProblemKind::LongestPath => paths(instance.as_graph().ok_or_else(wrong)?, k),
        ProblemKind::VertexCover => vertex_covers(instance.as_graph().ok_or_else(wrong)?, k),
        ProblemKind::Steiner => steiner_trees(instance.as_graph().ok_or_else(wrong)?),
    }
}

fn guard(candidates: u64) -> Result<(), OracleError> {
    if candidates > MAX_CANDIDATES {
        Err(OracleError::TooLarge { candidates })
    } else {
        Ok(())
    }
}

fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r: u64 = 1;
    for i in 0..k.min(n - k) {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

fn subsets_up_to(n: usize, k: usize) -> u64 {
    (0..=k.min(n)).fold(0u64, |acc, i| acc.saturating_add(choose(n as u64, i as u64)))
}

/// Calls `f` on every subset of `0..n` with at most `k` elements, as a mask.
fn for_small_masks(n: usize, k: usize, mut f: impl FnMut(&[bool])) {
    let mut chosen = vec![false; n];
    fn rec(i: usize, left: usize, chosen: &mut Vec<bool>, f: &mut dyn FnMut(&[bool])) {
        if i == chosen.len() {
            f(chosen);
            return;
        }
        rec(i + 1, left, chosen, f);
        if left > 0 {
            chosen[i] = true;
            rec(i + 1, left - 1, chosen, f);
            chosen[i] = false;
        }
    }
    rec(0, k, &mut chosen, &mut f);
}

fn set_of(mask: &[bool]) -> Solution {
    canonical::vertex_set((0..mask.len()).filter(|&v| mask[v]))
}

/// `T - S` is acyclic iff repeatedly removing vertices with no incoming arc
/// empties it.
fn is_acyclic_without(t: &Tournament, removed: &[bool]) -> bool {
    let n = t.n();
    let mut indeg = vec![0usize; n];
    for u in (0..n).filter(|&u| !removed[u]) {
        for v in (0..n).filter(|&v| !removed[v]) {
            if t.has_arc(u, v) {
                indeg[v] += 1;
            }
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| !removed[v] && indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(u) = queue.pop() {
        seen += 1;
        for v in (0..n).filter(|&v| !removed[v]) {
            if t.has_arc(u, v) {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    queue.push(v);
                }
            }
        }
    }
    seen == removed.iter().filter(|r| !**r).count()
}

fn fvst(t: &Tournament, k: usize) -> Result<BTreeSet<Solution>, OracleError> {
    guard(subsets_up_to(t.n(), k))?;
    let mut out = BTreeSet::new();
    for_small_masks(t.n(), k, |mask| {
        if is_acyclic_without(t, mask) {
            out.insert(set_of(mask));
        }
    });
    Ok(out)
}

fn closest_strings(set: &StringSet, k: usize) -> Result<BTreeSet<Solution>, OracleError> {
    let sigma = set.alphabet().len() as u64;
    let total = (0..set.len()).try_fold(1u64, |acc, _| acc.checked_mul(sigma)).unwrap_or(u64::MAX);
    guard(total)?;
    let mut out = BTreeSet::new();
    if sigma == 0 && !set.is_empty() {
        return Ok(out);
    }
    let mut word = vec![0usize; set.len()];
    loop {
        let close = set.strings().iter().all(|x| x.iter().zip(&word).filter(|(a, b)| a != b).count() <= k);
        if close {
            out.insert(canonical::string(&set.render(&word)));
        }
        let Some(i) = (0..word.len()).rev().find(|&i| word[i] + 1 < sigma as usize) else {
            break;
        };
        word[i] += 1;
        word[i + 1..].iter_mut().for_each(|c| *c = 0);
    }
    Ok(out)
}

fn ilp_points(sys: &IlpSystem) -> Result<BTreeSet<Solution>, OracleError> {
    let mut total: u64 = 1;
    for &(lo, hi) in sys.bounds() {
        if lo > hi {
            return Ok(BTreeSet::new());
        }
        let width = (hi as i128 - lo as i128 + 1).min(u64::MAX as i128) as u64;
        total = total.saturating_mul(width);
    }
    guard(total)?;
    let mut out = BTreeSet::new();
    let mut x: Vec<i64> = sys.bounds().iter().map(|b| b.0).collect();
    loop {
        if sys.satisfies(&x) {
            out.insert(canonical::int_vector(&x));
        }
        let Some(i) = (0..x.len()).rev().find(|&i| x[i] < sys.bounds()[i].1) else {
            break;
        };
        x[i] += 1;
        for j in i + 1..x.len() {
            x[j] = sys.bounds()[j].0;
        }
    }
    Ok(out)
}

fn paths(g: &UndirectedGraph, k: usize) -> Result<BTreeSet<Solution>, OracleError> {
    let n = g.n() as u64;
    let sequences = (0..k).try_fold(1u64, |acc, i| acc.checked_mul(n.saturating_sub(i as u64))).unwrap_or(u64::MAX);
    guard(sequences)?;
    let mut out = BTreeSet::new();
    if k == 0 {
        return Ok(out);
    }
    fn extend(g: &UndirectedGraph, k: usize, seq: &mut Vec<usize>, out: &mut BTreeSet<Solution>) {
        if seq.len() == k {
            out.insert(canonical::path(seq));
            return;
        }
        let last = *seq.last().expect("nonempty");
        for v in 0..g.n() {
            if g.adjacent(last, v) && !seq.contains(&v) {
                seq.push(v);
                extend(g, k, seq, out);
                seq.pop();
            }
        }
    }
    for v in 0..g.n() {
        extend(g, k, &mut vec![v], &mut out);
    }
    Ok(out)
}

fn vertex_covers(g: &UndirectedGraph, k: usize) -> Result<BTreeSet<Solution>, OracleError> {
    guard(subsets_up_to(g.n(), k))?;
    let mut out = BTreeSet::new();
    for_small_masks(g.n(), k, |mask| {
        if g.edges().iter().all(|&(u, v)| mask[u] || mask[v]) {
            out.insert(set_of(mask));
        }
    });
    Ok(out)
}

/// Connected-components labelling restricted to the chosen edges.
fn components(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for (u, v) in edges {
        let (a, b) = (root(&mut parent, u), root(&mut parent, v));
        parent[a] = b;
    }
    (0..n).map(|x| root(&mut parent, x)).collect()
}

/// Minimum spanning tree weight of `G[in_u]`, `None` if it is disconnected.
fn mst_weight(g: &UndirectedGraph, in_u: &[bool]) -> Option<u64> {
    let mut inner: Vec<usize> = (0..g.edges().len())
        .filter(|&i| {
            let (a, b) = g.edges()[i];
            in_u[a] && in_u[b]
        })
        .collect();
    inner.sort_by_key(|&i| g.weight(i));
    let mut comp: Vec<usize> = (0..g.n()).collect();
    let mut total = 0;
    let mut used = 0;
    for i in inner {
        let (a, b) = g.edges()[i];
        let (ca, cb) = (comp[a], comp[b]);
        if ca != cb {
            comp.iter_mut().filter(|c| **c == ca).for_each(|c| *c = cb);
            total += g.weight(i);
            used += 1;
        }
    }
    (used + 1 == in_u.iter().filter(|x| **x).count()).then_some(total)
}

fn steiner_trees(g: &UndirectedGraph) -> Result<BTreeSet<Solution>, OracleError> {
    let terminals = g.terminals().unwrap_or(&[]);
    let mut out = BTreeSet::new();
    if terminals.len() <= 1 {
        out.insert(canonical::edge_set(std::iter::empty()));
        return Ok(out);
    }
    let n = g.n();
    let m = g.edges().len();
    let free: Vec<usize> = (0..n).filter(|v| !terminals.contains(v)).collect();
    let vertex_sets = 1u64.checked_shl(free.len() as u32).unwrap_or(u64::MAX);
    guard(vertex_sets.saturating_add(subsets_up_to(m, n.saturating_sub(1))))?;

    let mut best: Option<u64> = None;
    for bits in 0..vertex_sets {
        let mut in_u = vec![false; n];
        terminals.iter().for_each(|&t| in_u[t] = true);
        for (i, &v) in free.iter().enumerate() {
            in_u[v] = bits >> i & 1 == 1;
        }
        if let Some(w) = mst_weight(g, &in_u) {
            best = Some(best.map_or(w, |b| b.min(w)));
        }
    }
    let Some(opt) = best else {
        return Ok(out);
    };

    // include/exclude over edges, keeping the chosen set a forest within budget
    fn search(
        g: &UndirectedGraph,
        terminals: &[usize],
        opt: u64,
        i: usize,
        weight: u64,
        chosen: &mut Vec<usize>,
        out: &mut BTreeSet<Solution>,
    ) {
        if i == g.edges().len() {
            if weight != opt {
                return;
            }
            let comp = components(g.n(), chosen.iter().map(|&e| g.edges()[e]));
            let c = comp[terminals[0]];
            let touched: BTreeSet<usize> = chosen.iter().flat_map(|&e| [g.edges()[e].0, g.edges()[e].1]).collect();
            if terminals.iter().all(|&t| comp[t] == c) && touched.iter().all(|&v| comp[v] == c) {
                out.insert(canonical::edge_set(chosen.iter().map(|&e| g.edges()[e])));
            }
            return;
        }
        search(g, terminals, opt, i + 1, weight, chosen, out);
        let w = weight + g.weight(i);
        if w <= opt {
            let (a, b) = g.edges()[i];
            let comp = components(g.n(), chosen.iter().map(|&e| g.edges()[e]));
            if comp[a] != comp[b] {
                chosen.push(i);
                search(g, terminals, opt, i + 1, w, chosen, out);
                chosen.pop();
            }
        }
    }
    search(g, terminals, opt, 0, 0, &mut Vec::new(), &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(set: &BTreeSet<Solution>) -> Vec<&str> {
        set.iter().map(Solution::as_str).collect()
    }

    #[test]
    fn examples() {
        let t3 = Instance::Tournament(Tournament::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap());
        assert_eq!(strs(&brute_force(&t3, ProblemKind::Fvst, 1).unwrap()), vec!["1", "2", "3"]);
        let edge = Instance::Graph(UndirectedGraph::new(2, &[(0, 1)]).unwrap());
        assert_eq!(strs(&brute_force(&edge, ProblemKind::VertexCover, 1).unwrap()), vec!["1", "2"]);
        let p = UndirectedGraph::weighted(3, &[(0, 1), (1, 2)], vec![1, 1]).unwrap().with_terminals(vec![0, 2]).unwrap();
        assert_eq!(strs(&brute_force(&Instance::Graph(p), ProblemKind::Steiner, 0).unwrap()), vec!["1 2,2 3"]);
    }

    #[test]
    fn two_route_steiner() {
        let g = UndirectedGraph::weighted(5, &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 2)], vec![1, 2, 1, 1, 1])
            .unwrap()
            .with_terminals(vec![0, 3])
            .unwrap();
        let got = brute_force(&Instance::Graph(g), ProblemKind::Steiner, 0).unwrap();
        assert_eq!(strs(&got), vec!["1 2,2 3,3 4", "1 2,2 5,3 4,3 5"]);
    }

    #[test]
    fn other_problems() {
        let strings = StringSet::new(vec!['a', 'b'], 2, &["aa", "bb"]).unwrap();
        assert_eq!(strs(&brute_force(&Instance::Strings(strings), ProblemKind::ClosestString, 1).unwrap()), vec!["ab", "ba"]);
        let sys = IlpSystem::new(2, vec![(vec![1, 1], 1)], vec![Some((0, 1)), Some((0, 1))]).unwrap();
        assert_eq!(strs(&brute_force(&Instance::Ilp(sys), ProblemKind::Ilp, 0).unwrap()), vec!["0 0", "0 1", "1 0"]);
        let c4 = Instance::Graph(UndirectedGraph::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap());
        assert_eq!(brute_force(&c4, ProblemKind::LongestPath, 3).unwrap().len(), 4);
        assert_eq!(brute_force(&c4, ProblemKind::LongestPath, 4).unwrap().len(), 4);
        assert!(brute_force(&c4, ProblemKind::LongestPath, 0).unwrap().is_empty());
    }

    #[test]
    fn guard_and_kind() {
        let big = Instance::Graph(UndirectedGraph::new(60, &[]).unwrap());
        assert!(matches!(brute_force(&big, ProblemKind::VertexCover, 30), Err(OracleError::TooLarge { .. })));
        assert_eq!(
            brute_force(&big, ProblemKind::Fvst, 1),
            Err(OracleError::WrongInstance { kind: ProblemKind::Fvst })
        );
    }
}
