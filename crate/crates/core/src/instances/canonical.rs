//! Canonical solution encodings.
//!
//! * vertex sets: ascending 1-based ids separated by single spaces
//! * paths: the lexicographically smaller of the vertex sequence and its
//!   reversal, same separator
//! * integer vectors: space-separated
//! * edge sets: `u v` pairs with `u < v`, ascending, joined by `,`
//! * strings: verbatim

use crate::stream::Solution;

fn join(ids: impl Iterator<Item = usize>) -> String {
    let mut out = String::new();
    for (i, v) in ids.enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&(v + 1).to_string());
    }
    out
}

pub fn vertex_set(vertices: impl IntoIterator<Item = usize>) -> Solution {
    let mut vs: Vec<usize> = vertices.into_iter().collect();
    vs.sort_unstable();
    vs.dedup();
    Solution::new(join(vs.into_iter()))
}

/// Orientation of `path` used as its canonical form.
pub fn path_orientation(path: &[usize]) -> bool {
    path.iter().le(path.iter().rev())
}

pub fn path(path: &[usize]) -> Solution {
    if path_orientation(path) {
        Solution::new(join(path.iter().copied()))
    } else {
        Solution::new(join(path.iter().rev().copied()))
    }
}

pub fn int_vector(values: &[i64]) -> Solution {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    Solution::new(parts.join(" "))
}

pub fn edge_set(edges: impl IntoIterator<Item = (usize, usize)>) -> Solution {
    let mut es: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
    es.sort_unstable();
    es.dedup();
    let parts: Vec<String> = es.iter().map(|(u, v)| format!("{} {}", u + 1, v + 1)).collect();
    Solution::new(parts.join(","))
}

pub fn string(s: &str) -> Solution {
    Solution::new(s)
}

/// Decodes a space-separated list of 1-based vertex ids into 0-based ids.
/// Returns `None` on anything that is not such a list (including id 0).
pub fn decode_vertices(encoding: &str) -> Option<Vec<usize>> {
    if encoding.is_empty() {
        return Some(Vec::new());
    }
    encoding
        .split(' ')
        .map(|tok| {
            if tok.starts_with('+') {
                return None;
            }
            tok.parse::<usize>().ok().filter(|&v| v > 0).map(|v| v - 1)
        })
        .collect()
}

/// Decodes an edge-set encoding into 0-based pairs.
pub fn decode_edges(encoding: &str) -> Option<Vec<(usize, usize)>> {
    if encoding.is_empty() {
        return Some(Vec::new());
    }
    encoding
        .split(',')
        .map(|pair| match decode_vertices(pair)?.as_slice() {
            [u, v] => Some((*u, *v)),
            _ => None,
        })
        .collect()
}
