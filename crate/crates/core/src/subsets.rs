//! Subsets of bounded size, smallest first, lexicographic within a size.

/// Yields every subset of `items` with at most `max_size` elements, ordered by
/// size and then lexicographically by position in `items`.
#[derive(Debug, Clone)]
pub(crate) struct BoundedSubsets {
    items: Vec<usize>,
    max_size: usize,
    size: usize,
    idx: Vec<usize>,
    fresh: bool,
    done: bool,
}

impl BoundedSubsets {
    pub(crate) fn new(items: Vec<usize>, max_size: usize) -> Self {
        let max_size = max_size.min(items.len());
        BoundedSubsets { items, max_size, size: 0, idx: Vec::new(), fresh: true, done: false }
    }

    fn advance(&mut self) -> bool {
        let n = self.items.len();
        let s = self.size;
        // next combination of the current size
        let mut i = s;
        while i > 0 {
            i -= 1;
            if self.idx[i] < n - s + i {
                self.idx[i] += 1;
                for j in i + 1..s {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return true;
            }
        }
        if s < self.max_size {
            self.size += 1;
            self.idx = (0..self.size).collect();
            return true;
        }
        false
    }
}

impl Iterator for BoundedSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if self.fresh {
            self.fresh = false;
        } else if !self.advance() {
            self.done = true;
            return None;
        }
        Some(self.idx.iter().map(|&i| self.items[i]).collect())
    }
}

/// Subsets of `0..len` of exactly `size` elements, lexicographically.
pub(crate) fn subsets_of_size(len: usize, size: usize) -> BoundedSubsets {
    let mut it = BoundedSubsets::new((0..len).collect(), size);
    it.size = size.min(len);
    it.idx = (0..it.size).collect();
    it.done = size > len;
    it
}

/// All subsets of `0..len` (as position lists) in decreasing size and
/// lexicographic order within a size.
pub(crate) fn subsets_by_decreasing_size(len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=len).rev().flat_map(move |size| subsets_of_size(len, size))
}
