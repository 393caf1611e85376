//! Center strings within Hamming distance `k` of every input string, by
//! flashlight search over prefixes.
//!
//! A node fixes a prefix; the decision procedure asks whether the prefix can
//! be completed. It is the classic bounded search for closest string run on
//! the remaining suffixes, with each input string's budget reduced by the
//! mismatches already spent in the prefix.

use crate::framework::{run_flashlight, FlashlightAdapter, FlashlightRun};
use crate::instances::StringSet;
use crate::stream::{empty_stream, vec_stream, BoxStream, Solution};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixNode {
    /// Alphabet indices of the committed prefix.
    pub prefix: Vec<usize>,
}

pub struct ClosestStringAdapter<'s> {
    set: &'s StringSet,
    k: usize,
}

impl<'s> ClosestStringAdapter<'s> {
    pub fn new(set: &'s StringSet, k: usize) -> Self {
        ClosestStringAdapter { set, k }
    }

    pub fn root(&self) -> PrefixNode {
        PrefixNode { prefix: Vec::new() }
    }

    /// Parses a prefix over the instance alphabet (test and CLI helper).
    pub fn node(&self, prefix: &str) -> Option<PrefixNode> {
        let prefix = prefix
            .chars()
            .map(|c| self.set.alphabet().iter().position(|a| *a == c))
            .collect::<Option<Vec<_>>>()?;
        (prefix.len() <= self.set.len()).then_some(PrefixNode { prefix })
    }

    /// Remaining budget per input string; `None` if some string is already
    /// farther than `k` from the prefix.
    pub fn residuals(&self, node: &PrefixNode) -> Option<Vec<usize>> {
        let w = node.prefix.len();
        self.set
            .strings()
            .iter()
            .map(|x| {
                let spent = x[..w].iter().zip(&node.prefix).filter(|(a, b)| a != b).count();
                self.k.checked_sub(spent)
            })
            .collect()
    }

    /// Whether some center string extends the node's prefix.
    pub fn decide(&self, node: &PrefixNode) -> bool {
        let w = node.prefix.len();
        if w > self.set.len() {
            return false;
        }
        let Some(residuals) = self.residuals(node) else {
            return false;
        };
        let suffixes: Vec<&[usize]> = self.set.strings().iter().map(|x| &x[w..]).collect();
        let Some(first) = suffixes.first() else {
            return true;
        };
        let mut candidate = first.to_vec();
        branch(&mut candidate, &suffixes, &residuals, residuals[0])
    }
}

fn hamming(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Is there a string within `budget` changes of `candidate` that is within
/// `residuals[j]` of every `targets[j]`?
fn branch(candidate: &mut [usize], targets: &[&[usize]], residuals: &[usize], budget: usize) -> bool {
    let violated = targets
        .iter()
        .zip(residuals)
        .enumerate()
        .find_map(|(j, (t, &r))| {
            let d = hamming(candidate, t);
            (d > r).then_some((j, d))
        });
    let Some((j, dist)) = violated else {
        return true;
    };
    let r = residuals[j];
    if budget == 0 || dist > r + budget {
        return false;
    }
    let target = targets[j];
    let positions: Vec<usize> = (0..candidate.len()).filter(|&p| candidate[p] != target[p]).take(r + 1).collect();
    for p in positions {
        let old = candidate[p];
        candidate[p] = target[p];
        let found = branch(candidate, targets, residuals, budget - 1);
        candidate[p] = old;
        if found {
            return true;
        }
    }
    false
}

impl FlashlightAdapter for ClosestStringAdapter<'_> {
    type Node = PrefixNode;

    /// Extensions by one character, in alphabet order, that can still be
    /// completed.
    fn split(&self, node: &PrefixNode) -> Vec<PrefixNode> {
        if node.prefix.len() >= self.set.len() {
            return Vec::new();
        }
        (0..self.set.alphabet().len())
            .map(|c| {
                let mut prefix = node.prefix.clone();
                prefix.push(c);
                PrefixNode { prefix }
            })
            .filter(|child| self.decide(child))
            .collect()
    }

    fn measure(&self, node: &PrefixNode) -> u64 {
        self.set.len().saturating_sub(node.prefix.len()) as u64
    }

    fn leaf_enum<'a>(&'a self, node: &PrefixNode) -> BoxStream<'a> {
        if node.prefix.len() == self.set.len() && self.decide(node) {
            vec_stream(vec![Solution::new(self.set.render(&node.prefix))])
        } else {
            empty_stream()
        }
    }

    fn has_solution(&self, node: &PrefixNode) -> bool {
        self.decide(node)
    }
}

pub fn enumerate_closest_strings<'a, 's>(
    adapter: &'a ClosestStringAdapter<'s>,
    verify: bool,
) -> FlashlightRun<'a, ClosestStringAdapter<'s>> {
    run_flashlight(adapter, adapter.root(), verify)
}
