//! Perfect hash families: colorings with `k` colors such that every `k`-subset
//! of the vertices is rainbow under at least one member.
//!
//! When there are at most two million `k`-subsets the family is a set cover
//! of all of them, built greedily while they are few. Beyond that, vertices
//! are first hashed into `k²` buckets with the maps
//! `x ↦ ((a·x) mod p) mod k²`, one of which is injective on any given
//! `k`-subset, and each map is composed with a direct family for `k²` points.
//! Every family is verified before use: exhaustively when there are at most
//! a million `k`-subsets, otherwise on a fixed random sample.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Upper limit on the number of `k`-subsets the greedy cover may track.
const GREEDY_LIMIT: u64 = 200_000;
/// Upper limit for the unscored random cover.
const RANDOM_LIMIT: u64 = 2_000_000;
const EXHAUSTIVE_LIMIT: u64 = 1_000_000;
const SPOT_CHECKS: usize = 20_000;
const CANDIDATES_PER_ROUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HashFamilyError {
    #[error("family is not perfect: subset {subset:?} is rainbow under no coloring")]
    NotPerfect { subset: Vec<usize> },
    #[error("no perfect hash family construction for n = {n}, k = {k}")]
    TooLarge { n: usize, k: usize },
}

/// Color (in `0..k`) of every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring(pub Vec<u8>);

impl Coloring {
    pub fn color(&self, v: usize) -> u8 {
        self.0[v]
    }

    pub fn is_rainbow(&self, subset: &[usize]) -> bool {
        let mut seen = 0u64;
        for &v in subset {
            let bit = 1u64 << self.0[v];
            if seen & bit != 0 {
                return false;
            }
            seen |= bit;
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verification {
    Exhaustive,
    Sampled { samples: usize },
}

#[derive(Debug, Clone)]
pub struct PerfectHashFamily {
    pub n: usize,
    pub k: usize,
    pub colorings: Vec<Coloring>,
    pub verification: Verification,
}

impl PerfectHashFamily {
    pub fn len(&self) -> usize {
        self.colorings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colorings.is_empty()
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order until it
/// returns `false`.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !f(&idx) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Builds and verifies a perfect hash family for `n` vertices and `k` colors.
/// For `k = 0` or `k > n` there are no subsets to separate and the family is
/// empty.
pub fn build_hash_family(n: usize, k: usize) -> Result<PerfectHashFamily, HashFamilyError> {
    let colorings = if k == 0 || k > n {
        Vec::new()
    } else if k == 1 {
        vec![Coloring(vec![0; n])]
    } else if binomial(n, k) <= RANDOM_LIMIT {
        direct_family(n, k)?
    } else {
        composed_family(n, k)?
    };
    let verification = verify_family(n, k, &colorings)?;
    Ok(PerfectHashFamily { n, k, colorings, verification })
}

/// Checks perfectness; see the module docs for when the check is exhaustive.
pub fn verify_family(n: usize, k: usize, colorings: &[Coloring]) -> Result<Verification, HashFamilyError> {
    if k == 0 || k > n {
        return Ok(Verification::Exhaustive);
    }
    let rainbow_somewhere = |s: &[usize]| colorings.iter().any(|c| c.is_rainbow(s));
    if binomial(n, k) <= EXHAUSTIVE_LIMIT {
        let mut missing = None;
        for_each_subset(n, k, |s| {
            if rainbow_somewhere(s) {
                true
            } else {
                missing = Some(s.to_vec());
                false
            }
        });
        return match missing {
            Some(subset) => Err(HashFamilyError::NotPerfect { subset }),
            None => Ok(Verification::Exhaustive),
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ (n as u64) << 8 ^ k as u64);
    let all: Vec<usize> = (0..n).collect();
    for _ in 0..SPOT_CHECKS {
        let mut s: Vec<usize> = all.choose_multiple(&mut rng, k).copied().collect();
        s.sort_unstable();
        if !rainbow_somewhere(&s) {
            return Err(HashFamilyError::NotPerfect { subset: s });
        }
    }
    Ok(Verification::Sampled { samples: SPOT_CHECKS })
}

/// All `k`-subsets of `0..n` still waiting for a rainbow coloring, stored
/// flat with `k` entries per subset.
struct Uncovered {
    k: usize,
    flat: Vec<u32>,
}

impl Uncovered {
    fn all(n: usize, k: usize) -> Self {
        let mut flat = Vec::with_capacity(binomial(n, k) as usize * k);
        for_each_subset(n, k, |s| {
            flat.extend(s.iter().map(|&v| v as u32));
            true
        });
        Uncovered { k, flat }
    }

    fn len(&self) -> usize {
        self.flat.len() / self.k
    }

    fn get(&self, i: usize) -> &[u32] {
        &self.flat[i * self.k..(i + 1) * self.k]
    }

    fn rainbow(c: &Coloring, s: &[u32]) -> bool {
        let mut seen = 0u64;
        s.iter().all(|&v| {
            let bit = 1u64 << c.0[v as usize];
            let fresh = seen & bit == 0;
            seen |= bit;
            fresh
        })
    }

    fn count_covered(&self, c: &Coloring) -> usize {
        self.flat.chunks_exact(self.k).filter(|s| Self::rainbow(c, s)).count()
    }

    fn remove_covered(&mut self, c: &Coloring) {
        let k = self.k;
        let mut w = 0;
        for r in 0..self.len() {
            if !Self::rainbow(c, &self.flat[r * k..(r + 1) * k]) {
                self.flat.copy_within(r * k..(r + 1) * k, w * k);
                w += 1;
            }
        }
        self.flat.truncate(w * k);
    }
}

/// A random coloring that is rainbow on `target`.
fn coloring_through(rng: &mut ChaCha8Rng, n: usize, k: usize, target: &[u32]) -> Coloring {
    let mut colors: Vec<u8> = (0..n).map(|_| rng.gen_range(0..k) as u8).collect();
    let mut palette: Vec<u8> = (0..k as u8).collect();
    palette.shuffle(rng);
    for (&v, &c) in target.iter().zip(&palette) {
        colors[v as usize] = c;
    }
    Coloring(colors)
}

/// Set cover of all `k`-subsets. With `candidates > 1` each round keeps the
/// best of several proposals (greedy); with one it keeps every proposal.
fn cover_family(n: usize, k: usize, candidates: usize) -> Vec<Coloring> {
    let mut uncovered = Uncovered::all(n, k);
    let mut rng = ChaCha8Rng::seed_from_u64((n as u64) << 32 | k as u64);
    let mut family = Vec::new();
    while uncovered.len() > 0 {
        let chosen = if candidates <= 1 {
            let target = uncovered.get(rng.gen_range(0..uncovered.len())).to_vec();
            coloring_through(&mut rng, n, k, &target)
        } else {
            (0..candidates)
                .map(|_| {
                    let target = uncovered.get(rng.gen_range(0..uncovered.len())).to_vec();
                    let c = coloring_through(&mut rng, n, k, &target);
                    (uncovered.count_covered(&c), c)
                })
                .max_by_key(|(covered, _)| *covered)
                .map(|(_, c)| c)
                .expect("at least one candidate")
        };
        uncovered.remove_covered(&chosen);
        family.push(chosen);
    }
    family
}

/// Direct cover of the `k`-subsets of `0..n`, greedy when there are few of
/// them and plain random otherwise.
fn direct_family(n: usize, k: usize) -> Result<Vec<Coloring>, HashFamilyError> {
    let subsets = binomial(n, k);
    if subsets <= GREEDY_LIMIT {
        Ok(cover_family(n, k, CANDIDATES_PER_ROUND))
    } else if subsets <= RANDOM_LIMIT {
        Ok(cover_family(n, k, 1))
    } else {
        Err(HashFamilyError::TooLarge { n, k })
    }
}

fn next_prime(n: usize) -> usize {
    let is_prime = |p: usize| p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d));
    (n.max(2)..).find(|&p| is_prime(p)).expect("primes are unbounded")
}

fn composed_family(n: usize, k: usize) -> Result<Vec<Coloring>, HashFamilyError> {
    let buckets = k * k;
    let inner = direct_family(buckets, k).map_err(|_| HashFamilyError::TooLarge { n, k })?;
    let p = next_prime(n);
    let mut maps: Vec<Vec<usize>> = (1..p)
        .map(|a| (0..n).map(|x| (a * x % p) % buckets).collect())
        .collect();
    maps.sort();
    maps.dedup();
    let mut family = Vec::with_capacity(maps.len() * inner.len());
    for h in &maps {
        for g in &inner {
            family.push(Coloring(h.iter().map(|&b| g.color(b)).collect()));
        }
    }
    Ok(family)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_subset_and_trivial_k() {
        let f = build_hash_family(4, 4).unwrap();
        assert!(!f.is_empty());
        assert!(f.colorings.iter().any(|c| c.is_rainbow(&[0, 1, 2, 3])));
        let f1 = build_hash_family(5, 1).unwrap();
        assert_eq!(f1.colorings, vec![Coloring(vec![0; 5])]);
        assert!(build_hash_family(3, 4).unwrap().is_empty());
    }

    #[test]
    fn hand_checked_family_for_four_points() {
        // (1,2,1,2), (1,1,2,2), (1,2,2,1) in 0-based colors
        let fam = vec![Coloring(vec![0, 1, 0, 1]), Coloring(vec![0, 0, 1, 1]), Coloring(vec![0, 1, 1, 0])];
        assert_eq!(verify_family(4, 2, &fam), Ok(Verification::Exhaustive));
        assert_eq!(verify_family(4, 2, &fam[1..2]), Err(HashFamilyError::NotPerfect { subset: vec![0, 1] }));
    }

    #[test]
    fn greedy_families_are_perfect() {
        for n in 2..=10 {
            for k in 1..=n.min(5) {
                let f = build_hash_family(n, k).unwrap();
                assert_eq!(f.verification, Verification::Exhaustive);
            }
        }
    }

    #[test]
    fn composed_family_for_larger_n() {
        let fam = composed_family(23, 3).unwrap();
        assert_eq!(verify_family(23, 3, &fam), Ok(Verification::Exhaustive));
        assert!(fam.iter().all(|c| c.0.len() == 23 && c.0.iter().all(|&x| x < 3)));
        let big = build_hash_family(400, 3).unwrap();
        assert_eq!(big.verification, Verification::Sampled { samples: SPOT_CHECKS });
    }

    #[test]
    fn random_cover_range() {
        let f = build_hash_family(28, 6).unwrap();
        assert_eq!(f.verification, Verification::Exhaustive);
    }

    #[test]
    fn subset_enumeration_counts() {
        let mut count = 0;
        for_each_subset(7, 3, |_| {
            count += 1;
            true
        });
        assert_eq!(count as u64, binomial(7, 3));
        assert_eq!(binomial(16, 8), 12870);
    }
}
