use crate::error::EnumError;
use crate::stream::{Solution, SolutionStream};

/// Iterative compression: grow the instance one unit at a time, lifting a
/// solution at parameter `k` to one at `k + 1`, then compress it back.
///
/// The problem must be hereditary: if a grown instance has a solution at
/// parameter `k`, so does its prefix.
pub trait CompressionSpec {
    /// A prefix of the instance (the first `i` units).
    type Prefix;
    type Sol;

    /// Number of growth steps from the trivial prefix to the full instance.
    fn units(&self) -> usize;
    /// The trivial prefix together with its unique solution.
    fn initial(&self) -> (Self::Prefix, Self::Sol);
    /// Adds the next unit; the returned solution is valid for the grown
    /// prefix at parameter `k + 1`.
    fn grow(&self, prefix: &Self::Prefix, k: usize, sol: &Self::Sol) -> (Self::Prefix, Self::Sol);
    /// Solutions of `prefix` at parameter `k`, given one at `k + 1`. With
    /// `emit_all` unset only the first solution is needed.
    fn compress<'a>(
        &'a self,
        prefix: &Self::Prefix,
        k: usize,
        oversized: &Self::Sol,
        emit_all: bool,
    ) -> Box<dyn Iterator<Item = Self::Sol> + 'a>;
    fn is_solution(&self, prefix: &Self::Prefix, k: usize, sol: &Self::Sol) -> bool;
    fn encode(&self, sol: &Self::Sol) -> Solution;
}

enum State<'a, S> {
    Start,
    Final(Box<dyn Iterator<Item = S> + 'a>),
    Done,
}

pub struct CompressionRun<'a, C: CompressionSpec> {
    spec: &'a C,
    k: usize,
    state: State<'a, C::Sol>,
    verify: bool,
    /// Number of compression calls made before the final one.
    intermediate_steps: usize,
}

pub fn run_iterative_compression<C: CompressionSpec>(spec: &C, k: usize, verify: bool) -> CompressionRun<'_, C> {
    CompressionRun { spec, k, state: State::Start, verify, intermediate_steps: 0 }
}

impl<'a, C: CompressionSpec> CompressionRun<'a, C> {
    pub fn intermediate_steps(&self) -> usize {
        self.intermediate_steps
    }

    /// Runs the growth loop up to the full instance. Returns `None` if some
    /// prefix has no solution (and then neither has the instance).
    fn prepare(&mut self) -> Result<Option<Box<dyn Iterator<Item = C::Sol> + 'a>>, EnumError> {
        let spec = self.spec;
        let k = self.k;
        let units = spec.units();
        let (mut prefix, mut sol) = spec.initial();
        if units == 0 {
            return Ok(Some(Box::new(std::iter::once(sol))));
        }
        for step in 1..=units {
            let (grown, oversized) = spec.grow(&prefix, k, &sol);
            if self.verify && !spec.is_solution(&grown, k + 1, &oversized) {
                return Err(EnumError::GrowContractViolation { step });
            }
            if step == units {
                return Ok(Some(spec.compress(&grown, k, &oversized, true)));
            }
            self.intermediate_steps += 1;
            match spec.compress(&grown, k, &oversized, false).next() {
                Some(next) => {
                    prefix = grown;
                    sol = next;
                }
                None => return Ok(None),
            }
        }
        unreachable!("loop returns at the final unit")
    }
}

impl<C: CompressionSpec> SolutionStream for CompressionRun<'_, C> {
    fn next_solution(&mut self) -> Result<Option<Solution>, EnumError> {
        if let State::Start = self.state {
            self.state = match self.prepare() {
                Ok(Some(it)) => State::Final(it),
                Ok(None) => State::Done,
                Err(e) => {
                    self.state = State::Done;
                    return Err(e);
                }
            };
        }
        match &mut self.state {
            State::Final(it) => match it.next() {
                Some(sol) => Ok(Some(self.spec.encode(&sol))),
                None => {
                    self.state = State::Done;
                    Ok(None)
                }
            },
            _ => Ok(None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::collect_all;

    /// Subsets of {0..n} of size ≤ k that contain every "forced" element
    /// among the introduced ones. Grow adds the new element.
    struct Forced {
        n: usize,
        forced: Vec<bool>,
        cheat: bool,
    }

    impl CompressionSpec for Forced {
        type Prefix = usize;
        type Sol = Vec<usize>;
        fn units(&self) -> usize {
            self.n
        }
        fn initial(&self) -> (usize, Vec<usize>) {
            (0, vec![])
        }
        fn grow(&self, &i: &usize, _k: usize, sol: &Vec<usize>) -> (usize, Vec<usize>) {
            let mut s = sol.clone();
            if !self.cheat {
                s.push(i);
            }
            (i + 1, s)
        }
        fn compress<'a>(&'a self, &i: &usize, k: usize, _o: &Vec<usize>, all: bool) -> Box<dyn Iterator<Item = Vec<usize>> + 'a> {
            let base: Vec<usize> = (0..i).filter(|&v| self.forced[v]).collect();
            if base.len() > k {
                return Box::new(std::iter::empty());
            }
            let free: Vec<usize> = (0..i).filter(|&v| !self.forced[v]).collect();
            let it = crate::subsets::BoundedSubsets::new(free, k - base.len()).map(move |extra| {
                let mut s = base.clone();
                s.extend(extra);
                s.sort();
                s
            });
            if all {
                Box::new(it)
            } else {
                Box::new(it.take(1))
            }
        }
        fn is_solution(&self, &i: &usize, k: usize, sol: &Vec<usize>) -> bool {
            sol.len() <= k && (0..i).all(|v| !self.forced[v] || sol.contains(&v))
        }
        fn encode(&self, sol: &Vec<usize>) -> Solution {
            Solution::new(format!("{sol:?}"))
        }
    }

    #[test]
    fn counts_and_infeasibility() {
        let spec = Forced { n: 4, forced: vec![true, false, false, true], cheat: false };
        // two forced elements plus at most one of two free ones
        assert_eq!(collect_all(&mut run_iterative_compression(&spec, 3, true)).unwrap().len(), 3);
        assert!(collect_all(&mut run_iterative_compression(&spec, 1, true)).unwrap().is_empty());
    }

    #[test]
    fn empty_instance_yields_initial_solution() {
        let spec = Forced { n: 0, forced: vec![], cheat: false };
        let out = collect_all(&mut run_iterative_compression(&spec, 0, true)).unwrap();
        assert_eq!(out, vec![Solution::from("[]")]);
    }

    #[test]
    fn broken_grow_is_detected() {
        let spec = Forced { n: 2, forced: vec![true, true], cheat: true };
        let err = collect_all(&mut run_iterative_compression(&spec, 2, true)).unwrap_err();
        assert_eq!(err, EnumError::GrowContractViolation { step: 1 });
    }
}
