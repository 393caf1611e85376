use std::collections::HashSet;

use crate::error::EnumError;
use crate::stream::{BoxStream, Solution, SolutionStream};

/// A cover of the solution set by finitely many, possibly overlapping streams.
///
/// Identifiers are the indices `0..identifiers()`. `member(id, s)` must hold
/// exactly when `stream_for(id)` eventually yields `s`.
pub trait UnionSpec {
    fn identifiers(&self) -> usize;
    fn stream_for<'a>(&'a self, id: usize) -> BoxStream<'a>;
    fn member(&self, id: usize, solution: &Solution) -> bool;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnionEvent {
    /// `stream` produced `solution` but a later stream `owner` contains it.
    Deferred { stream: usize, owner: usize, solution: Solution },
    Emitted { stream: usize, solution: Solution },
}

enum Slot<'a> {
    Pending,
    Active(BoxStream<'a>),
    Done,
}

/// Duplicate-free enumeration of a union of streams by pausing and probing.
///
/// A round starts at the lowest unfinished stream `i`. Its next candidate is
/// emitted unless some later stream `j > i` contains it, in which case the
/// candidate is dropped (stream `j` or a later one will emit it) and the round
/// continues with stream `i + 1`. Each stream thus emits exactly its solutions
/// that no later stream contains. Later streams are probed in ascending order.
pub struct UnionRun<'a, U: UnionSpec + ?Sized> {
    spec: &'a U,
    slots: Vec<Slot<'a>>,
    lowest: usize,
    trace: Option<Vec<UnionEvent>>,
    verify: Option<VerifyState>,
    membership_calls: u64,
    failed: bool,
}

#[derive(Default)]
struct VerifyState {
    emitted: HashSet<Solution>,
    deferred: Vec<(usize, Solution)>,
}

pub fn run_union<U: UnionSpec + ?Sized>(spec: &U, verify: bool) -> UnionRun<'_, U> {
    let slots = (0..spec.identifiers()).map(|_| Slot::Pending).collect();
    UnionRun {
        spec,
        slots,
        lowest: 0,
        trace: None,
        verify: verify.then(VerifyState::default),
        membership_calls: 0,
        failed: false,
    }
}

impl<'a, U: UnionSpec + ?Sized> UnionRun<'a, U> {
    pub fn with_trace(mut self) -> Self {
        self.trace = Some(Vec::new());
        self
    }

    pub fn trace(&self) -> &[UnionEvent] {
        self.trace.as_deref().unwrap_or(&[])
    }

    pub fn membership_calls(&self) -> u64 {
        self.membership_calls
    }

    fn pull(&mut self, i: usize) -> Result<Option<Solution>, EnumError> {
        if let Slot::Pending = self.slots[i] {
            self.slots[i] = Slot::Active(self.spec.stream_for(i));
        }
        let next = match &mut self.slots[i] {
            Slot::Active(stream) => stream.next_solution()?,
            _ => None,
        };
        if next.is_none() {
            self.slots[i] = Slot::Done;
        }
        Ok(next)
    }

    fn later_owner(&mut self, i: usize, s: &Solution) -> Option<usize> {
        for j in i + 1..self.slots.len() {
            self.membership_calls += 1;
            if self.spec.member(j, s) {
                return Some(j);
            }
        }
        None
    }

    fn step(&mut self) -> Result<Option<Solution>, EnumError> {
        loop {
            while self.lowest < self.slots.len() && matches!(self.slots[self.lowest], Slot::Done) {
                self.lowest += 1;
            }
            if self.lowest >= self.slots.len() {
                self.finish()?;
                return Ok(None);
            }
            let mut i = self.lowest;
            while i < self.slots.len() {
                let Some(s) = self.pull(i)? else {
                    i += 1;
                    continue;
                };
                if self.verify.is_some() && !self.spec.member(i, &s) {
                    return Err(EnumError::MembershipContradiction { solution: s, stream: i });
                }
                match self.later_owner(i, &s) {
                    Some(owner) => {
                        if let Some(v) = self.verify.as_mut() {
                            v.deferred.push((owner, s.clone()));
                        }
                        if let Some(t) = self.trace.as_mut() {
                            t.push(UnionEvent::Deferred { stream: i, owner, solution: s });
                        }
                        i += 1;
                    }
                    None => {
                        if let Some(v) = self.verify.as_mut() {
                            if !v.emitted.insert(s.clone()) {
                                return Err(EnumError::DuplicateSolution(s));
                            }
                        }
                        if let Some(t) = self.trace.as_mut() {
                            t.push(UnionEvent::Emitted { stream: i, solution: s.clone() });
                        }
                        return Ok(Some(s));
                    }
                }
            }
            // every stream from `lowest` on deferred or ran dry this round
        }
    }

    fn finish(&mut self) -> Result<(), EnumError> {
        if let Some(v) = self.verify.as_mut() {
            for (owner, s) in v.deferred.drain(..) {
                if !v.emitted.contains(&s) {
                    return Err(EnumError::MembershipContradiction { solution: s, stream: owner });
                }
            }
        }
        Ok(())
    }
}

impl<U: UnionSpec + ?Sized> SolutionStream for UnionRun<'_, U> {
    fn next_solution(&mut self) -> Result<Option<Solution>, EnumError> {
        if self.failed {
            return Ok(None);
        }
        let out = self.step();
        if out.is_err() {
            self.failed = true;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stream::{collect_all, vec_stream};

    struct Lists {
        lists: Vec<Vec<&'static str>>,
        /// membership answers; defaults to exact membership when `None`
        lie: Option<(usize, &'static str)>,
    }

    impl UnionSpec for Lists {
        fn identifiers(&self) -> usize {
            self.lists.len()
        }
        fn stream_for<'a>(&'a self, id: usize) -> BoxStream<'a> {
            vec_stream(self.lists[id].iter().map(|s| Solution::from(*s)).collect())
        }
        fn member(&self, id: usize, s: &Solution) -> bool {
            if self.lie == Some((id, s.as_str())) {
                return true;
            }
            self.lists[id].contains(&s.as_str())
        }
    }

    #[test]
    fn single_identifier_is_passthrough() {
        let spec = Lists { lists: vec![vec!["X", "Y"]], lie: None };
        let out = collect_all(&mut run_union(&spec, true)).unwrap();
        assert_eq!(out, vec![Solution::from("X"), Solution::from("Y")]);
    }

    #[test]
    fn no_identifiers_is_empty() {
        let spec = Lists { lists: vec![], lie: None };
        assert!(collect_all(&mut run_union(&spec, true)).unwrap().is_empty());
    }

    #[test]
    fn exhausted_middle_stream_is_skipped() {
        let spec = Lists { lists: vec![vec!["a", "b"], vec!["a"], vec!["b", "c"]], lie: None };
        let mut run = run_union(&spec, true);
        let mut out = collect_all(&mut run).unwrap();
        out.sort();
        assert_eq!(out, vec![Solution::from("a"), Solution::from("b"), Solution::from("c")]);
    }

    #[test]
    fn false_membership_claim_detected_in_verify_mode() {
        // stream 1 claims to contain "A" but never produces it
        let spec = Lists { lists: vec![vec!["A"], vec!["B"]], lie: Some((1, "A")) };
        let err = collect_all(&mut run_union(&spec, true)).unwrap_err();
        assert_eq!(err, EnumError::MembershipContradiction { solution: "A".into(), stream: 1 });
        // without verification the solution is silently lost
        assert_eq!(collect_all(&mut run_union(&spec, false)).unwrap(), vec![Solution::from("B")]);
    }
}
