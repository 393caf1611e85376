use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::EnumError;

/// A solution in canonical encoding.
///
/// Adapters are responsible for canonicalising; two `Solution`s denote the same
/// solution iff their bytes coincide.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Solution(String);

impl Solution {
    pub fn new(encoding: impl Into<String>) -> Self {
        Solution(encoding.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn as_bytes(&self) -> &[u8] {
        self.0.as_bytes()
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Solution {
    fn from(s: &str) -> Self {
        Solution(s.to_owned())
    }
}

/// Pull-based producer of solutions.
///
/// A stream keeps its traversal state between calls, so it can be paused
/// indefinitely and resumed, and several streams can be pulled in any
/// interleaving. After `Ok(None)` the stream stays exhausted.
pub trait SolutionStream {
    fn next_solution(&mut self) -> Result<Option<Solution>, EnumError>;
}

pub type BoxStream<'a> = Box<dyn SolutionStream + 'a>;

impl<S: SolutionStream + ?Sized> SolutionStream for Box<S> {
    fn next_solution(&mut self) -> Result<Option<Solution>, EnumError> {
        (**self).next_solution()
    }
}

/// Pulls a stream to exhaustion.
pub fn collect_all<S: SolutionStream + ?Sized>(stream: &mut S) -> Result<Vec<Solution>, EnumError> {
    let mut out = Vec::new();
    while let Some(s) = stream.next_solution()? {
        out.push(s);
    }
    Ok(out)
}

/// Adapts any iterator of solutions into a stream.
pub struct IterStream<I>(I);

impl<I: Iterator<Item = Solution>> IterStream<I> {
    pub fn new(iter: I) -> Self {
        IterStream(iter)
    }
}

impl<I: Iterator<Item = Solution>> SolutionStream for IterStream<I> {
    fn next_solution(&mut self) -> Result<Option<Solution>, EnumError> {
        Ok(self.0.next())
    }
}

pub fn empty_stream<'a>() -> BoxStream<'a> {
    Box::new(IterStream::new(std::iter::empty()))
}

pub fn vec_stream<'a>(solutions: Vec<Solution>) -> BoxStream<'a> {
    Box::new(IterStream::new(solutions.into_iter()))
}

/// Wraps a stream and fails with [`EnumError::DuplicateSolution`] on the first
/// repeated output. Used for verification runs only: it keeps every output.
pub struct DedupCheck<S> {
    inner: S,
    seen: HashSet<Solution>,
}

impl<S: SolutionStream> DedupCheck<S> {
    pub fn new(inner: S) -> Self {
        DedupCheck { inner, seen: HashSet::new() }
    }

    pub fn into_inner(self) -> S {
        self.inner
    }

    pub fn inner(&self) -> &S {
        &self.inner
    }
}

impl<S: SolutionStream> SolutionStream for DedupCheck<S> {
    fn next_solution(&mut self) -> Result<Option<Solution>, EnumError> {
        match self.inner.next_solution()? {
            Some(s) => {
                if !self.seen.insert(s.clone()) {
                    return Err(EnumError::DuplicateSolution(s));
                }
                Ok(Some(s))
            }
            None => Ok(None),
        }
    }
}

/// Iterator view over a stream; errors end iteration and are yielded once.
pub struct StreamIter<S>(Option<S>);

impl<S: SolutionStream> StreamIter<S> {
    pub fn new(stream: S) -> Self {
        StreamIter(Some(stream))
    }
}

impl<S: SolutionStream> Iterator for StreamIter<S> {
    type Item = Result<Solution, EnumError>;

    fn next(&mut self) -> Option<Self::Item> {
        let stream = self.0.as_mut()?;
        match stream.next_solution() {
            Ok(Some(s)) => Some(Ok(s)),
            Ok(None) => {
                self.0 = None;
                None
            }
            Err(e) => {
                self.0 = None;
                Some(Err(e))
            }
        }
    }
}
