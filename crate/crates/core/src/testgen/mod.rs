//! Test-collection constructions.
//!
//! Three ways to build a [`TestCollection`] over a graph's edges:
//! connected components of random sparsifications ([`make_tests`]),
//! unconstrained random subsets ([`random_tests`]) and edge sets of random
//! walks ([`random_walk_tests`]).

mod random;
mod subgraph;
mod walk;

use std::fmt::Write as _;
use std::path::Path;

pub use random::random_tests;
pub use subgraph::{make_tests, make_tests_round, ComponentMode, MakeTestsParams};
pub use walk::{
    degree_ratio, estimate_mixing, estimate_mixing_time, random_walk_tests, Laziness,
    MixingEstimate, WalkParams,
};

use crate::error::{Error, Result};
use crate::graph::EdgeSet;

/// Ordered sequence of tests over the edge universe `[0, m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TestCollection {
    m: usize,
    tests: Vec<EdgeSet>,
}

impl TestCollection {
    pub fn new(m: usize) -> Self {
        TestCollection { m, tests: Vec::new() }
    }

    pub fn from_tests(m: usize, tests: Vec<EdgeSet>) -> Result<Self> {
        if let Some(t) = tests.iter().find(|t| t.capacity() != m) {
            return Err(Error::param(format!(
                "test over universe {} does not match m = {m}",
                t.capacity()
            )));
        }
        Ok(TestCollection { m, tests })
    }

    /// Convenience constructor from explicit edge-id lists.
    pub fn from_lists<I, T>(m: usize, lists: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: IntoIterator<Item = usize>,
    {
        let mut tests = Vec::new();
        for list in lists {
            let mut t = EdgeSet::new(m);
            for id in list {
                if id >= m {
                    return Err(Error::param(format!("edge id {id} out of range for m = {m}")));
                }
                t.insert(id);
            }
            tests.push(t);
        }
        Ok(TestCollection { m, tests })
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.tests.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.tests.is_empty()
    }

    #[inline]
    pub fn tests(&self) -> &[EdgeSet] {
        &self.tests
    }

    pub fn push(&mut self, test: EdgeSet) {
        assert_eq!(test.capacity(), self.m, "test universe mismatch");
        self.tests.push(test);
    }

    pub fn truncate(&mut self, len: usize) {
        self.tests.truncate(len);
    }

    /// Edges contained in at least one test.
    pub fn coverage(&self) -> EdgeSet {
        let mut out = EdgeSet::new(self.m);
        for t in &self.tests {
            out.union_with(t);
        }
        out
    }

    /// Text form: `m t`, then one line per test of ascending edge ids
    /// separated by single spaces (an empty line is an empty test).
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {}", self.m, self.tests.len());
        for t in &self.tests {
            let mut first = true;
            for id in t {
                if !first {
                    s.push(' ');
                }
                first = false;
                let _ = write!(s, "{id}");
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let nums: Vec<usize> = header
            .split_whitespace()
            .map(|tok| tok.parse().map_err(|e| Error::parse(1, format!("{e}"))))
            .collect::<Result<_>>()?;
        let [m, t] = nums[..] else {
            return Err(Error::parse(1, "header must be `m t`"));
        };
        let mut tests = Vec::with_capacity(t);
        for i in 0..t {
            let line_no = i + 2;
            let line = lines
                .next()
                .ok_or_else(|| Error::parse(line_no, format!("expected {t} test lines")))?;
            let mut test = EdgeSet::new(m);
            let mut prev = None;
            for tok in line.split_whitespace() {
                let id: usize = tok
                    .parse()
                    .map_err(|e| Error::parse(line_no, format!("{e}")))?;
                if id >= m {
                    return Err(Error::parse(line_no, format!("edge id {id} >= m = {m}")));
                }
                if prev.is_some_and(|p| p >= id) {
                    return Err(Error::parse(line_no, "edge ids must be strictly ascending"));
                }
                prev = Some(id);
                test.insert(id);
            }
            tests.push(test);
        }
        if let Some((i, _)) = lines.enumerate().find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::parse(t + 2 + i, "unexpected content after last test"));
        }
        Ok(TestCollection { m, tests })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}
