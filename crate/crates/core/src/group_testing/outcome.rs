use std::fmt;
use std::str::FromStr;

use super::DefectiveSet;
use crate::error::{Error, Result};
use crate::testgen::TestCollection;

/// Per-test results; `true` means the test contained a failed edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeVector(pub Vec<bool>);

impl OutcomeVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for OutcomeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Parses a bit string such as `0110`.
impl FromStr for OutcomeVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::parse(1, format!("invalid outcome character `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(OutcomeVector)
    }
}

pub fn run_tests(tests: &TestCollection, defective: &DefectiveSet) -> Result<OutcomeVector> {
    if defective.capacity() != tests.m() {
        return Err(Error::param(format!(
            "defective set over {} items, tests over {}",
            defective.capacity(),
            tests.m()
        )));
    }
    Ok(OutcomeVector(
        tests.tests().iter().map(|t| t.intersects(defective)).collect(),
    ))
}

/// Naive decoder: an edge is declared failed iff every test containing it
/// came back positive.
///
/// Edges that appear in no test are therefore always declared failed.
/// Callers that need to tell "failed" from "never tested" must check
/// [`TestCollection::coverage`] themselves.
pub fn decode(tests: &TestCollection, outcomes: &OutcomeVector) -> Result<DefectiveSet> {
    if outcomes.len() != tests.len() {
        return Err(Error::param(format!(
            "{} outcomes for {} tests",
            outcomes.len(),
            tests.len()
        )));
    }
    let mut declared = DefectiveSet::full(tests.m());
    for (t, &positive) in tests.tests().iter().zip(&outcomes.0) {
        if !positive {
            declared.difference_with(t);
        }
    }
    Ok(declared)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(m: usize, ids: &[usize]) -> DefectiveSet {
        DefectiveSet::from_indices(m, ids.iter().copied())
    }

    #[test]
    fn run_tests_examples() {
        let singletons = TestCollection::from_lists(3, vec![vec![0], vec![1], vec![2]]).unwrap();
        assert_eq!(run_tests(&singletons, &set(3, &[])).unwrap().to_string(), "000");
        assert_eq!(run_tests(&singletons, &set(3, &[1])).unwrap().to_string(), "010");
        let mixed = TestCollection::from_lists(4, vec![vec![0, 1], vec![], vec![3]]).unwrap();
        assert_eq!(run_tests(&mixed, &DefectiveSet::full(4)).unwrap().to_string(), "101");
        assert!(run_tests(&mixed, &set(3, &[])).is_err());
    }

    #[test]
    fn decode_examples() {
        let singletons = TestCollection::from_lists(4, (0..4).map(|e| vec![e])).unwrap();
        let out: OutcomeVector = "0100".parse().unwrap();
        assert_eq!(decode(&singletons, &out).unwrap(), set(4, &[1]));
        let none: OutcomeVector = "0000".parse().unwrap();
        assert!(decode(&singletons, &none).unwrap().is_empty());

        let c = TestCollection::from_lists(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let out = run_tests(&c, &set(3, &[0])).unwrap();
        assert_eq!(out.0, vec![true, false]);
        assert_eq!(decode(&c, &out).unwrap(), set(3, &[0]));

        assert!(decode(&c, &"1".parse().unwrap()).is_err());
        assert!("01x".parse::<OutcomeVector>().is_err());
    }

    #[test]
    fn uncovered_edges_decode_as_failed() {
        let c = TestCollection::from_lists(3, vec![vec![0]]).unwrap();
        let out = run_tests(&c, &set(3, &[])).unwrap();
        assert_eq!(decode(&c, &out).unwrap(), set(3, &[1, 2]));
    }

    proptest! {
        #[test]
        fn decode_never_misses_a_failure(
            m in 1usize..20,
            raw in proptest::collection::vec(any::<u32>(), 0..15),
            bmask in any::<u32>(),
        ) {
            let lists = raw.iter().map(|w| (0..m).filter(|i| w >> i & 1 == 1).collect::<Vec<_>>());
            let c = TestCollection::from_lists(m, lists).unwrap();
            let b = DefectiveSet::from_indices(m, (0..m).filter(|i| bmask >> i & 1 == 1));
            let decoded = decode(&c, &run_tests(&c, &b).unwrap()).unwrap();
            prop_assert!(b.is_subset(&decoded));
        }
    }
}
