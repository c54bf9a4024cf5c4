use rayon::prelude::*;

use super::DefectiveSet;
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::testgen::TestCollection;

/// Refuse checks whose projected number of mask combinations exceeds this.
pub const ENUMERATION_BUDGET: u128 = 10_000_000_000;

/// A violation of `d`-disjunctness: every test containing `edge` also
/// contains a member of `defectives`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub edge: usize,
    pub defectives: DefectiveSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisjunctnessReport {
    pub disjunct: bool,
    pub witness: Option<Witness>,
}

/// Test-membership mask of every edge, over test indices.
fn membership(tests: &TestCollection) -> Vec<BitSet> {
    let mut masks = vec![BitSet::new(tests.len()); tests.m()];
    for (i, t) in tests.tests().iter().enumerate() {
        for e in t {
            masks[e].insert(i);
        }
    }
    masks
}

/// Edges other than `e` sharing at least one test with `e`, ascending.
fn candidates(masks: &[BitSet], e: usize) -> Vec<usize> {
    (0..masks.len())
        .filter(|&b| b != e && masks[b].intersects(&masks[e]))
        .collect()
}

fn binomial_sum(n: usize, d: usize) -> u128 {
    let mut total = 0u128;
    let mut term = 1u128;
    for k in 1..=d.min(n) {
        term = term.saturating_mul((n + 1 - k) as u128) / k as u128;
        total = total.saturating_add(term);
    }
    total
}

/// Number of candidate combinations `check_disjunct` would examine in the
/// worst case.
pub fn projected_work(tests: &TestCollection, d: usize) -> u128 {
    let masks = membership(tests);
    (0..tests.m())
        .map(|e| binomial_sum(candidates(&masks, e).len(), d))
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// Exact `d`-disjunctness check.
///
/// For each edge `e` the check looks for a set `B` (not containing `e`,
/// `|B| <= d`) whose members' test masks jointly cover every test that
/// contains `e`. Only edges sharing a test with `e` can help cover, so
/// only those are enumerated. Sets are tried by increasing size and then
/// in lexicographic order, so the reported witness is the first violation
/// in the order `(e, |B|, B)`: the smallest failing edge, paired with a
/// smallest blocking set. An edge in no test is reported with `B = ∅`.
///
/// Work is split across edges in parallel; the result is the same as a
/// sequential scan.
pub fn check_disjunct(tests: &TestCollection, d: usize) -> Result<DisjunctnessReport> {
    if d == 0 {
        return Err(Error::param("d must be at least 1"));
    }
    let masks = membership(tests);
    let cands: Vec<Vec<usize>> = (0..tests.m()).map(|e| candidates(&masks, e)).collect();
    let projected = cands
        .iter()
        .map(|c| binomial_sum(c.len(), d))
        .fold(0u128, |a, b| a.saturating_add(b));
    if projected > ENUMERATION_BUDGET {
        return Err(Error::Budget {
            projected,
            limit: ENUMERATION_BUDGET,
        });
    }

    let witness = (0..tests.m())
        .into_par_iter()
        .find_map_first(|e| blocking_set(&masks, e, &cands[e], d).map(|b| (e, b)));

    Ok(match witness {
        None => DisjunctnessReport {
            disjunct: true,
            witness: None,
        },
        Some((edge, b)) => DisjunctnessReport {
            disjunct: false,
            witness: Some(Witness {
                edge,
                defectives: DefectiveSet::from_indices(tests.m(), b),
            }),
        },
    })
}

fn blocking_set(masks: &[BitSet], e: usize, cands: &[usize], d: usize) -> Option<Vec<usize>> {
    let target = &masks[e];
    if target.is_empty() {
        return Some(Vec::new());
    }
    let mut chosen = Vec::with_capacity(d);
    (1..=d.min(cands.len())).find_map(|k| {
        chosen.clear();
        search(masks, cands, 0, k, target.clone(), &mut chosen).then(|| chosen.clone())
    })
}

/// Depth-first search over `k`-subsets of `cands[start..]` in lexicographic
/// order; `residual` holds the tests containing `e` not yet covered.
fn search(
    masks: &[BitSet],
    cands: &[usize],
    start: usize,
    k: usize,
    residual: BitSet,
    chosen: &mut Vec<usize>,
) -> bool {
    if chosen.len() == k {
        return residual.is_empty();
    }
    let remaining = k - chosen.len();
    for i in start..=cands.len() - remaining {
        let b = cands[i];
        let mut next = residual.clone();
        next.difference_with(&masks[b]);
        if remaining == 1 {
            if next.is_empty() {
                chosen.push(b);
                return true;
            }
            continue;
        }
        chosen.push(b);
        if search(masks, cands, i + 1, k, next, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Replays a witness against the definition of disjunctness.
pub fn verify_witness(tests: &TestCollection, d: usize, witness: &Witness) -> bool {
    let b = &witness.defectives;
    b.capacity() == tests.m()
        && witness.edge < tests.m()
        && b.count() <= d
        && !b.contains(witness.edge)
        && tests
            .tests()
            .iter()
            .filter(|t| t.contains(witness.edge))
            .all(|t| t.intersects(b))
}
