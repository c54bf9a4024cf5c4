use super::Witness;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::testgen::TestCollection;

/// Lower-bound witness for connected-subgraph tests on a `D`-regular graph
/// with `d >= 2D - 2`.
///
/// If some edge `e = {u, v}` is not itself a singleton test, the `2D - 2`
/// edges adjacent to `e` block every connected test through `e`, so they
/// form a violation of `d`-disjunctness. Returns the smallest such `e`
/// with that blocking set, or `None` when every singleton is present.
pub fn singleton_witness(g: &Graph, tests: &TestCollection, d: usize) -> Result<Option<Witness>> {
    let degree = g
        .regular_degree()
        .ok_or_else(|| Error::Domain("graph is not regular".into()))?;
    if d + 2 < 2 * degree {
        return Err(Error::param(format!(
            "need d >= 2D - 2 = {}, got {d}",
            2 * degree - 2
        )));
    }
    if tests.m() != g.m() {
        return Err(Error::param("test universe does not match the graph's edges"));
    }
    if let Some(i) = tests.tests().iter().position(|t| !g.is_connected_edge_set(t)) {
        return Err(Error::Domain(format!("test {i} is not a connected subgraph")));
    }
    let mut singleton = vec![false; g.m()];
    for t in tests.tests() {
        if t.count() == 1 {
            singleton[t.first().expect("nonempty")] = true;
        }
    }
    Ok(singleton.iter().position(|&s| !s).map(|edge| Witness {
        edge,
        defectives: g.adjacent_edges(edge),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use crate::group_testing::{check_disjunct, verify_witness};

    #[test]
    fn cycle_with_all_singletons_has_no_witness() {
        let c5 = generate(&Family::Cycle { n: 5 }).unwrap();
        let all = TestCollection::from_lists(5, (0..5).map(|e| vec![e])).unwrap();
        assert_eq!(singleton_witness(&c5, &all, 2).unwrap(), None);
    }

    #[test]
    fn cycle_missing_one_singleton() {
        let c5 = generate(&Family::Cycle { n: 5 }).unwrap();
        let tests = TestCollection::from_lists(5, [0, 1, 2, 4].map(|e| vec![e])).unwrap();
        let w = singleton_witness(&c5, &tests, 2).unwrap().unwrap();
        assert_eq!(w.edge, 3);
        assert_eq!(w.defectives.iter().collect::<Vec<_>>(), vec![2, 4]);
        assert!(verify_witness(&tests, 2, &w));
        assert!(!check_disjunct(&tests, 2).unwrap().disjunct);
    }

    #[test]
    fn complete_four_with_two_paths() {
        let k4 = generate(&Family::Complete { n: 4 }).unwrap();
        // edges: 0=(0,1) 1=(0,2) 2=(0,3) 3=(1,2) 4=(1,3) 5=(2,3)
        let lists = vec![vec![0, 1], vec![0, 3], vec![1, 5], vec![2, 4], vec![3, 5], vec![4, 5]];
        let tests = TestCollection::from_lists(6, lists).unwrap();
        assert!(tests.tests().iter().all(|t| k4.is_connected_edge_set(t) && t.count() == 2));
        let w = singleton_witness(&k4, &tests, 4).unwrap().unwrap();
        assert!(verify_witness(&tests, 4, &w));
        assert!(!check_disjunct(&tests, 4).unwrap().disjunct);
    }

    #[test]
    fn preconditions() {
        let k4 = generate(&Family::Complete { n: 4 }).unwrap();
        let t = TestCollection::from_lists(6, vec![vec![0]]).unwrap();
        assert!(singleton_witness(&k4, &t, 3).is_err());
        let bb = generate(&Family::Barbell { half: 3 }).unwrap();
        let t = TestCollection::new(bb.m());
        assert!(matches!(singleton_witness(&bb, &t, 10), Err(Error::Domain(_))));
        let c5 = generate(&Family::Cycle { n: 5 }).unwrap();
        let disconnected = TestCollection::from_lists(5, vec![vec![0, 2]]).unwrap();
        assert!(singleton_witness(&c5, &disconnected, 2).is_err());
    }
}
