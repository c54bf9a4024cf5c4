use rand::Rng;

use super::TestCollection;
use crate::error::{Error, Result};
use crate::graph::EdgeSet;
use crate::seed;

/// `tau` independent tests, each containing every item independently with
/// probability `1/(d+1)`. Empty tests are kept so the collection always has
/// exactly `tau` entries.
pub fn random_tests(m: usize, d: usize, tau: usize, seed: u64) -> Result<TestCollection> {
    if m == 0 || d == 0 {
        return Err(Error::param("random tests need m >= 1 and d >= 1"));
    }
    let p = 1.0 / (d as f64 + 1.0);
    let mut rng = seed::rng(seed);
    let tests = (0..tau)
        .map(|_| {
            let mut t = EdgeSet::new(m);
            for id in 0..m {
                if rng.gen::<f64>() < p {
                    t.insert(id);
                }
            }
            t
        })
        .collect();
    TestCollection::from_tests(m, tests)
}
