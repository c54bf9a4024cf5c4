use rayon::prelude::*;

use super::Estimate;
use crate::error::{Error, Result};
use crate::graph::{components_of, sparsify_mask, Graph};
use crate::seed;

/// `5 ln n / K`, the sampling rate at which `G(p)` of a graph with
/// minimum cut `K` is connected with probability at least `1 - 1/n`.
pub fn connectivity_threshold(n: usize, min_cut: usize) -> f64 {
    5.0 * (n as f64).ln() / min_cut as f64
}

/// Fraction of `G(p)` draws that are connected. Trial `i` uses seed
/// `derive(seed, [i])`.
pub fn connectivity_rate(g: &Graph, p: f64, trials: u64, seed: u64) -> Result<Estimate> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("probability {p} outside [0, 1]")));
    }
    if trials == 0 {
        return Err(Error::param("trials must be at least 1"));
    }
    let successes = (0..trials)
        .into_par_iter()
        .filter(|&i| {
            let kept = sparsify_mask(g, p, &mut seed::rng(seed::derive(seed, &[i])));
            components_of(g, &kept).count() <= 1
        })
        .count() as u64;
    Ok(Estimate::new(successes, trials))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, min_cut, Family};

    #[test]
    fn trivial_rates() {
        let g = generate(&Family::Cycle { n: 6 }).unwrap();
        assert_eq!(connectivity_rate(&g, 1.0, 20, 1).unwrap().rate(), 1.0);
        assert_eq!(connectivity_rate(&g, 0.0, 20, 1).unwrap().rate(), 0.0);
    }

    #[test]
    fn complete_sixteen_above_threshold() {
        let g = generate(&Family::Complete { n: 16 }).unwrap();
        let k = min_cut(&g).unwrap();
        assert_eq!(k, 15);
        let p = connectivity_threshold(16, k);
        let est = connectivity_rate(&g, p, 10_000, 4).unwrap();
        assert!(est.consistent_with_lower_bound(1.0 - 1.0 / 16.0, 3.0), "{est:?}");
    }

    #[test]
    fn parallel_result_is_deterministic() {
        let g = generate(&Family::Hypercube { dim: 4 }).unwrap();
        let a = connectivity_rate(&g, 0.6, 500, 77).unwrap();
        let b = connectivity_rate(&g, 0.6, 500, 77).unwrap();
        assert_eq!(a, b);
    }
}
