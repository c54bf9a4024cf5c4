use rand::Rng;
use rayon::prelude::*;

use super::explore::explore_component;
use super::Estimate;
use crate::error::{Error, Result};
use crate::graph::{components_of, sparsify_mask, Graph};
use crate::seed;

/// Margin below which `epsilon` counts as zero or one third.
const EPS_TOL: f64 = 1e-12;

/// `epsilon = p alpha - 1`.
pub fn epsilon(p: f64, alpha: f64) -> f64 {
    p * alpha - 1.0
}

/// `p epsilon / 8` when `epsilon` lies in `(0, 1/3)`, otherwise `None`.
pub fn giant_component_bound(p: f64, alpha: f64) -> Option<f64> {
    let eps = epsilon(p, alpha);
    (eps > EPS_TOL && eps < 1.0 / 3.0 - EPS_TOL).then(|| p * eps / 8.0)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GiantReport {
    pub estimate: Estimate,
    pub epsilon: f64,
    pub bound: Option<f64>,
    /// Smallest component size counted as large, `ceil(beta n)`.
    pub threshold: usize,
}

fn check_common(g: &Graph, e: usize, p: f64, beta: f64, trials: u64) -> Result<()> {
    if e >= g.m() {
        return Err(Error::param(format!("edge {e} out of range (m = {})", g.m())));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("probability {p} outside [0, 1]")));
    }
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::param(format!("beta must lie in (0, 1], got {beta}")));
    }
    if trials == 0 {
        return Err(Error::param("trials must be at least 1"));
    }
    Ok(())
}

/// Fraction of `G(p)` draws in which `e` survives and lies in a component
/// of at least `beta n` vertices. Trial `i` uses seed `derive(seed, [i])`.
pub fn giant_component_rate(
    g: &Graph,
    e: usize,
    p: f64,
    beta: f64,
    alpha: f64,
    trials: u64,
    seed: u64,
) -> Result<GiantReport> {
    check_common(g, e, p, beta, trials)?;
    let threshold = (beta * g.n() as f64 - 1e-9).ceil() as usize;
    let successes = (0..trials)
        .into_par_iter()
        .filter(|&i| {
            let kept = sparsify_mask(g, p, &mut seed::rng(seed::derive(seed, &[i])));
            if !kept.contains(e) {
                return false;
            }
            let comps = components_of(g, &kept);
            comps.sizes[comps.of_edge(g, e)] >= threshold
        })
        .count() as u64;
    Ok(GiantReport {
        estimate: Estimate::new(successes, trials),
        epsilon: epsilon(p, alpha),
        bound: giant_component_bound(p, alpha),
        threshold,
    })
}

/// Whether the walk `Z` with steps `+alpha` (probability `p`) and `-1`
/// reaches `target` before falling to `-alpha`. A step goes up iff its
/// uniform draw is below `p`, so with a fixed stream the outcome is
/// monotone in `p`.
pub fn walk_escapes<R: Rng>(alpha: f64, p: f64, target: f64, rng: &mut R) -> bool {
    let mut z = 0.0;
    loop {
        if rng.gen::<f64>() < p {
            z += alpha;
        } else {
            z -= 1.0;
        }
        if z >= target {
            return true;
        }
        if z <= -alpha {
            return false;
        }
    }
}

/// Monte Carlo estimate of `P[tau_M <= tau_{-alpha}]`; walk `i` uses seed
/// `derive(seed, [i])`.
pub fn escape_probability(alpha: f64, p: f64, target: f64, trials: u64, seed: u64) -> Result<Estimate> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(Error::param(format!("alpha must be positive, got {alpha}")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("probability {p} outside [0, 1]")));
    }
    if trials == 0 {
        return Err(Error::param("trials must be at least 1"));
    }
    if !(target > 0.0 && target.is_finite()) {
        return Err(Error::param(format!("target must be positive, got {target}")));
    }
    let successes = (0..trials)
        .into_par_iter()
        .filter(|&i| walk_escapes(alpha, p, target, &mut seed::rng(seed::derive(seed, &[i]))))
        .count() as u64;
    Ok(Estimate::new(successes, trials))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundCheck {
    /// Escape of the `Y` walk, target `M = beta n (1 + alpha)`.
    pub escape: Estimate,
    pub target: f64,
    /// `epsilon / 8` when `epsilon` lies in `(0, 1/3)`.
    pub escape_bound: Option<f64>,
    /// Exploration runs from `e` that grew past the size cap.
    pub exploration: Estimate,
}

/// Puts the random-walk escape probability next to the success rate of the
/// capped exploration process it dominates.
pub fn exploration_bound_check(
    g: &Graph,
    e: usize,
    p: f64,
    beta: f64,
    alpha: f64,
    trials: u64,
    seed: u64,
) -> Result<BoundCheck> {
    check_common(g, e, p, beta, trials)?;
    let target = beta * g.n() as f64 * (1.0 + alpha);
    let escape = escape_probability(alpha, p, target, trials, seed::derive(seed, &[0]))?;
    let explore_seed = seed::derive(seed, &[1]);
    let capped = (0..trials)
        .into_par_iter()
        .map(|i| explore_component(g, e, p, beta, seed::derive(explore_seed, &[i])).map(|t| t.capped()))
        .collect::<Result<Vec<bool>>>()?;
    let eps = epsilon(p, alpha);
    Ok(BoundCheck {
        escape,
        target,
        escape_bound: (eps > EPS_TOL && eps < 1.0 / 3.0 - EPS_TOL).then_some(eps / 8.0),
        exploration: Estimate::new(capped.iter().filter(|&&c| c).count() as u64, trials),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{certify_expansion, generate, Family};

    #[test]
    fn bound_applicability() {
        assert_eq!(giant_component_bound(1.25 / 16.0, 16.0), Some(1.25 / 16.0 * 0.25 / 8.0));
        assert_eq!(giant_component_bound(1.0 / 16.0, 16.0), None);
        assert_eq!(giant_component_bound(1.5 / 16.0, 16.0), None);
    }

    #[test]
    fn p_one_always_large() {
        let g = generate(&Family::Hypercube { dim: 4 }).unwrap();
        let r = giant_component_rate(&g, 5, 1.0, 0.25, 2.0, 50, 3).unwrap();
        assert_eq!(r.estimate.rate(), 1.0);
        assert_eq!(r.bound, None);
        let zero = giant_component_rate(&g, 5, 0.0, 0.25, 2.0, 50, 3).unwrap();
        assert_eq!(zero.estimate.successes, 0);
    }

    #[test]
    fn complete_twenty_meets_bound() {
        let g = generate(&Family::Complete { n: 20 }).unwrap();
        let alpha = certify_expansion(&g, 0.25).unwrap().alpha_f64();
        let p = 1.25 / alpha;
        let r = giant_component_rate(&g, 0, p, 0.25, alpha, 20_000, 11).unwrap();
        let bound = r.bound.unwrap();
        assert!(r.estimate.consistent_with_lower_bound(bound, 3.0), "{r:?}");
    }

    #[test]
    fn escape_examples() {
        assert_eq!(escape_probability(4.0, 1.0, 10.0, 100, 1).unwrap().rate(), 1.0);
        assert_eq!(escape_probability(4.0, 0.0, 10.0, 100, 1).unwrap().rate(), 0.0);
        let est = escape_probability(4.0, 1.2 / 4.0, 40.0, 50_000, 2).unwrap();
        assert!(est.rate() >= 0.2 / 8.0, "{est:?}");
    }

    #[test]
    fn escape_monotone_in_p() {
        let mut last = 0;
        for k in 0..=20 {
            let p = k as f64 / 20.0;
            let est = escape_probability(3.0, p, 30.0, 2_000, 8).unwrap();
            assert!(est.successes >= last, "p = {p}");
            last = est.successes;
        }
    }

    #[test]
    fn bound_check_report() {
        let g = generate(&Family::Hypercube { dim: 4 }).unwrap();
        let alpha = certify_expansion(&g, 0.25).unwrap().alpha_f64();
        let p = 1.2 / alpha;
        let r = exploration_bound_check(&g, 0, p, 0.25, alpha, 4_000, 5).unwrap();
        assert_eq!(r.target, 4.0 * (1.0 + alpha));
        let bound = r.escape_bound.unwrap();
        assert!((bound - 0.025).abs() < 1e-12);
        assert!(r.escape.consistent_with_lower_bound(bound, 3.0));
        // the proof's walk is a pessimistic model of the exploration
        assert!(r.exploration.rate() + 3.0 * r.exploration.stderr() >= r.escape.rate() - 3.0 * r.escape.stderr());
    }

    #[test]
    fn input_errors() {
        let g = generate(&Family::Cycle { n: 5 }).unwrap();
        assert!(giant_component_rate(&g, 5, 0.5, 0.5, 1.0, 10, 0).is_err());
        assert!(giant_component_rate(&g, 0, 0.5, 0.5, 1.0, 0, 0).is_err());
        assert!(escape_probability(0.0, 0.5, 1.0, 10, 0).is_err());
    }
}
