use rayon::prelude::*;

use super::TestCollection;
use crate::error::{Error, Result};
use crate::graph::{components_of, sparsify_mask, EdgeSet, Graph};
use crate::seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentMode {
    /// Every component with at least `beta * n` vertices becomes a test.
    AllLarge,
    /// Only the largest component (ties: smallest minimum vertex id), and
    /// only if it has at least `beta * n` vertices.
    LargestOnly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MakeTestsParams {
    pub d: usize,
    pub delta: f64,
    pub beta: f64,
    pub tau: usize,
    pub mode: ComponentMode,
    pub seed: u64,
}

impl MakeTestsParams {
    /// Edge survival probability `1 / (delta * d)`.
    pub fn p(&self) -> f64 {
        1.0 / (self.delta * self.d as f64)
    }

    /// Smallest component size that qualifies as a test.
    pub fn min_component(&self, n: usize) -> usize {
        (self.beta * n as f64 - 1e-9).ceil().max(1.0) as usize
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.d == 0 {
            return Err(Error::param("d must be at least 1"));
        }
        if !(self.delta.is_finite() && self.delta * self.d as f64 >= 2.0 - 1e-12) {
            return Err(Error::param(format!(
                "delta must be at least 2/d = {}, got {}",
                2.0 / self.d as f64,
                self.delta
            )));
        }
        if !(self.beta > 0.0 && self.beta <= 0.5) {
            return Err(Error::param(format!("beta must lie in (0, 1/2], got {}", self.beta)));
        }
        if self.beta * (n as f64) < 2.0 - 1e-9 {
            return Err(Error::param(format!(
                "beta * n = {} must be at least 2",
                self.beta * n as f64
            )));
        }
        if self.tau == 0 {
            return Err(Error::param("tau must be at least 1"));
        }
        Ok(())
    }
}

/// Tests contributed by one round. The round's randomness is seeded by
/// `derive(params.seed, [round])`, so rounds are independent of each
/// other and of execution order.
pub fn make_tests_round(g: &Graph, params: &MakeTestsParams, round: u64) -> Vec<EdgeSet> {
    let mut rng = seed::rng(seed::derive(params.seed, &[round]));
    let kept = sparsify_mask(g, params.p(), &mut rng);
    let comps = components_of(g, &kept);
    let threshold = params.min_component(g.n());

    let eligible: Vec<usize> = match params.mode {
        ComponentMode::AllLarge => (0..comps.count())
            .filter(|&c| comps.sizes[c] >= threshold)
            .collect(),
        ComponentMode::LargestOnly => comps
            .largest()
            .filter(|&c| comps.sizes[c] >= threshold)
            .into_iter()
            .collect(),
    };
    let mut tests: Vec<EdgeSet> = eligible.iter().map(|_| g.edge_set()).collect();
    for id in &kept {
        let c = comps.of_edge(g, id);
        if let Some(slot) = eligible.iter().position(|&e| e == c) {
            tests[slot].insert(id);
        }
    }
    tests.retain(|t| !t.is_empty());
    tests
}

/// Connected-subgraph tests: for each of `tau` rounds, sparsify with
/// `p = 1/(delta d)` and emit the surviving edge set of each qualifying
/// component.
pub fn make_tests(g: &Graph, params: &MakeTestsParams) -> Result<TestCollection> {
    params.validate(g.n())?;
    if !g.is_connected() {
        log::warn!("make_tests: input graph is disconnected");
    }
    let rounds: Vec<Vec<EdgeSet>> = (0..params.tau as u64)
        .into_par_iter()
        .map(|r| make_tests_round(g, params, r))
        .collect();
    TestCollection::from_tests(g.m(), rounds.into_iter().flatten().collect())
}
