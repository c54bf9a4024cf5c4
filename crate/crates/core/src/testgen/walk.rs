use rand::Rng;

use super::TestCollection;
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};
use crate::seed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Laziness {
    /// Lazy walk exactly when the graph is bipartite.
    Auto,
    /// Simple random walk.
    Simple,
    /// Holds with probability 1/2 at each step.
    Lazy,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixingEstimate {
    pub steps: usize,
    pub lazy: bool,
    pub start: usize,
    pub threshold: f64,
}

/// `ceil(max degree / min degree)`.
pub fn degree_ratio(g: &Graph) -> usize {
    let min = g.min_degree().max(1);
    g.max_degree().div_ceil(min).max(1)
}

/// Mixing time of the walk started at a seeded-random vertex: the first
/// step at which the total variation distance to `deg(v) / 2m` drops below
/// `1 / (2 c n)^2`. Distributions are propagated exactly; the search gives
/// up after `10 n^2` steps.
pub fn estimate_mixing(g: &Graph, seed: u64, laziness: Laziness) -> Result<MixingEstimate> {
    let n = g.n();
    if n < 2 || g.m() == 0 {
        return Err(Error::param("mixing time needs a graph with at least one edge"));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let lazy = match laziness {
        Laziness::Auto => g.is_bipartite(),
        Laziness::Simple => false,
        Laziness::Lazy => true,
    };
    let c = degree_ratio(g) as f64;
    let threshold = 1.0 / (2.0 * c * n as f64).powi(2);
    let two_m = 2.0 * g.m() as f64;
    let stationary: Vec<f64> = (0..n).map(|v| g.degree(v) as f64 / two_m).collect();

    let start = seed::rng(seed).gen_range(0..n);
    let mut x = vec![0.0; n];
    x[start] = 1.0;
    let mut next = vec![0.0; n];
    let cap = 10 * n * n;
    for step in 1..=cap {
        next.iter_mut().for_each(|y| *y = 0.0);
        for v in 0..n {
            if x[v] == 0.0 {
                continue;
            }
            let mass = if lazy { x[v] / 2.0 } else { x[v] };
            if lazy {
                next[v] += mass;
            }
            let share = mass / g.degree(v) as f64;
            for &(w, _) in g.neighbors(v) {
                next[w] += share;
            }
        }
        std::mem::swap(&mut x, &mut next);
        let tv = 0.5 * x.iter().zip(&stationary).map(|(a, b)| (a - b).abs()).sum::<f64>();
        if tv < threshold {
            return Ok(MixingEstimate {
                steps: step,
                lazy,
                start,
                threshold,
            });
        }
    }
    Err(Error::MixingCapExceeded { cap })
}

pub fn estimate_mixing_time(g: &Graph, seed: u64) -> Result<usize> {
    estimate_mixing(g, seed, Laziness::Auto).map(|e| e.steps)
}

/// Parameters of the random-walk construction. `c` and `tau_mix` are
/// properties of the graph; see [`WalkParams::for_graph`].
#[derive(Clone, Debug, PartialEq)]
pub struct WalkParams {
    pub d: usize,
    /// Walk-length multiplier.
    pub l: f64,
    /// Number of walks (tests).
    pub tau: usize,
    pub seed: u64,
    pub c: usize,
    pub tau_mix: usize,
}

impl WalkParams {
    /// Computes `c` from the degree spread and estimates the mixing time
    /// with `seed`.
    pub fn for_graph(g: &Graph, d: usize, l: f64, tau: usize, seed: u64) -> Result<Self> {
        let tau_mix = estimate_mixing_time(g, seed)?;
        Ok(Self::with_mixing_time(g, d, l, tau, seed, tau_mix))
    }

    pub fn with_mixing_time(g: &Graph, d: usize, l: f64, tau: usize, seed: u64, tau_mix: usize) -> Self {
        WalkParams {
            d,
            l,
            tau,
            seed,
            c: degree_ratio(g),
            tau_mix,
        }
    }

    /// `ceil(l n D / (c^3 d tau_mix))` with `D` the minimum degree; a
    /// computed length of 0 is clamped to 1.
    pub fn walk_length(&self, g: &Graph) -> usize {
        let num = self.l * g.n() as f64 * g.min_degree() as f64;
        let den = (self.c as f64).powi(3) * self.d as f64 * self.tau_mix as f64;
        let len = (num / den).ceil();
        if len < 1.0 {
            log::warn!("random walk length {num}/{den} rounds to 0; using 1");
            1
        } else {
            len as usize
        }
    }

    fn validate(&self) -> Result<()> {
        if self.d == 0 || self.tau_mix == 0 || self.c == 0 {
            return Err(Error::param("walk parameters d, c and tau_mix must be positive"));
        }
        if !(self.l.is_finite() && self.l > 0.0) {
            return Err(Error::param(format!("length multiplier must be positive, got {}", self.l)));
        }
        Ok(())
    }
}

/// `tau` tests, each the set of distinct edges traversed by a simple random
/// walk of [`WalkParams::walk_length`] steps from a uniform start vertex.
pub fn random_walk_tests(g: &Graph, params: &WalkParams) -> Result<TestCollection> {
    params.validate()?;
    if g.m() == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let len = params.walk_length(g);
    let mut rng = seed::rng(params.seed);
    let mut tests = Vec::with_capacity(params.tau);
    for _ in 0..params.tau {
        let mut t = EdgeSet::new(g.m());
        let mut v = rng.gen_range(0..g.n());
        for _ in 0..len {
            let nbrs = g.neighbors(v);
            let (w, id) = nbrs[rng.gen_range(0..nbrs.len())];
            t.insert(id);
            v = w;
        }
        tests.push(t);
    }
    TestCollection::from_tests(g.m(), tests)
}
