use std::fmt;
use std::str::FromStr;

use rand::seq::index;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::record::ExperimentRecord;
use crate::error::{Error, Result};
use crate::graph::{generate, Family, Graph};
use crate::group_testing::{check_disjunct, decode, run_tests, DefectiveSet};
use crate::seed;
use crate::testgen::{
    estimate_mixing_time, make_tests_round, random_tests, random_walk_tests, ComponentMode, MakeTestsParams,
    TestCollection, WalkParams,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Subgraph,
    Walk,
    Random,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Subgraph, Method::Walk, Method::Random];

    pub fn name(self) -> &'static str {
        match self {
            Method::Subgraph => "subgraph",
            Method::Walk => "walk",
            Method::Random => "random",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::param(format!("unknown method {s:?} (expected subgraph, walk or random)")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// Probability that a collection of `tau` tests is `d`-disjunct.
    DisjunctProb,
    /// Probability that `d` uniformly random failed edges are decoded
    /// exactly.
    RandomFailures,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::DisjunctProb => "disjunct-prob",
            ExperimentKind::RandomFailures => "random-failures",
        }
    }
}

/// Everything that determines an experiment's output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    /// Graph spec such as `fat_tree:8` or `complete:23`.
    pub graph: String,
    pub methods: Vec<Method>,
    pub d: usize,
    pub taus: Vec<usize>,
    pub trials: u64,
    pub seed: u64,
    /// Walk-length multiplier; defaults to 1 on complete graphs and 4
    /// elsewhere.
    pub l: Option<f64>,
}

impl ExperimentConfig {
    pub fn family(&self) -> Result<Family> {
        self.graph.parse()
    }

    pub fn walk_multiplier(&self) -> Result<f64> {
        Ok(match (self.l, self.family()?) {
            (Some(l), _) => l,
            (None, Family::Complete { .. }) => 1.0,
            (None, _) => 4.0,
        })
    }

    fn validate(&self, g: &Graph) -> Result<()> {
        if self.d == 0 {
            return Err(Error::param("d must be at least 1"));
        }
        if self.trials == 0 {
            return Err(Error::param("trials must be at least 1"));
        }
        if self.kind == ExperimentKind::RandomFailures && self.d > g.m() {
            return Err(Error::param(format!("d = {} exceeds m = {}", self.d, g.m())));
        }
        if g.m() == 0 {
            return Err(Error::param("graph has no edges"));
        }
        if let Some(l) = self.l {
            if !(l > 0.0 && l.is_finite()) {
                return Err(Error::param(format!("walk multiplier must be positive, got {l}")));
            }
        }
        Ok(())
    }
}

/// Builds test collections for one (graph, method, d) cell of an
/// experiment. Everything graph-dependent is computed once up front.
pub struct Generator<'g> {
    g: &'g Graph,
    method: Method,
    d: usize,
    l: f64,
    tau_mix: usize,
}

/// Rounds the subgraph method may spend per requested test before giving up.
const ROUNDS_PER_TEST: usize = 64;

impl<'g> Generator<'g> {
    /// `mixing_seed` picks the start vertex of the mixing-time estimate;
    /// it is only used by the walk method.
    pub fn new(g: &'g Graph, method: Method, d: usize, l: f64, mixing_seed: u64) -> Result<Self> {
        let tau_mix = match method {
            Method::Walk => estimate_mixing_time(g, mixing_seed)?,
            _ => 0,
        };
        Ok(Generator { g, method, d, l, tau_mix })
    }

    pub fn mixing_time(&self) -> Option<usize> {
        (self.method == Method::Walk).then_some(self.tau_mix)
    }

    /// Exactly `tau` tests.
    ///
    /// The subgraph method samples `G(p)` with `p = 1/(d+1)` and keeps the
    /// largest component of each round, running rounds until `tau` tests
    /// exist (a round whose sample has no edges contributes nothing).
    pub fn tests(&self, tau: usize, seed: u64) -> Result<TestCollection> {
        let m = self.g.m();
        if tau == 0 {
            return Ok(TestCollection::new(m));
        }
        match self.method {
            Method::Random => random_tests(m, self.d, tau, seed),
            Method::Walk => {
                let params = WalkParams::with_mixing_time(self.g, self.d, self.l, tau, seed, self.tau_mix);
                random_walk_tests(self.g, &params)
            }
            Method::Subgraph => {
                let n = self.g.n();
                let params = MakeTestsParams {
                    d: self.d,
                    delta: (self.d as f64 + 1.0) / self.d as f64,
                    beta: (2.0 / n as f64).min(0.5),
                    tau,
                    mode: ComponentMode::LargestOnly,
                    seed,
                };
                params.validate(n)?;
                let mut tests = Vec::with_capacity(tau);
                for round in 0..(tau * ROUNDS_PER_TEST) as u64 {
                    tests.extend(make_tests_round(self.g, &params, round));
                    if tests.len() >= tau {
                        tests.truncate(tau);
                        return TestCollection::from_tests(m, tests);
                    }
                }
                Err(Error::Domain(format!(
                    "no {tau} nonempty tests after {} rounds",
                    tau * ROUNDS_PER_TEST
                )))
            }
        }
    }
}

/// Seed of one trial: `derive(master, [name_hash(id), tau, trial])`.
pub fn trial_seed(master: u64, experiment_id: &str, tau: usize, trial: u64) -> u64 {
    seed::derive(master, &[seed::name_hash(experiment_id), tau as u64, trial])
}

fn experiment_id(kind: ExperimentKind, family: &Family, method: Method, d: usize) -> String {
    format!("{}/{}/{}/d={}", kind.name(), family, method, d)
}

fn trial_success(kind: ExperimentKind, gen: &Generator<'_>, d: usize, tau: usize, seed: u64) -> Result<bool> {
    let tests = gen.tests(tau, seed::derive(seed, &[0]))?;
    match kind {
        ExperimentKind::DisjunctProb => Ok(check_disjunct(&tests, d)?.disjunct),
        ExperimentKind::RandomFailures => {
            let m = tests.m();
            let mut rng = seed::rng(seed::derive(seed, &[1]));
            let failed = DefectiveSet::from_indices(m, index::sample(&mut rng, m, d));
            Ok(decode(&tests, &run_tests(&tests, &failed)?)? == failed)
        }
    }
}

/// Runs every (method, tau, trial) point of `config` and returns records
/// sorted by (family, method, d, tau). Points run in parallel; the output
/// does not depend on scheduling.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    let family = config.family()?;
    let g = generate(&family)?;
    config.validate(&g)?;
    let l = config.walk_multiplier()?;
    let mut records = Vec::new();
    for &method in &config.methods {
        let id = experiment_id(config.kind, &family, method, config.d);
        let mixing_seed = seed::derive(config.seed, &[seed::name_hash(&id), u64::MAX]);
        let gen = Generator::new(&g, method, config.d, l, mixing_seed)?;
        let points: Vec<(usize, u64)> = config
            .taus
            .iter()
            .flat_map(|&tau| (0..config.trials).map(move |t| (tau, t)))
            .collect();
        let outcomes = points
            .par_iter()
            .map(|&(tau, t)| {
                trial_success(config.kind, &gen, config.d, tau, trial_seed(config.seed, &id, tau, t))
                    .map_err(|e| Error::AtTau { tau, source: Box::new(e) })
            })
            .collect::<Result<Vec<bool>>>()?;
        for (i, &tau) in config.taus.iter().enumerate() {
            let chunk = &outcomes[i * config.trials as usize..(i + 1) * config.trials as usize];
            let successes = chunk.iter().filter(|&&s| s).count() as u64;
            records.push(ExperimentRecord::new(&family, method, config.d, tau, config.trials, successes, config.seed));
        }
    }
    records.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    records.dedup();
    Ok(records)
}

pub fn experiment_disjunct_probability(
    graph: &str,
    methods: &[Method],
    d: usize,
    taus: &[usize],
    trials: u64,
    seed: u64,
) -> Result<Vec<ExperimentRecord>> {
    run_experiment(&ExperimentConfig {
        kind: ExperimentKind::DisjunctProb,
        graph: graph.into(),
        methods: methods.to_vec(),
        d,
        taus: taus.to_vec(),
        trials,
        seed,
        l: None,
    })
}

pub fn experiment_random_failures(
    graph: &str,
    methods: &[Method],
    d: usize,
    taus: &[usize],
    trials: u64,
    seed: u64,
) -> Result<Vec<ExperimentRecord>> {
    run_experiment(&ExperimentConfig {
        kind: ExperimentKind::RandomFailures,
        graph: graph.into(),
        methods: methods.to_vec(),
        d,
        taus: taus.to_vec(),
        trials,
        seed,
        l: None,
    })
}
