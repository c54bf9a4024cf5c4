use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, VertexSet};
use crate::seed;

/// One probe of the exploration process. Sizes are taken after the probe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExplorationStep {
    pub t: usize,
    pub edge: usize,
    pub survived: bool,
    pub s_size: usize,
    pub b_size: usize,
    pub u_size: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Termination {
    /// No unvisited boundary edge remained.
    Exhausted,
    /// The tree grew past the size cap.
    Capped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplorationTrace {
    pub start: usize,
    pub steps: Vec<ExplorationStep>,
    pub termination: Termination,
    /// Edges of the final tree `S`, in the order they were added.
    pub tree: Vec<usize>,
    /// `N(S)` at termination.
    pub reached: VertexSet,
}

impl ExplorationTrace {
    pub fn reached_count(&self) -> usize {
        self.reached.count()
    }

    pub fn capped(&self) -> bool {
        self.termination == Termination::Capped
    }
}

/// Largest `|S|` the process may hold before it stops as capped:
/// `floor(beta n + 1)`.
pub fn tree_cap(n: usize, beta: f64) -> usize {
    (beta * n as f64 + 1.0 + 1e-9).floor() as usize
}

/// State of the process between probes. `frontier` is `U_t`, kept sorted
/// so the smallest edge id is always at hand.
#[derive(Clone, Debug)]
pub struct Explorer<'g> {
    g: &'g Graph,
    reached: VertexSet,
    blocked: EdgeSet,
    tree: Vec<usize>,
    frontier: BTreeSet<usize>,
    cap: Option<usize>,
    t: usize,
}

impl<'g> Explorer<'g> {
    /// Starts from `S_0 = {start}`. With `cap = Some(c)` the process stops
    /// once `|S| > c`.
    pub fn new(g: &'g Graph, start: usize, cap: Option<usize>) -> Result<Self> {
        if start >= g.m() {
            return Err(Error::param(format!("edge {start} out of range (m = {})", g.m())));
        }
        let mut x = Explorer {
            g,
            reached: g.vertex_set(),
            blocked: g.edge_set(),
            tree: vec![start],
            frontier: BTreeSet::new(),
            cap,
            t: 0,
        };
        let (u, v) = g.edge(start);
        x.reach(u);
        x.reach(v);
        Ok(x)
    }

    fn reach(&mut self, w: usize) {
        self.reached.insert(w);
        for &(x, id) in self.g.neighbors(w) {
            if self.reached.contains(x) {
                self.frontier.remove(&id);
            } else if !self.blocked.contains(id) {
                self.frontier.insert(id);
            }
        }
    }

    /// `Some(reason)` once the process has stopped.
    pub fn finished(&self) -> Option<Termination> {
        if self.cap.is_some_and(|c| self.tree.len() > c) {
            Some(Termination::Capped)
        } else if self.frontier.is_empty() {
            Some(Termination::Exhausted)
        } else {
            None
        }
    }

    /// The edge the next probe examines.
    pub fn next_edge(&self) -> Option<usize> {
        match self.finished() {
            Some(_) => None,
            None => self.frontier.first().copied(),
        }
    }

    /// Resolves the pending probe. Panics if the process has stopped.
    pub fn resolve(&mut self, survived: bool) -> ExplorationStep {
        let id = self.next_edge().expect("exploration already finished");
        self.frontier.remove(&id);
        if survived {
            let (u, v) = self.g.edge(id);
            let outside = if self.reached.contains(u) { v } else { u };
            self.tree.push(id);
            self.reach(outside);
        } else {
            self.blocked.insert(id);
        }
        self.t += 1;
        ExplorationStep {
            t: self.t,
            edge: id,
            survived,
            s_size: self.tree.len(),
            b_size: self.blocked.count(),
            u_size: self.frontier.len(),
        }
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn tree(&self) -> &[usize] {
        &self.tree
    }

    pub fn reached(&self) -> &VertexSet {
        &self.reached
    }

    pub fn blocked(&self) -> &EdgeSet {
        &self.blocked
    }

    pub fn frontier(&self) -> impl Iterator<Item = usize> + '_ {
        self.frontier.iter().copied()
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::param(format!("probability {p} outside [0, 1]")))
    }
}

/// Runs the exploration process from edge `e`, conditioned on `e`
/// surviving. Each probe takes the smallest edge id in `U_t` and keeps it
/// with probability `p`. Stops when `U_t` is empty or `|S_t| > beta n + 1`.
pub fn explore_component(g: &Graph, e: usize, p: f64, beta: f64, seed: u64) -> Result<ExplorationTrace> {
    check_probability(p)?;
    if beta * (g.n() as f64) < 2.0 - 1e-9 {
        return Err(Error::param(format!("beta * n = {} must be at least 2", beta * g.n() as f64)));
    }
    explore(g, e, p, Some(tree_cap(g.n(), beta)), seed)
}

/// Same process with an optional cap; `None` runs until `U_t` is empty.
pub fn explore(g: &Graph, e: usize, p: f64, cap: Option<usize>, seed: u64) -> Result<ExplorationTrace> {
    check_probability(p)?;
    let mut x = Explorer::new(g, e, cap)?;
    let mut rng = seed::rng(seed);
    let mut steps = Vec::new();
    while x.next_edge().is_some() {
        let survived = rng.gen::<f64>() < p;
        steps.push(x.resolve(survived));
    }
    Ok(ExplorationTrace {
        start: e,
        termination: x.finished().expect("loop ended"),
        steps,
        tree: x.tree.clone(),
        reached: x.reached.clone(),
    })
}

/// Terminal outcome of the process: number of reached vertices, or capped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Outcome {
    Reached(usize),
    Capped,
}

pub type Rational = Ratio<i128>;

/// Exact distribution of the terminal outcome, obtained by following both
/// branches of every probe with weights `p` and `1 - p`.
pub fn exact_outcome_distribution(
    g: &Graph,
    e: usize,
    p: Rational,
    cap: Option<usize>,
) -> Result<BTreeMap<Outcome, Rational>> {
    let zero = Rational::from_integer(0);
    let one = Rational::from_integer(1);
    if p < zero || p > one {
        return Err(Error::param(format!("probability {p} outside [0, 1]")));
    }
    let mut dist = BTreeMap::new();
    let mut stack = vec![(Explorer::new(g, e, cap)?, one)];
    while let Some((x, w)) = stack.pop() {
        if w == zero {
            continue;
        }
        match x.finished() {
            Some(Termination::Capped) => *dist.entry(Outcome::Capped).or_insert(zero) += w,
            Some(Termination::Exhausted) => {
                *dist.entry(Outcome::Reached(x.reached.count())).or_insert(zero) += w
            }
            None => {
                let mut kept = x.clone();
                kept.resolve(true);
                let mut lost = x;
                lost.resolve(false);
                stack.push((kept, w * p));
                stack.push((lost, w * (one - p)));
            }
        }
    }
    Ok(dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{components_of, generate, Family};

    /// Conditional law of `|C_e|` given `e` survives, by summing over all
    /// `2^(m-1)` states of the other edges.
    fn subset_oracle(g: &Graph, e: usize, p: Rational) -> BTreeMap<usize, Rational> {
        let one = Rational::from_integer(1);
        let others: Vec<usize> = (0..g.m()).filter(|&f| f != e).collect();
        let mut dist = BTreeMap::new();
        for mask in 0u64..1 << others.len() {
            let mut kept = EdgeSet::from_indices(g.m(), [e]);
            let mut w = one;
            for (i, &f) in others.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    kept.insert(f);
                    w *= p;
                } else {
                    w *= one - p;
                }
            }
            let comps = components_of(g, &kept);
            let size = comps.sizes[comps.of_edge(g, e)];
            *dist.entry(size).or_insert(Rational::from_integer(0)) += w;
        }
        dist
    }

    fn uncapped(dist: BTreeMap<Outcome, Rational>) -> BTreeMap<usize, Rational> {
        dist.into_iter()
            .map(|(k, w)| match k {
                Outcome::Reached(s) => (s, w),
                Outcome::Capped => panic!("no cap was set"),
            })
            .collect()
    }

    fn triangle() -> Graph {
        Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn triangle_half() {
        let g = triangle();
        let half = Rational::new(1, 2);
        for e in 0..3 {
            let d = uncapped(exact_outcome_distribution(&g, e, half, None).unwrap());
            // size 2 only if both other edges fail
            assert_eq!(d[&2], Rational::new(1, 4));
            assert_eq!(d[&3], Rational::new(3, 4));
            assert_eq!(d, subset_oracle(&g, e, half));
        }
    }

    #[test]
    fn matches_subset_oracle_on_small_graphs() {
        let graphs = [
            triangle(),
            generate(&Family::Complete { n: 4 }).unwrap(),
            generate(&Family::Cycle { n: 6 }).unwrap(),
            generate(&Family::Barbell { half: 3 }).unwrap(),
            Graph::new(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (3, 4)]).unwrap(),
            Graph::new(6, [(0, 1), (1, 2), (3, 4)]).unwrap(),
        ];
        for g in &graphs {
            for p in [Rational::new(1, 4), Rational::new(1, 2), Rational::new(3, 4)] {
                for e in 0..g.m() {
                    let d = uncapped(exact_outcome_distribution(g, e, p, None).unwrap());
                    assert_eq!(d, subset_oracle(g, e, p), "e={e} p={p}");
                }
            }
        }
    }

    #[test]
    fn capped_distribution_folds_the_tail() {
        let g = generate(&Family::Complete { n: 5 }).unwrap();
        let p = Rational::new(1, 3);
        let cap = 2;
        let capped = exact_outcome_distribution(&g, 0, p, Some(cap)).unwrap();
        let full = subset_oracle(&g, 0, p);
        let tail: Rational = full.iter().filter(|(&s, _)| s > cap + 1).map(|(_, w)| *w).sum();
        assert_eq!(capped[&Outcome::Capped], tail);
        for (s, w) in full.iter().filter(|(&s, _)| s <= cap + 1) {
            assert_eq!(capped[&Outcome::Reached(*s)], *w);
        }
    }

    #[test]
    fn trace_invariants() {
        let g = generate(&Family::Hypercube { dim: 4 }).unwrap();
        for seed in 0..200 {
            let tr = explore(&g, (seed % 32) as usize, 0.4, None, seed).unwrap();
            for s in &tr.steps {
                // S_0 already holds the start edge
                assert_eq!(s.s_size - 1 + s.b_size, s.t);
            }
            assert_eq!(tr.reached_count(), tr.tree.len() + 1);
            assert!(g.is_connected_edge_set(&EdgeSet::from_indices(g.m(), tr.tree.iter().copied())));
            assert_eq!(g.edge_endpoints_cover(&EdgeSet::from_indices(g.m(), tr.tree.iter().copied())), tr.reached);
        }
    }

    #[test]
    fn probes_take_smallest_frontier_edge() {
        let g = generate(&Family::Complete { n: 6 }).unwrap();
        let mut x = Explorer::new(&g, 7, None).unwrap();
        while let Some(id) = x.next_edge() {
            assert_eq!(Some(id), x.frontier().min());
            for f in x.frontier() {
                let (u, v) = g.edge(f);
                assert!(x.reached().contains(u) ^ x.reached().contains(v));
                assert!(!x.blocked().contains(f));
            }
            x.resolve(id % 3 == 0);
        }
    }

    #[test]
    fn p_one_reaches_whole_component() {
        let g = generate(&Family::Barbell { half: 5 }).unwrap();
        let tr = explore(&g, 0, 1.0, None, 1).unwrap();
        assert_eq!(tr.reached_count(), 10);
        assert_eq!(tr.termination, Termination::Exhausted);
        let capped = explore_component(&g, 0, 1.0, 0.25, 1).unwrap();
        assert!(capped.capped());
        assert_eq!(capped.tree.len(), tree_cap(10, 0.25) + 1);
    }

    #[test]
    fn p_zero_stays_at_start() {
        let g = generate(&Family::Complete { n: 5 }).unwrap();
        let tr = explore_component(&g, 3, 0.0, 0.5, 9).unwrap();
        assert_eq!(tr.tree, vec![3]);
        assert_eq!(tr.reached_count(), 2);
        assert_eq!(tr.steps.len(), 6);
        assert!(tr.steps.iter().all(|s| !s.survived));
    }

    #[test]
    fn rejects_bad_input() {
        let g = triangle();
        assert!(explore(&g, 3, 0.5, None, 0).is_err());
        assert!(explore(&g, 0, 1.5, None, 0).is_err());
        assert!(explore_component(&g, 0, 0.5, 0.5, 0).is_err());
    }

    #[test]
    fn sampled_sizes_follow_exact_law() {
        let g = generate(&Family::Cycle { n: 5 }).unwrap();
        let exact = uncapped(exact_outcome_distribution(&g, 0, Rational::new(1, 2), None).unwrap());
        let trials = 40_000;
        let mut counts = BTreeMap::new();
        for s in 0..trials {
            *counts.entry(explore(&g, 0, 0.5, None, s).unwrap().reached_count()).or_insert(0usize) += 1;
        }
        for (size, w) in exact {
            let q = *w.numer() as f64 / *w.denom() as f64;
            let got = counts.get(&size).copied().unwrap_or(0) as f64 / trials as f64;
            let se = (q * (1.0 - q) / trials as f64).sqrt();
            assert!((got - q).abs() < 4.0 * se + 1e-12, "size {size}: {got} vs {q}");
        }
    }
}
