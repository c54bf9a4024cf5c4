use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;

use super::{sparsify_mask, Graph};
use crate::error::{Error, Result};
use crate::seed;

/// Restart cap for random regular generation.
pub const MAX_REGULAR_RESTARTS: usize = 10_000;

/// The graph families used throughout the experiments.
///
/// The string form (`FromStr`/`Display`) is `name:arg:arg...`, e.g.
/// `complete:23`, `hypercube:6`, `fat_tree:8`, `fat_tree:4:hosts`,
/// `random_regular:100:10:7` (n, degree, seed) and `erdos_renyi:50:0.2:7`
/// (n, p, seed).
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Complete { n: usize },
    Hypercube { dim: usize },
    RandomRegular { n: usize, degree: usize, seed: u64 },
    ErdosRenyi { n: usize, p: f64, seed: u64 },
    Barbell { half: usize },
    FatTree { k: usize, hosts: bool },
    Cycle { n: usize },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Complete { .. } => "complete",
            Family::Hypercube { .. } => "hypercube",
            Family::RandomRegular { .. } => "random_regular",
            Family::ErdosRenyi { .. } => "erdos_renyi",
            Family::Barbell { .. } => "barbell",
            Family::FatTree { .. } => "fat_tree",
            Family::Cycle { .. } => "cycle",
        }
    }

    /// `key=value` pairs joined by `;`, used in CSV output.
    pub fn params(&self) -> String {
        match self {
            Family::Complete { n } | Family::Cycle { n } => format!("n={n}"),
            Family::Hypercube { dim } => format!("dim={dim}"),
            Family::RandomRegular { n, degree, seed } => {
                format!("n={n};degree={degree};seed={seed}")
            }
            Family::ErdosRenyi { n, p, seed } => format!("n={n};p={p};seed={seed}"),
            Family::Barbell { half } => format!("half={half}"),
            Family::FatTree { k, hosts } => format!("k={k};hosts={hosts}"),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete { n } => write!(f, "complete:{n}"),
            Family::Cycle { n } => write!(f, "cycle:{n}"),
            Family::Hypercube { dim } => write!(f, "hypercube:{dim}"),
            Family::RandomRegular { n, degree, seed } => {
                write!(f, "random_regular:{n}:{degree}:{seed}")
            }
            Family::ErdosRenyi { n, p, seed } => write!(f, "erdos_renyi:{n}:{p}:{seed}"),
            Family::Barbell { half } => write!(f, "barbell:{half}"),
            Family::FatTree { k, hosts: false } => write!(f, "fat_tree:{k}"),
            Family::FatTree { k, hosts: true } => write!(f, "fat_tree:{k}:hosts"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::param(format!("unrecognized graph family `{s}`"));
        let int = |i: usize| -> Result<usize> {
            parts.get(i).ok_or_else(bad)?.parse().map_err(|_| bad())
        };
        let seed = |i: usize| -> Result<u64> {
            parts.get(i).ok_or_else(bad)?.parse().map_err(|_| bad())
        };
        let arity = |k: usize| if parts.len() == k { Ok(()) } else { Err(bad()) };
        let family = match parts[0] {
            "complete" => {
                arity(2)?;
                Family::Complete { n: int(1)? }
            }
            "cycle" => {
                arity(2)?;
                Family::Cycle { n: int(1)? }
            }
            "hypercube" => {
                arity(2)?;
                Family::Hypercube { dim: int(1)? }
            }
            "barbell" => {
                arity(2)?;
                Family::Barbell { half: int(1)? }
            }
            "fat_tree" => {
                let hosts = match parts.get(2) {
                    None => false,
                    Some(&"hosts") => true,
                    Some(_) => return Err(bad()),
                };
                if parts.len() > 3 {
                    return Err(bad());
                }
                Family::FatTree { k: int(1)?, hosts }
            }
            "random_regular" => {
                arity(4)?;
                Family::RandomRegular {
                    n: int(1)?,
                    degree: int(2)?,
                    seed: seed(3)?,
                }
            }
            "erdos_renyi" => {
                arity(4)?;
                Family::ErdosRenyi {
                    n: int(1)?,
                    p: parts[2].parse().map_err(|_| bad())?,
                    seed: seed(3)?,
                }
            }
            _ => return Err(bad()),
        };
        Ok(family)
    }
}

/// Builds a graph of the given family. Deterministic in the parameters
/// (including the seed for random families).
pub fn generate(family: &Family) -> Result<Graph> {
    match *family {
        Family::Complete { n } => {
            if n < 2 {
                return Err(Error::param("complete graph needs n >= 2"));
            }
            Ok(complete(n))
        }
        Family::Cycle { n } => {
            if n < 3 {
                return Err(Error::param("cycle needs n >= 3"));
            }
            Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        Family::Hypercube { dim } => {
            if dim == 0 || dim > 24 {
                return Err(Error::param("hypercube dimension must be in 1..=24"));
            }
            let n = 1usize << dim;
            let edges = (0..n).flat_map(|v| {
                (0..dim)
                    .map(move |b| (v, v ^ (1 << b)))
                    .filter(|&(v, w)| v < w)
            });
            Graph::new(n, edges)
        }
        Family::Barbell { half } => {
            if half < 2 {
                return Err(Error::param("barbell needs half >= 2"));
            }
            let clique = |off: usize| {
                (0..half).flat_map(move |i| (i + 1..half).map(move |j| (off + i, off + j)))
            };
            let edges = clique(0)
                .chain(clique(half))
                .chain(std::iter::once((half - 1, half)));
            Graph::new(2 * half, edges)
        }
        Family::FatTree { k, hosts } => fat_tree(k, hosts),
        Family::ErdosRenyi { n, p, seed } => {
            if n < 1 {
                return Err(Error::param("erdos_renyi needs n >= 1"));
            }
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::param(format!("edge probability {p} outside [0, 1]")));
            }
            let base = if n >= 2 { complete(n) } else { Graph::empty(n) };
            let keep = sparsify_mask(&base, p, &mut seed::rng(seed));
            Graph::new(n, keep.iter().map(|id| base.edge(id)))
        }
        Family::RandomRegular { n, degree, seed } => random_regular(n, degree, seed),
    }
}

fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    Graph::new(n, edges).expect("complete graph edges are simple")
}

/// k-ary fat tree: `(k/2)^2` core switches, then per pod `k/2` aggregation
/// and `k/2` edge switches, then (optionally) `k/2` hosts per edge switch.
/// Aggregation switch `j` of every pod connects to cores `j*k/2 .. j*k/2 + k/2`.
fn fat_tree(k: usize, hosts: bool) -> Result<Graph> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::param(format!("fat tree arity must be even and >= 2, got {k}")));
    }
    let h = k / 2;
    let cores = h * h;
    let agg = |pod: usize, j: usize| cores + pod * k + j;
    let edge_sw = |pod: usize, i: usize| cores + pod * k + h + i;
    let switches = cores + k * k;
    let n = if hosts { switches + k * h * h } else { switches };

    let mut edges = Vec::with_capacity(k * k * k / 2 + if hosts { k * h * h } else { 0 });
    for pod in 0..k {
        for i in 0..h {
            for j in 0..h {
                edges.push((edge_sw(pod, i), agg(pod, j)));
            }
        }
        for j in 0..h {
            for c in 0..h {
                edges.push((j * h + c, agg(pod, j)));
            }
        }
    }
    if hosts {
        for pod in 0..k {
            for i in 0..h {
                for x in 0..h {
                    edges.push((edge_sw(pod, i), switches + (pod * h + i) * h + x));
                }
            }
        }
    }
    Graph::new(n, edges)
}

/// Pairing model: stubs are shuffled and paired; loops and repeated pairs
/// are returned to the pool and re-paired, and the attempt restarts from
/// scratch when the leftover stubs admit no simple pairing.
fn random_regular(n: usize, degree: usize, seed: u64) -> Result<Graph> {
    if degree >= n || !(n * degree).is_multiple_of(2) {
        return Err(Error::param(format!(
            "random regular graph needs degree < n and n*degree even (n = {n}, degree = {degree})"
        )));
    }
    if degree == 0 {
        return Ok(Graph::empty(n));
    }
    let mut rng = seed::rng(seed);
    for _ in 0..MAX_REGULAR_RESTARTS {
        if let Some(mut edges) = try_pairing(n, degree, &mut rng) {
            edges.sort_unstable();
            return Graph::new(n, edges);
        }
    }
    Err(Error::RestartsExhausted {
        restarts: MAX_REGULAR_RESTARTS,
    })
}

fn try_pairing(n: usize, degree: usize, rng: &mut seed::GcgtRng) -> Option<Vec<(usize, usize)>> {
    let mut edges: HashSet<(usize, usize)> = HashSet::with_capacity(n * degree / 2);
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, degree)).collect();
    while !stubs.is_empty() {
        let mut leftover: BTreeMap<usize, usize> = BTreeMap::new();
        stubs.shuffle(rng);
        for pair in stubs.chunks_exact(2) {
            let (u, v) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if u != v && edges.insert((u, v)) {
                continue;
            }
            *leftover.entry(u).or_default() += 1;
            *leftover.entry(v).or_default() += 1;
        }
        if !leftover_pairable(&edges, &leftover) {
            return None;
        }
        stubs = leftover
            .iter()
            .flat_map(|(&v, &c)| std::iter::repeat_n(v, c))
            .collect();
    }
    let mut out: Vec<_> = edges.into_iter().collect();
    out.sort_unstable();
    Some(out)
}

fn leftover_pairable(edges: &HashSet<(usize, usize)>, leftover: &BTreeMap<usize, usize>) -> bool {
    if leftover.is_empty() {
        return true;
    }
    let vs: Vec<usize> = leftover.keys().copied().collect();
    vs.iter()
        .enumerate()
        .any(|(i, &u)| vs[i + 1..].iter().any(|&v| !edges.contains(&(u, v))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nm(f: Family) -> (usize, usize) {
        let g = generate(&f).unwrap();
        (g.n(), g.m())
    }

    #[test]
    fn family_sizes() {
        assert_eq!(nm(Family::FatTree { k: 4, hosts: true }), (36, 48));
        assert_eq!(nm(Family::FatTree { k: 8, hosts: false }), (80, 256));
        assert_eq!(nm(Family::FatTree { k: 6, hosts: false }), (45, 108));
        assert_eq!(nm(Family::Hypercube { dim: 6 }), (64, 192));
        assert_eq!(nm(Family::Complete { n: 23 }), (23, 253));
        assert_eq!(nm(Family::Barbell { half: 4 }), (8, 13));
    }

    #[test]
    fn fat_tree_size_formula() {
        for k in (2..=12).step_by(2) {
            let (n, m) = nm(Family::FatTree { k, hosts: false });
            assert_eq!(n, 5 * k * k / 4);
            assert_eq!(m, k * k * k / 2);
            let (nh, mh) = nm(Family::FatTree { k, hosts: true });
            assert_eq!(nh, n + k * k * k / 4);
            assert_eq!(mh, m + k * k * k / 4);
        }
    }

    #[test]
    fn fat_tree_degrees() {
        let g = generate(&Family::FatTree { k: 8, hosts: false }).unwrap();
        // cores see one aggregation switch per pod
        assert!((0..16).all(|v| g.degree(v) == 8));
        assert_eq!(g.min_degree(), 4);
        assert_eq!(g.max_degree(), 8);
        assert!(g.is_connected());
    }

    #[test]
    fn invalid_parameters() {
        assert!(generate(&Family::FatTree { k: 5, hosts: false }).is_err());
        assert!(generate(&Family::Complete { n: 1 }).is_err());
        assert!(generate(&Family::Hypercube { dim: 0 }).is_err());
        assert!(generate(&Family::Barbell { half: 1 }).is_err());
        assert!(generate(&Family::RandomRegular { n: 5, degree: 3, seed: 0 }).is_err());
        assert!(generate(&Family::RandomRegular { n: 4, degree: 4, seed: 0 }).is_err());
        assert!(generate(&Family::ErdosRenyi { n: 5, p: 1.5, seed: 0 }).is_err());
    }

    #[test]
    fn random_regular_is_simple_and_regular() {
        for seed in 0..20 {
            let g = generate(&Family::RandomRegular { n: 100, degree: 10, seed }).unwrap();
            assert_eq!(g.regular_degree(), Some(10));
            assert_eq!(g.m(), 500);
        }
        let g = generate(&Family::RandomRegular { n: 10, degree: 5, seed: 3 }).unwrap();
        assert_eq!((g.m(), g.regular_degree()), (25, Some(5)));
    }

    #[test]
    fn random_families_are_deterministic() {
        let f = Family::RandomRegular { n: 30, degree: 4, seed: 11 };
        assert_eq!(generate(&f).unwrap(), generate(&f).unwrap());
        let f = Family::ErdosRenyi { n: 30, p: 0.3, seed: 11 };
        assert_eq!(generate(&f).unwrap(), generate(&f).unwrap());
    }

    #[test]
    fn family_strings_round_trip() {
        for s in [
            "complete:23",
            "hypercube:6",
            "fat_tree:8",
            "fat_tree:4:hosts",
            "barbell:4",
            "cycle:5",
            "random_regular:100:10:7",
            "erdos_renyi:50:0.2:7",
        ] {
            assert_eq!(s.parse::<Family>().unwrap().to_string(), s);
        }
        assert!("fat_tree".parse::<Family>().is_err());
        assert!("complete:3:4".parse::<Family>().is_err());
        assert!("torus:3".parse::<Family>().is_err());
    }
}
