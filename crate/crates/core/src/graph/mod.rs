//! Undirected simple graphs with stable edge identifiers.
//!
//! Edge ids are positions in the edge sequence and are the item universe
//! for group testing: a test is an [`EdgeSet`] over `[0, m)`.

mod components;
mod expansion;
mod generate;
mod mincut;
mod sparsify;
mod spectral;

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

pub use components::{components_of, connected_components, ComponentLabeling, UnionFind};
pub use expansion::{certify_expansion, sample_expansion, CertificateMethod, ExpansionCertificate};
pub use generate::{generate, Family};
pub use mincut::min_cut;
pub use sparsify::{sparsify, sparsify_mask, Sparsified};
pub use spectral::{second_eigenvalue, spectral_expansion_bounds, SpectralBounds};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

pub type VertexSet = BitSet;
pub type EdgeSet = BitSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds a graph from an edge list. Each pair is normalized to `u < v`;
    /// self-loops, duplicates and out-of-range endpoints are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        let mut adjacency = vec![Vec::new(); n];
        for (a, b) in edges {
            if a == b {
                return Err(Error::param(format!("self-loop at vertex {a}")));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if v >= n {
                return Err(Error::param(format!("edge ({u}, {v}) out of range for n = {n}")));
            }
            if !seen.insert((u, v)) {
                return Err(Error::param(format!("duplicate edge ({u}, {v})")));
            }
            let id = list.len();
            list.push((u, v));
            adjacency[u].push((v, id));
            adjacency[v].push((u, id));
        }
        Ok(Graph {
            n,
            edges: list,
            adjacency,
        })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn edge(&self, id: usize) -> (usize, usize) {
        self.edges[id]
    }

    /// `(neighbor, edge id)` pairs incident to `v`.
    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// `Some(D)` when every vertex has degree `D`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.min_degree();
        (self.n > 0 && self.max_degree() == d).then_some(d)
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::new(self.n)
    }

    pub fn edge_set(&self) -> EdgeSet {
        EdgeSet::new(self.m())
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || connected_components(self).count() == 1
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color = vec![u8::MAX; self.n];
        let mut stack = Vec::new();
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adjacency[v] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        stack.push(w);
                    } else if color[w] == color[v] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Edges with exactly one endpoint in `a`.
    pub fn boundary(&self, a: &VertexSet) -> EdgeSet {
        let mut out = self.edge_set();
        for (id, &(u, v)) in self.edges.iter().enumerate() {
            if a.contains(u) != a.contains(v) {
                out.insert(id);
            }
        }
        out
    }

    /// Vertices that are an endpoint of some edge in `b`.
    pub fn edge_endpoints_cover(&self, b: &EdgeSet) -> VertexSet {
        let mut out = self.vertex_set();
        for id in b {
            let (u, v) = self.edges[id];
            out.insert(u);
            out.insert(v);
        }
        out
    }

    /// Edges sharing an endpoint with `id`, excluding `id` itself.
    pub fn adjacent_edges(&self, id: usize) -> EdgeSet {
        let (u, v) = self.edges[id];
        let mut out = self.edge_set();
        for &(_, f) in self.adjacency[u].iter().chain(&self.adjacency[v]) {
            if f != id {
                out.insert(f);
            }
        }
        out
    }

    /// True when `(N(T), T)` is a single connected component and `T` is
    /// nonempty.
    pub fn is_connected_edge_set(&self, t: &EdgeSet) -> bool {
        let Some(first) = t.first() else {
            return false;
        };
        let mut uf = UnionFind::new(self.n);
        for id in t {
            let (u, v) = self.edges[id];
            uf.union(u, v);
        }
        let root = uf.find(self.edges[first].0);
        t.iter().all(|id| uf.find(self.edges[id].0) == root)
    }

    /// Text form: `n m`, then one `u v` line per edge in id order.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(16 + self.m() * 10);
        let _ = writeln!(s, "{} {}", self.n, self.m());
        for &(u, v) in &self.edges {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (ln, header) = lines.next().ok_or_else(|| Error::parse(1, "missing header"))?;
        let (n, m) = parse_pair(ln, header)?;
        let mut edges = Vec::with_capacity(m);
        for (ln, line) in lines {
            let (u, v) = parse_pair(ln, line)?;
            if u >= v {
                return Err(Error::parse(ln, format!("expected u < v, got {u} {v}")));
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::parse(
                0,
                format!("header declares {m} edges, found {}", edges.len()),
            ));
        }
        Graph::new(n, edges)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }
}

fn parse_pair(line_no: usize, line: &str) -> Result<(usize, usize)> {
    let mut it = line.split_whitespace();
    let mut next = || -> Result<usize> {
        it.next()
            .ok_or_else(|| Error::parse(line_no, "expected two integers"))?
            .parse()
            .map_err(|e| Error::parse(line_no, format!("{e}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(Error::parse(line_no, "trailing tokens"));
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn complete(n: usize) -> Graph {
        generate(&Family::Complete { n }).unwrap()
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(Graph::new(3, [(0, 0)]).is_err());
        assert!(Graph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, [(0, 3)]).is_err());
    }

    #[test]
    fn adjacency_lists_each_edge_twice() {
        let g = generate(&Family::FatTree { k: 4, hosts: true }).unwrap();
        let mut count = vec![0; g.m()];
        for v in 0..g.n() {
            for &(_, id) in g.neighbors(v) {
                count[id] += 1;
            }
        }
        assert!(count.iter().all(|&c| c == 2));
    }

    #[test]
    fn boundary_examples() {
        let k5 = complete(5);
        assert_eq!(k5.boundary(&VertexSet::from_indices(5, [0, 1])).count(), 6);
        let q3 = generate(&Family::Hypercube { dim: 3 }).unwrap();
        assert_eq!(q3.boundary(&VertexSet::from_indices(8, [0])).count(), 3);
        let bb = generate(&Family::Barbell { half: 4 }).unwrap();
        assert_eq!(bb.boundary(&VertexSet::from_indices(8, 0..4)).count(), 1);
        assert!(k5.boundary(&k5.vertex_set()).is_empty());
    }

    #[test]
    fn endpoint_cover_examples() {
        let k4 = complete(4);
        assert!(k4.edge_endpoints_cover(&k4.edge_set()).is_empty());
        let (u, v) = k4.edge(3);
        let one = k4.edge_endpoints_cover(&EdgeSet::from_indices(6, [3]));
        assert_eq!(one.iter().collect::<Vec<_>>(), vec![u, v]);
        assert_eq!(k4.edge_endpoints_cover(&EdgeSet::full(6)).count(), 4);
    }

    #[test]
    fn text_parse_errors() {
        assert!(Graph::from_text("").is_err());
        assert!(Graph::from_text("3 1\n1 0\n").is_err());
        assert!(Graph::from_text("3 2\n0 1\n").is_err());
        assert!(Graph::from_text("3 1\n0 x\n").is_err());
    }

    #[test]
    fn bipartite_detection() {
        assert!(generate(&Family::Hypercube { dim: 4 }).unwrap().is_bipartite());
        assert!(generate(&Family::FatTree { k: 4, hosts: true }).unwrap().is_bipartite());
        assert!(!complete(3).is_bipartite());
        assert!(!generate(&Family::Cycle { n: 5 }).unwrap().is_bipartite());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..12).prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect();
            let len = pairs.len();
            proptest::collection::vec(any::<bool>(), len).prop_map(move |keep| {
                let edges = pairs.iter().zip(&keep).filter(|(_, &k)| k).map(|(&e, _)| e);
                Graph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn text_round_trip(g in arb_graph()) {
            prop_assert_eq!(Graph::from_text(&g.to_text()).unwrap(), g);
        }

        #[test]
        fn boundary_is_symmetric_under_complement(g in arb_graph(), bits in any::<u64>()) {
            let a = VertexSet::from_indices(g.n(), (0..g.n()).filter(|i| bits >> i & 1 == 1));
            prop_assert_eq!(g.boundary(&a), g.boundary(&a.complement()));
        }
    }
}
