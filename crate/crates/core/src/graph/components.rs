use super::{EdgeSet, Graph};

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }

    pub fn set_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }
}

/// Component ids are assigned in order of each component's smallest vertex,
/// so component 0 always contains vertex 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentLabeling {
    pub label: Vec<usize>,
    pub sizes: Vec<usize>,
}

impl ComponentLabeling {
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    /// Component of an edge's endpoints.
    pub fn of_edge(&self, g: &Graph, id: usize) -> usize {
        self.label[g.edge(id).0]
    }

    /// Largest component, ties broken by smallest minimum vertex (i.e. the
    /// smallest label).
    pub fn largest(&self) -> Option<usize> {
        let max = *self.sizes.iter().max()?;
        self.sizes.iter().position(|&s| s == max)
    }
}

pub fn connected_components(g: &Graph) -> ComponentLabeling {
    components_of(g, &EdgeSet::full(g.m()))
}

/// Components of the spanning subgraph `(V, kept)`.
pub fn components_of(g: &Graph, kept: &EdgeSet) -> ComponentLabeling {
    let mut uf = UnionFind::new(g.n());
    for id in kept {
        let (u, v) = g.edge(id);
        uf.union(u, v);
    }
    let mut root_label = vec![usize::MAX; g.n()];
    let mut label = vec![0; g.n()];
    let mut sizes = Vec::new();
    for v in 0..g.n() {
        let r = uf.find(v);
        if root_label[r] == usize::MAX {
            root_label[r] = sizes.len();
            sizes.push(0);
        }
        label[v] = root_label[r];
        sizes[label[v]] += 1;
    }
    ComponentLabeling { label, sizes }
}
