use rand::Rng;

use super::{EdgeSet, Graph};
use crate::error::{Error, Result};
use crate::seed::{self, GcgtRng};

/// A random subgraph `G(p)` together with the original id of every
/// surviving edge (`original_ids[new_id] = old_id`).
#[derive(Clone, Debug, PartialEq)]
pub struct Sparsified {
    pub graph: Graph,
    pub original_ids: Vec<usize>,
}

/// Draws the surviving edge set of `G(p)`: one uniform draw per edge in
/// ascending id order, edge kept iff the draw is below `p`.
pub fn sparsify_mask(g: &Graph, p: f64, rng: &mut GcgtRng) -> EdgeSet {
    let mut keep = g.edge_set();
    for id in 0..g.m() {
        if rng.gen::<f64>() < p {
            keep.insert(id);
        }
    }
    keep
}

pub fn sparsify(g: &Graph, p: f64, seed: u64) -> Result<Sparsified> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("probability {p} outside [0, 1]")));
    }
    let keep = sparsify_mask(g, p, &mut seed::rng(seed));
    let original_ids: Vec<usize> = keep.iter().collect();
    let graph = Graph::new(g.n(), original_ids.iter().map(|&id| g.edge(id)))?;
    Ok(Sparsified {
        graph,
        original_ids,
    })
}
