use super::Graph;
use crate::error::{Error, Result};

/// Global minimum edge cut (Stoer–Wagner). Returns 0 for disconnected
/// graphs.
pub fn min_cut(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n < 2 {
        return Err(Error::param("minimum cut needs at least two vertices"));
    }
    if !g.is_connected() {
        return Ok(0);
    }
    let mut w = vec![vec![0usize; n]; n];
    for &(u, v) in g.edges() {
        w[u][v] += 1;
        w[v][u] += 1;
    }
    let mut active: Vec<usize> = (0..n).collect();
    let mut best = usize::MAX;
    while active.len() > 1 {
        // maximum adjacency ordering over the active (merged) vertices
        let mut key = vec![0usize; n];
        let mut added = vec![false; n];
        let mut prev = active[0];
        for step in 0..active.len() {
            let next = *active
                .iter()
                .filter(|&&v| !added[v])
                .max_by(|&&a, &&b| key[a].cmp(&key[b]).then(b.cmp(&a)))
                .expect("unadded vertex remains");
            added[next] = true;
            if step == active.len() - 1 {
                best = best.min(key[next]);
                // merge `next` into `prev`
                for &v in &active {
                    w[prev][v] += w[next][v];
                    w[v][prev] = w[prev][v];
                }
                w[prev][prev] = 0;
                active.retain(|&v| v != next);
                break;
            }
            prev = next;
            for &v in &active {
                if !added[v] {
                    key[v] += w[next][v];
                }
            }
        }
    }
    Ok(best)
}
