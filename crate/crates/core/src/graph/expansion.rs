use num_rational::Ratio;
use rand::Rng;

use super::{Graph, VertexSet};
use crate::error::{Error, Result};
use crate::seed;

/// Largest vertex count for which exhaustive certification is offered.
pub const EXACT_MAX_VERTICES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateMethod {
    /// Minimum over every eligible vertex set; `alpha` is the true constant.
    Exact,
    /// Minimum over randomly grown sets. Heuristic: `alpha` is only an upper
    /// bound on the true expansion constant.
    Sampled { samples: usize },
}

/// `alpha = min |∂A| / |A|` over nonempty `A` with `|A| <= beta * n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionCertificate {
    pub beta: f64,
    pub alpha: Ratio<u64>,
    pub witness: Option<VertexSet>,
    pub method: CertificateMethod,
}

impl ExpansionCertificate {
    pub fn alpha_f64(&self) -> f64 {
        *self.alpha.numer() as f64 / *self.alpha.denom() as f64
    }
}

fn size_limit(g: &Graph, beta: f64) -> Result<usize> {
    if !(beta > 0.0 && beta <= 0.5) {
        return Err(Error::param(format!("beta must lie in (0, 1/2], got {beta}")));
    }
    let limit = (beta * g.n() as f64 + 1e-9).floor() as usize;
    if limit < 1 {
        return Err(Error::param(format!(
            "beta * n = {} < 1 leaves no eligible vertex set",
            beta * g.n() as f64
        )));
    }
    Ok(limit)
}

/// Exhaustive certificate for graphs with at most 24 vertices. Subsets are
/// visited in Gray-code order, updating `|∂A|` incrementally, and the first
/// set achieving the minimum ratio is returned as the witness.
pub fn certify_expansion(g: &Graph, beta: f64) -> Result<ExpansionCertificate> {
    let n = g.n();
    if n > EXACT_MAX_VERTICES {
        return Err(Error::param(format!(
            "exact expansion needs n <= {EXACT_MAX_VERTICES}, got {n}; use sampled mode"
        )));
    }
    let limit = size_limit(g, beta)?;
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &(w, _)| m | 1 << w))
        .collect();

    let mut set = 0u32;
    let mut size = 0usize;
    let mut boundary = 0usize;
    // best ratio as (boundary, size); starts above any attainable value
    let mut best: Option<(usize, usize, u32)> = None;
    for i in 1u64..(1u64 << n) {
        let v = i.trailing_zeros() as usize;
        let bit = 1u32 << v;
        let deg = adj[v].count_ones() as usize;
        if set & bit == 0 {
            let inside = (adj[v] & set).count_ones() as usize;
            boundary = boundary + deg - 2 * inside;
            set |= bit;
            size += 1;
        } else {
            set &= !bit;
            let inside = (adj[v] & set).count_ones() as usize;
            boundary = boundary + 2 * inside - deg;
            size -= 1;
        }
        if size == 0 || size > limit {
            continue;
        }
        let better = match best {
            None => true,
            Some((b, s, _)) => boundary * s < b * size,
        };
        if better {
            best = Some((boundary, size, set));
        }
    }
    let (b, s, mask) = best.expect("limit >= 1 guarantees a singleton");
    Ok(ExpansionCertificate {
        beta,
        alpha: Ratio::new(b as u64, s as u64),
        witness: Some(VertexSet::from_indices(n, (0..n).filter(|&v| mask >> v & 1 == 1))),
        method: CertificateMethod::Exact,
    })
}

/// Heuristic certificate for larger graphs: grows `samples` random
/// connected vertex sets of random size and reports the smallest ratio seen.
pub fn sample_expansion(g: &Graph, beta: f64, samples: usize, seed: u64) -> Result<ExpansionCertificate> {
    let limit = size_limit(g, beta)?;
    if samples == 0 {
        return Err(Error::param("sampled expansion needs at least one sample"));
    }
    let n = g.n();
    let mut rng = seed::rng(seed);
    let mut best: Option<(usize, usize, VertexSet)> = None;
    for _ in 0..samples {
        let target = rng.gen_range(1..=limit);
        let mut set = g.vertex_set();
        let mut members = vec![rng.gen_range(0..n)];
        set.insert(members[0]);
        while members.len() < target {
            let frontier: Vec<usize> = members
                .iter()
                .flat_map(|&v| g.neighbors(v).iter().map(|&(w, _)| w))
                .filter(|&w| !set.contains(w))
                .collect();
            if frontier.is_empty() {
                break;
            }
            let w = frontier[rng.gen_range(0..frontier.len())];
            set.insert(w);
            members.push(w);
        }
        let b = g.boundary(&set).count();
        let s = members.len();
        if best.as_ref().is_none_or(|(bb, ss, _)| b * ss < bb * s) {
            best = Some((b, s, set));
        }
    }
    let (b, s, set) = best.expect("samples >= 1");
    Ok(ExpansionCertificate {
        beta,
        alpha: Ratio::new(b as u64, s as u64),
        witness: Some(set),
        method: CertificateMethod::Sampled { samples },
    })
}
