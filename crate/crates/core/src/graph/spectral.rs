use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};
use crate::seed;

const REL_TOL: f64 = 1e-9;
const MAX_ITERS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralBounds {
    pub degree: usize,
    /// Second-largest adjacency eigenvalue.
    pub lambda: f64,
    /// `(D - lambda) / 2`
    pub lower: f64,
    /// `sqrt(2 D (D - lambda))`
    pub upper: f64,
}

/// Second-largest adjacency eigenvalue of a connected `D`-regular graph.
///
/// Power iteration on `A + D I` (positive semidefinite for a `D`-regular
/// graph) restricted to the complement of the all-ones vector, stopped once
/// the eigen-residual drops below `1e-9` relative to `D`.
pub fn second_eigenvalue(g: &Graph) -> Result<f64> {
    let degree = g
        .regular_degree()
        .ok_or_else(|| Error::Domain("graph is not regular".into()))?;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    if n < 2 {
        return Err(Error::Domain("need at least two vertices".into()));
    }
    let shift = degree as f64;
    let scale = (2.0 * shift).max(1.0);
    let apply = |x: &[f64], y: &mut [f64]| {
        for v in 0..n {
            y[v] = shift * x[v] + g.neighbors(v).iter().map(|&(w, _)| x[w]).sum::<f64>();
        }
    };
    let project = |x: &mut [f64]| {
        let mean = x.iter().sum::<f64>() / n as f64;
        x.iter_mut().for_each(|xi| *xi -= mean);
        let norm = x.iter().map(|xi| xi * xi).sum::<f64>().sqrt();
        x.iter_mut().for_each(|xi| *xi /= norm);
    };

    let mut rng = seed::rng(0x5eed);
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen::<f64>() - 0.5).collect();
    project(&mut x);
    let mut y = vec![0.0; n];
    let mut rho = 0.0;
    for _ in 0..MAX_ITERS {
        apply(&x, &mut y);
        rho = x.iter().zip(&y).map(|(a, b)| a * b).sum::<f64>();
        let residual = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (b - rho * a).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual <= REL_TOL * scale {
            break;
        }
        std::mem::swap(&mut x, &mut y);
        project(&mut x);
    }
    Ok(rho - shift)
}

pub fn spectral_expansion_bounds(g: &Graph) -> Result<SpectralBounds> {
    let lambda = second_eigenvalue(g)?;
    let degree = g.regular_degree().expect("checked by second_eigenvalue");
    let gap = (degree as f64 - lambda).max(0.0);
    Ok(SpectralBounds {
        degree,
        lambda,
        lower: gap / 2.0,
        upper: (2.0 * degree as f64 * gap).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{certify_expansion, generate, Family};
    use nalgebra::DMatrix;

    fn dense_second_eigenvalue(g: &Graph) -> f64 {
        let n = g.n();
        let mut a = DMatrix::<f64>::zeros(n, n);
        for &(u, v) in g.edges() {
            a[(u, v)] = 1.0;
            a[(v, u)] = 1.0;
        }
        let mut ev: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
        ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
        ev[1]
    }

    #[test]
    fn complete_graphs_match_dense_solver() {
        for n in 3..=12 {
            let g = generate(&Family::Complete { n }).unwrap();
            let lam = second_eigenvalue(&g).unwrap();
            assert!((lam - dense_second_eigenvalue(&g)).abs() < 1e-8);
            assert!((lam + 1.0).abs() < 1e-8);
            let b = spectral_expansion_bounds(&g).unwrap();
            assert!((b.lower - n as f64 / 2.0).abs() < 1e-8);
            assert!((b.upper - (2.0 * (n - 1) as f64 * n as f64).sqrt()).abs() < 1e-7);
        }
    }

    #[test]
    fn hypercube_and_cycle() {
        let q3 = generate(&Family::Hypercube { dim: 3 }).unwrap();
        let b = spectral_expansion_bounds(&q3).unwrap();
        assert!((dense_second_eigenvalue(&q3) - 1.0).abs() < 1e-9);
        assert!((b.lambda - 1.0).abs() < 1e-8);
        assert!((b.lower - 1.0).abs() < 1e-8);
        assert!((b.upper - 12f64.sqrt()).abs() < 1e-7);

        let c4 = generate(&Family::Cycle { n: 4 }).unwrap();
        let b = spectral_expansion_bounds(&c4).unwrap();
        assert!(dense_second_eigenvalue(&c4).abs() < 1e-9);
        assert!(b.lambda.abs() < 1e-8);
        assert!((b.lower - 1.0).abs() < 1e-8);
        assert!((b.upper - 8f64.sqrt()).abs() < 1e-7);
    }

    #[test]
    fn irregular_is_domain_error() {
        let bb = generate(&Family::Barbell { half: 4 }).unwrap();
        assert!(matches!(spectral_expansion_bounds(&bb), Err(Error::Domain(_))));
    }

    #[test]
    fn lower_bound_below_exact_certificate() {
        let mut graphs = vec![
            generate(&Family::Hypercube { dim: 4 }).unwrap(),
            generate(&Family::Cycle { n: 9 }).unwrap(),
            generate(&Family::Complete { n: 10 }).unwrap(),
        ];
        for seed in 0..8 {
            graphs.push(generate(&Family::RandomRegular { n: 16, degree: 3, seed }).unwrap());
            graphs.push(generate(&Family::RandomRegular { n: 14, degree: 4, seed }).unwrap());
        }
        for g in graphs.iter().filter(|g| g.is_connected()) {
            let lam = second_eigenvalue(g).unwrap();
            assert!((lam - dense_second_eigenvalue(g)).abs() < 1e-6);
            let b = spectral_expansion_bounds(g).unwrap();
            let alpha = certify_expansion(g, 0.5).unwrap().alpha_f64();
            assert!(b.lower <= alpha + 1e-8, "lower {} alpha {alpha}", b.lower);
            assert!(alpha <= b.upper + 1e-8);
        }
    }
}
