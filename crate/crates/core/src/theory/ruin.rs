use crate::error::{Error, Result};

/// An asymmetric ±1 walk from 0 stepping up with probability `gamma`,
/// absorbed at `+a` or `-b`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RuinParams {
    pub gamma: f64,
    pub a: u32,
    pub b: u32,
}

impl RuinParams {
    pub fn new(gamma: f64, a: u32, b: u32) -> Result<Self> {
        let r = RuinParams { gamma, a, b };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.gamma) {
            return Err(Error::param(format!("gamma {} outside [0, 1]", self.gamma)));
        }
        if self.a == 0 || self.b == 0 {
            return Err(Error::param("a and b must be at least 1"));
        }
        Ok(())
    }
}

/// Width of the band around 1/2 treated as the symmetric case.
pub const SYMMETRIC_BAND: f64 = 1e-12;

/// Probability of reaching `+a` before `-b`:
/// `(1 - phi^b) / (1 - phi^(a+b))` with `phi = (1 - gamma) / gamma`, and
/// `b / (a + b)` for the fair walk.
pub fn gamblers_ruin(params: &RuinParams) -> f64 {
    let RuinParams { gamma, a, b } = *params;
    if gamma <= 0.0 {
        return 0.0;
    }
    if gamma >= 1.0 {
        return 1.0;
    }
    let (a, b) = (a as f64, b as f64);
    if (gamma - 0.5).abs() < SYMMETRIC_BAND {
        return b / (a + b);
    }
    // expm1 keeps the quotient accurate when phi is close to 1
    let ln_phi = (1.0 - gamma).ln() - gamma.ln();
    if ln_phi < 0.0 {
        (b * ln_phi).exp_m1() / ((a + b) * ln_phi).exp_m1()
    } else {
        // divide through by phi^(a+b) so nothing overflows
        (-a * ln_phi).exp() * (-b * ln_phi).exp_m1() / (-(a + b) * ln_phi).exp_m1()
    }
}

/// Residual below which value iteration is considered converged.
pub const ORACLE_RESIDUAL: f64 = 1e-13;
const MAX_SWEEPS: usize = 50_000_000;

/// Independent check of [`gamblers_ruin`]: Gauss-Seidel value iteration on
/// the absorbing chain over positions `-b..=a`. Sweeps continue until the
/// Bellman residual is below [`ORACLE_RESIDUAL`] and a sweep no longer
/// changes any value by more than machine rounding.
pub fn ruin_oracle(params: &RuinParams) -> f64 {
    let RuinParams { gamma, a, b } = *params;
    let (a, b) = (a as usize, b as usize);
    let len = a + b + 1;
    // index i is position i - b
    let mut v = vec![0.0f64; len];
    v[len - 1] = 1.0;
    for _ in 0..MAX_SWEEPS {
        let mut change = 0.0f64;
        for i in 1..len - 1 {
            let next = gamma * v[i + 1] + (1.0 - gamma) * v[i - 1];
            change = change.max((next - v[i]).abs());
            v[i] = next;
        }
        if change <= f64::EPSILON * 1e-2 {
            let residual = (1..len - 1)
                .map(|i| (gamma * v[i + 1] + (1.0 - gamma) * v[i - 1] - v[i]).abs())
                .fold(0.0, f64::max);
            if residual < ORACLE_RESIDUAL {
                break;
            }
        }
    }
    v[b]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(gamma: f64, a: u32, b: u32) -> RuinParams {
        RuinParams::new(gamma, a, b).unwrap()
    }

    #[test]
    fn fair_walk() {
        assert_eq!(gamblers_ruin(&r(0.5, 3, 1)), 0.25);
        assert_eq!(gamblers_ruin(&r(0.5, 4, 4)), 0.5);
        assert!((ruin_oracle(&r(0.5, 4, 4)) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn degenerate_gamma() {
        for (a, b) in [(1, 1), (5, 2), (2, 9)] {
            assert_eq!(gamblers_ruin(&r(1.0, a, b)), 1.0);
            assert_eq!(gamblers_ruin(&r(0.0, a, b)), 0.0);
            assert_eq!(ruin_oracle(&r(1.0, a, b)), 1.0);
            assert_eq!(ruin_oracle(&r(0.0, a, b)), 0.0);
        }
    }

    #[test]
    fn one_step_decides() {
        for g in [0.1, 0.3, 2.0 / 3.0, 0.9] {
            assert!((gamblers_ruin(&r(g, 1, 1)) - g).abs() < 1e-15);
            assert!((ruin_oracle(&r(g, 1, 1)) - g).abs() < 1e-15);
        }
    }

    #[test]
    fn closed_form_matches_oracle() {
        for gi in 1..20 {
            let g = gi as f64 / 20.0;
            for a in [1, 2, 5, 13] {
                for b in [1, 3, 7, 20] {
                    let p = r(g, a, b);
                    let (x, y) = (gamblers_ruin(&p), ruin_oracle(&p));
                    assert!((x - y).abs() <= 1e-12, "{p:?}: {x} vs {y}");
                }
            }
        }
    }

    #[test]
    fn continuous_at_one_half() {
        for (a, b) in [(1, 1), (3, 1), (7, 12), (40, 3)] {
            let fair = b as f64 / (a + b) as f64;
            let (lo, hi) = (r(0.5 - 1e-7, a, b), r(0.5 + 1e-7, a, b));
            // the first-order terms cancel in the average
            let mid = (gamblers_ruin(&lo) + gamblers_ruin(&hi)) / 2.0;
            assert!((mid - fair).abs() < 1e-9);
            assert!((gamblers_ruin(&lo) - ruin_oracle(&lo)).abs() < 1e-12);
            assert!((gamblers_ruin(&hi) - ruin_oracle(&hi)).abs() < 1e-12);
        }
    }

    #[test]
    fn extreme_bias_does_not_overflow() {
        let x = gamblers_ruin(&r(1e-3, 400, 400));
        assert!(x.is_finite() && (0.0..1e-300).contains(&x));
        let y = gamblers_ruin(&r(1.0 - 1e-3, 400, 400));
        assert!((y - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_invalid() {
        assert!(RuinParams::new(0.5, 0, 1).is_err());
        assert!(RuinParams::new(1.5, 1, 1).is_err());
    }
}
