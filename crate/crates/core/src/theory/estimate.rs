use serde::Serialize;

/// A binomial proportion with its standard error `sqrt(p(1-p)/trials)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub successes: u64,
    pub trials: u64,
}

impl Estimate {
    pub fn new(successes: u64, trials: u64) -> Self {
        Estimate { successes, trials }
    }

    pub fn rate(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }

    pub fn stderr(&self) -> f64 {
        let p = self.rate();
        (p * (1.0 - p) / self.trials as f64).sqrt()
    }

    /// Whether `rate >= value - k * stderr`.
    pub fn consistent_with_lower_bound(&self, value: f64, k: f64) -> bool {
        self.rate() >= value - k * self.stderr()
    }
}
