use std::io::{Read, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::experiment::{ExperimentConfig, Method};
use crate::error::{Error, Result};
use crate::graph::Family;
use crate::seed::DERIVATION_RULE;

/// One point of an experiment curve. Serialized as the CSV columns
/// `family,params,method,d,tau,trials,successes,p_hat,stderr,seed`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub family: String,
    pub params: String,
    pub method: Method,
    pub d: usize,
    pub tau: usize,
    pub trials: u64,
    pub successes: u64,
    pub p_hat: f64,
    pub stderr: f64,
    pub seed: u64,
}

impl ExperimentRecord {
    pub fn new(family: &Family, method: Method, d: usize, tau: usize, trials: u64, successes: u64, seed: u64) -> Self {
        let p_hat = successes as f64 / trials as f64;
        ExperimentRecord {
            family: family.name().into(),
            params: family.params(),
            method,
            d,
            tau,
            trials,
            successes,
            p_hat,
            stderr: (p_hat * (1.0 - p_hat) / trials as f64).sqrt(),
            seed,
        }
    }

    pub fn sort_key(&self) -> (&str, &str, Method, usize, usize) {
        (&self.family, &self.params, self.method, self.d, self.tau)
    }

    /// Half-width of the plotted error band, `1/sqrt(trials)` (0.1 at 100
    /// trials).
    pub fn band(&self) -> f64 {
        1.0 / (self.trials as f64).sqrt()
    }

    /// Whether `p_hat` and `stderr` agree with `successes / trials`.
    pub fn is_consistent(&self) -> bool {
        let expected = ExperimentRecord {
            p_hat: self.successes as f64 / self.trials as f64,
            ..self.clone()
        };
        self.trials > 0
            && self.successes <= self.trials
            && self.p_hat == expected.p_hat
            && self.stderr == (expected.p_hat * (1.0 - expected.p_hat) / self.trials as f64).sqrt()
    }
}

pub fn write_csv<W: Write>(records: &[ExperimentRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if records.is_empty() {
        w.write_record(CSV_HEADER)?;
    }
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub const CSV_HEADER: [&str; 10] = [
    "family", "params", "method", "d", "tau", "trials", "successes", "p_hat", "stderr", "seed",
];

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ExperimentRecord>> {
    let mut r = csv::Reader::from_reader(input);
    if r.headers()?.iter().ne(CSV_HEADER) {
        return Err(Error::parse(1, format!("expected header {}", CSV_HEADER.join(","))));
    }
    let mut records = Vec::new();
    for (i, row) in r.deserialize::<ExperimentRecord>().enumerate() {
        let rec = row?;
        if !rec.is_consistent() {
            return Err(Error::parse(i + 2, "p_hat or stderr disagrees with successes/trials"));
        }
        records.push(rec);
    }
    Ok(records)
}

pub fn write_csv_file(records: &[ExperimentRecord], path: impl AsRef<Path>) -> Result<()> {
    write_csv(records, std::fs::File::create(path)?)
}

pub fn read_csv_file(path: impl AsRef<Path>) -> Result<Vec<ExperimentRecord>> {
    read_csv(std::fs::File::open(path)?)
}

/// What is needed to rerun an experiment bit for bit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub config: ExperimentConfig,
    pub seed: u64,
    pub derivation_rule: String,
    pub started_unix: u64,
    pub finished_unix: u64,
}

pub fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

impl RunManifest {
    pub fn new(config: &ExperimentConfig, started_unix: u64) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME").into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config: config.clone(),
            seed: config.seed,
            derivation_rule: DERIVATION_RULE.into(),
            started_unix,
            finished_unix: unix_now(),
        }
    }

    /// Rejects manifests whose seed rule this build does not implement.
    pub fn check_replayable(&self) -> Result<()> {
        if self.derivation_rule != DERIVATION_RULE {
            return Err(Error::param(format!(
                "manifest uses seed rule {:?}, this build implements {DERIVATION_RULE:?}",
                self.derivation_rule
            )));
        }
        if self.seed != self.config.seed {
            return Err(Error::param("manifest seed disagrees with its config"));
        }
        Ok(())
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut f = std::fs::File::create(path)?;
        serde_json::to_writer_pretty(&mut f, self)?;
        writeln!(f)?;
        Ok(())
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Ok(serde_json::from_reader(std::fs::File::open(path)?)?)
    }
}
