//! Experiment drivers: success-probability curves for the three test
//! constructions, CSV records, run manifests and SVG plots.
//!
//! Trial `i` at test count `tau` of experiment `id` uses the seed
//! `derive(master, [name_hash(id), tau, i])`, so records do not depend on
//! how trials are scheduled across threads.

mod experiment;
mod plot;
mod record;

pub use experiment::{
    experiment_disjunct_probability, experiment_random_failures, run_experiment, trial_seed, ExperimentConfig,
    ExperimentKind, Generator, Method,
};
pub use plot::emit_plot;
pub use record::{
    read_csv, read_csv_file, unix_now, write_csv, write_csv_file, ExperimentRecord, RunManifest, CSV_HEADER,
};
