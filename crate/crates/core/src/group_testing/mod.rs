//! Group-testing semantics over a [`TestCollection`]: outcome simulation,
//! the naive decoder, exact disjunctness checking and the singleton
//! lower-bound witness.

mod disjunct;
mod outcome;
mod singleton;

pub use disjunct::{
    check_disjunct, projected_work, verify_witness, DisjunctnessReport, Witness, ENUMERATION_BUDGET,
};
pub use outcome::{decode, run_tests, OutcomeVector};
pub use singleton::singleton_witness;

/// A set of failed edges.
pub type DefectiveSet = crate::graph::EdgeSet;
