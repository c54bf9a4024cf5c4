//! Graph-constrained group testing for locating failed links in a network.
//!
//! The crate builds collections of connected-subgraph tests over a graph's
//! edges, checks whether a collection is `d`-disjunct, decodes failed edges
//! from test outcomes, and provides Monte Carlo and exact tooling for the
//! random-sparsification results the construction relies on.
//!
//! * [`graph`]: graphs, generators, sparsification, cuts and expansion.
//! * [`testgen`]: connected-subgraph, unconstrained random and random-walk
//!   test constructions.
//! * [`group_testing`]: outcomes, the naive decoder and disjunctness checks.
//! * [`theory`]: exploration process, giant-component, gambler's ruin and
//!   connectivity experiments.
//! * [`harness`]: experiment drivers, CSV records, manifests and plots.

pub mod bitset;
pub mod error;
pub mod graph;
pub mod harness;
pub mod group_testing;
pub mod seed;
pub mod testgen;
pub mod theory;

pub use bitset::BitSet;
pub use error::{Error, Result};
