//! Empirical checks of the probabilistic results behind subgraph tests:
//! the edge exploration process, the giant-component bound for edge
//! expanders, the asymmetric gambler's ruin, and the connectivity
//! threshold for `G(p)`.
//!
//! The exploration process starts from an edge assumed to survive and
//! probes unvisited boundary edges one at a time. `|S_t|` counts the start
//! edge, so after `t` probes `|S_t| - 1 + |B_t| = t`.

mod connectivity;
mod estimate;
mod explore;
mod giant;
mod ruin;

pub use connectivity::{connectivity_rate, connectivity_threshold};
pub use estimate::Estimate;
pub use explore::{
    exact_outcome_distribution, explore, explore_component, tree_cap, ExplorationStep, ExplorationTrace, Explorer,
    Outcome, Rational, Termination,
};
pub use giant::{
    epsilon, escape_probability, exploration_bound_check, giant_component_bound, giant_component_rate, walk_escapes,
    BoundCheck, GiantReport,
};
pub use ruin::{gamblers_ruin, ruin_oracle, RuinParams, ORACLE_RESIDUAL, SYMMETRIC_BAND};
