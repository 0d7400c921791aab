//! Minimal-cost path planning on roadmaps where time spent consecutively in
//! a risk region is penalized super-linearly.
//!
//! The cost of a path traversed at unit speed is `∫ exp(alpha * l(t)) dt`,
//! where `l(t)` is the time since the path last touched safe space. The crate
//! provides:
//!
//! - worlds ([`world`]): labelled grids and polygon maps partitioning the
//!   plane into obstacle, safe and risk regions;
//! - roadmaps ([`roadmap`]): geometric graphs refined so every edge is
//!   zone-pure, with explicit Border vertices on the safe/risk boundary;
//! - the exact incremental planner ([`search`]): a Dijkstra generalization
//!   over `(vertex, entry-border)` channels that handles the lack of optimal
//!   substructure, with an optional A* heuristic;
//! - the precomputation planner ([`precompute`]): all-pairs shortest risk
//!   paths between border vertices folded into an augmented safe graph;
//! - baselines ([`baselines`]) and a brute-force oracle ([`oracle`]) for
//!   validation.

pub mod baselines;
pub mod cost;
pub mod error;
pub mod generators;
pub mod geom;
pub mod oracle;
pub mod plan;
pub mod precompute;
pub mod render;
pub mod roadmap;
pub mod scenario;
pub mod search;
pub mod world;

pub use error::{Error, Result};
