//! Strategy generators for graph families and for general connected graphs.

mod baseline;
mod best;
mod families;
mod general;
mod path;
mod routing;

pub use baseline::dfs_baseline;
pub use best::{best_strategy, detect_family, BestStrategy, DetectedFamily};
pub use families::{
    binary_tree_strategy, clique_ring_strategy, complete_bipartite_strategy, octopus_strategy, OctopusMode,
};
pub use general::{
    ac_upper_general, long_path_strategy, max_degree_strategy, self_power_root, GeneralBranch, GeneralStrategy,
    LONG_PATH_EFFORT,
};
pub use path::{hamiltonian_strategy, path_strategy};
pub use routing::{route_in_region, route_on_tree, RoutingError, RoutingTask};

use thiserror::Error;

use crate::dynamics::DynamicsError;
use crate::graph::GraphError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Routing(#[from] RoutingError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("generated strategy failed verification: {0}")]
    NotAWitness(String),
}
