//! Additive-error approximations for (connected) r-domination and p-center
//! on unweighted graphs.
//!
//! Two families of solvers are provided. The layering-partition solvers lose
//! at most Δ (connected: 2Δ) in coverage, where Δ is the largest cluster
//! diameter. The tree-decomposition solvers lose at most the breadth ρ, or
//! 3ρ + λ / 3λ for connected sets. Exhaustive [`oracles`] check both.

mod error;

pub mod bfs;
pub mod connector;
pub mod domination;
pub mod generate;
pub mod graph;
pub mod layering;
pub mod lp_domination;
pub mod oracles;
pub mod pcenter;
pub mod radius;
pub mod sort;
pub mod td;
pub mod td_domination;
pub mod tree;
pub mod union_find;

pub use domination::DominationResult;
pub use error::{Error, Result};
pub use graph::Graph;
pub use layering::LayeringPartition;
pub use pcenter::PCenterResult;
pub use radius::RadiusFunction;
pub use td::TreeDecomposition;
pub use tree::{RootedTree, Subtree};
pub use union_find::UnionFind;
