//! Short-and-wide paths in weighted networks.
//!
//! The bottleneck distance between two nodes is the minimum, over connecting
//! paths, of the path's hop count multiplied by its widest (largest-weight)
//! edge. This crate computes it one-to-all and all-pairs, compares it with
//! geodesic, weighted and minimax-width distances, summarizes all-pairs distance
//! distributions, generates weighted null-model ensembles and evaluates
//! information-flow time bounds for gap-junction networks.

pub mod baseline;
pub mod bottleneck;
pub mod distance;
pub mod ensembles;
pub mod fixtures;
pub mod graph;
pub mod labels;
pub mod neuro;
pub mod oracle;
pub mod stats;

pub use bottleneck::{
    all_pairs_bottleneck, one_to_all_bottleneck, reconstruct_path, AllPairsResult,
    AllPairsStrategy, OneToAllResult, PathError,
};
pub use distance::{Distance, DistanceKind, DistanceMatrix};
pub use graph::{parse_edge_list, GraphError, NodeId, WeightMode, WeightedGraph};
pub use labels::{consolidate, dominates, Dominance, Label, LabelSet};
