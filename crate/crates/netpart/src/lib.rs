//! Connectivity testing and partition enumeration for unstructured
//! segment/node networks.
//!
//! A network is a list of segments joined at integer-indexed nodes. This
//! crate answers whether such a network is totally connected, enumerates
//! its totally connected partitions with two different algorithms (node
//! mapping over a node-to-neighbors table, segment mapping by repeated
//! sweeps of the segment list), generates random networks under
//! constraints, and benchmarks both algorithms to verify that their time
//! and memory scale linearly with network size.
//!
//! Entry points:
//! - [`graph::parse_network`] / [`graph::write_network`] for edge-list I/O
//! - [`node_mapping::find_partitions`] and
//!   [`segment_mapping::find_partitions`] for partition enumeration
//! - [`oracle`] for slow, independent cross-checks
//! - [`generator::generate_network`] for constrained random networks
//! - [`bench::run_sweep`] for scaling measurements

pub mod bench;
pub mod error;
pub mod generator;
pub mod graph;
pub mod node_mapping;
pub mod oracle;
pub mod segment_mapping;
pub mod stats;

pub use error::Error;
pub use graph::{
    build_adjacency, canonical_family, compact_indices, parse_network, parse_network_str,
    restore_indices, write_network, AdjacencyMap, IndexMapping, Network, NodeId, Partition,
    Segment,
};
pub use stats::{classify_partition, compute_stats, NetworkStats, NodeClass, PartitionClass};

/// How an algorithm picks the node (or segment) that seeds the next
/// partition search.
///
/// `LowestIndex` is the reproducible default: the first unconsumed entry
/// in index order. `SeededRandom` draws the seed from a deterministic
/// stream instead, for runs that want random start points without losing
/// reproducibility.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StartRule {
    LowestIndex,
    SeededRandom(u64),
}

/// Predicted working-storage slots for one algorithm run: Boolean flag
/// slots and integer (node index) slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MemoryEstimate {
    pub bool_slots: u64,
    pub int_slots: u64,
}
