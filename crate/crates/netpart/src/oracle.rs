//! Independent correctness oracles: single-origin direct inspection, the
//! didactic all-pairs triangular test, and a disjoint-set baseline.
//!
//! These exist to cross-check the node mapping and segment mapping
//! algorithms, so they deliberately use different machinery: reachability
//! here is depth-first where node mapping is breadth-first, and the
//! disjoint-set baseline shares no traversal code at all. None of this is
//! performance-tuned and none of it belongs inside a benchmark timing
//! loop.

use crate::error::Error;
use crate::graph::{AdjacencyMap, Network, NodeId, Partition};

/// Hard size guard for the quadratic all-pairs test.
pub const TRIANGULAR_NODE_LIMIT: usize = 64;

/// Connectivity status of one origin node against all other nodes.
#[derive(Debug, Clone)]
pub struct ReachabilityRow {
    origin: NodeId,
    reached: Vec<bool>,
}

impl ReachabilityRow {
    /// Depth-first reachability from `origin` over a dense adjacency map.
    pub fn compute(adj: &AdjacencyMap, origin: NodeId) -> Result<Self, Error> {
        let n = adj.node_count();
        if origin >= n {
            return Err(Error::OriginOutOfRange { origin, nodes: n });
        }
        let mut reached = vec![false; n];
        reached[origin] = true;
        let mut stack = vec![origin];
        while let Some(v) = stack.pop() {
            for &w in adj.neighbors(v) {
                if !reached[w] {
                    reached[w] = true;
                    stack.push(w);
                }
            }
        }
        Ok(Self { origin, reached })
    }

    pub fn origin(&self) -> NodeId {
        self.origin
    }

    pub fn reached(&self) -> &[bool] {
        &self.reached
    }

    pub fn all_reached(&self) -> bool {
        self.reached.iter().all(|&r| r)
    }
}

/// True iff every node is reachable from `origin`. By symmetry and
/// transitivity of connectivity this single row decides total
/// connectivity for the whole network.
pub fn direct_inspection_connected(adj: &AdjacencyMap, origin: NodeId) -> Result<bool, Error> {
    Ok(ReachabilityRow::compute(adj, origin)?.all_reached())
}

/// All-pairs test over the upper triangle: node `n` must reach every node
/// `m > n`. Equivalent to [`direct_inspection_connected`] but quadratic,
/// so it refuses to run above [`TRIANGULAR_NODE_LIMIT`] nodes.
pub fn triangular_pair_connected(adj: &AdjacencyMap) -> Result<bool, Error> {
    let n = adj.node_count();
    if n > TRIANGULAR_NODE_LIMIT {
        return Err(Error::TriangularBound {
            nodes: n,
            limit: TRIANGULAR_NODE_LIMIT,
        });
    }
    for origin in 0..n.saturating_sub(1) {
        let row = ReachabilityRow::compute(adj, origin)?;
        if row.reached()[origin + 1..].iter().any(|&r| !r) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Partition family by disjoint-set union over the segment list, in
/// canonical order: nodes ascending within each partition, segment
/// indices ascending, partitions sorted by minimum node.
///
/// Requires dense indices.
pub fn union_find_partitions(net: &Network) -> Vec<Partition> {
    assert!(
        net.is_dense(),
        "union_find_partitions requires dense indices"
    );
    let n = net.node_count();
    let mut dsu = DisjointSet::new(n);
    for seg in net.segments() {
        dsu.union(seg.a(), seg.b());
    }

    // Group nodes and segments by root, keeping ascending order.
    let mut part_of_root = vec![usize::MAX; n];
    let mut parts: Vec<Partition> = Vec::new();
    for v in 0..n {
        let root = dsu.find(v);
        if part_of_root[root] == usize::MAX {
            part_of_root[root] = parts.len();
            parts.push(Partition {
                nodes: Vec::new(),
                segment_indices: Vec::new(),
            });
        }
        parts[part_of_root[root]].nodes.push(v);
    }
    for (si, seg) in net.segments().iter().enumerate() {
        let root = dsu.find(seg.a());
        parts[part_of_root[root]].segment_indices.push(si);
    }
    // Scanning nodes 0..n in order means partitions are already sorted by
    // minimum node and node lists are ascending; segment lists ascend
    // because the segment scan is in index order.
    parts
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
    }
}
