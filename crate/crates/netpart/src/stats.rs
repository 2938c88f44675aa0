//! Node classification, partition topology classification, and network
//! statistics.
//!
//! Nodes are classed by their connectivity index `c`: boundary (`c=1`),
//! bridge (`c=2`), bifurcation (`c>2`). A connected partition is `open`
//! when every pair of nodes is joined by a unique non-retraced path (a
//! tree), `closed` when no segment is a bridge, and `semi-closed`
//! otherwise. Bridge here means a cut segment: one whose removal
//! disconnects the partition; parallel segments are never bridges.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::Ratio;

use crate::error::Error;
use crate::graph::{Network, NodeId, Partition};

/// Node class by connectivity index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeClass {
    Boundary,
    Bridge,
    Bifurcation,
}

impl NodeClass {
    /// Class for a connectivity index; `None` for the singular `c = 0`,
    /// which a network cannot represent.
    pub fn from_connectivity(c: usize) -> Option<NodeClass> {
        match c {
            0 => None,
            1 => Some(NodeClass::Boundary),
            2 => Some(NodeClass::Bridge),
            _ => Some(NodeClass::Bifurcation),
        }
    }
}

/// Topology class of one connected partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionClass {
    Open,
    Closed,
    SemiClosed,
}

impl fmt::Display for PartitionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PartitionClass::Open => "open",
            PartitionClass::Closed => "closed",
            PartitionClass::SemiClosed => "semi-closed",
        };
        f.write_str(s)
    }
}

/// Node counts per class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClassCounts {
    pub boundary: usize,
    pub bridge: usize,
    pub bifurcation: usize,
}

impl ClassCounts {
    pub fn total(&self) -> usize {
        self.boundary + self.bridge + self.bifurcation
    }
}

/// Descriptive statistics over a network and its partition cover.
#[derive(Debug, Clone)]
pub struct NetworkStats {
    pub node_count: usize,
    pub segment_count: usize,
    /// Exact average connectivity index `2M/N`.
    pub c_avg: Ratio<u64>,
    pub class_counts: ClassCounts,
    /// Node count per connectivity index.
    pub degree_histogram: BTreeMap<usize, usize>,
    pub partition_count: usize,
    pub partition_classes: Vec<PartitionClass>,
}

/// Computes statistics for a dense network and a full partition cover.
///
/// The cover is validated: node sets must be disjoint and exhaustive,
/// segment-index sets disjoint and exhaustive, and every segment must lie
/// inside its partition's node set.
pub fn compute_stats(net: &Network, parts: &[Partition]) -> Result<NetworkStats, Error> {
    if !net.is_dense() {
        return Err(Error::NotDense);
    }
    validate_cover(net, parts)?;

    let degrees = net.degrees()?;
    let mut class_counts = ClassCounts::default();
    let mut degree_histogram = BTreeMap::new();
    for &c in &degrees {
        match NodeClass::from_connectivity(c) {
            Some(NodeClass::Boundary) => class_counts.boundary += 1,
            Some(NodeClass::Bridge) => class_counts.bridge += 1,
            Some(NodeClass::Bifurcation) => class_counts.bifurcation += 1,
            None => {
                return Err(Error::InvariantViolation(
                    "singular node in network".to_string(),
                ))
            }
        }
        *degree_histogram.entry(c).or_insert(0) += 1;
    }

    let partition_classes = parts
        .iter()
        .map(|p| classify_partition(net, p))
        .collect::<Result<Vec<_>, _>>()?;

    Ok(NetworkStats {
        node_count: net.node_count(),
        segment_count: net.segment_count(),
        c_avg: net.avg_connectivity(),
        class_counts,
        degree_histogram,
        partition_count: parts.len(),
        partition_classes,
    })
}

fn validate_cover(net: &Network, parts: &[Partition]) -> Result<(), Error> {
    let n = net.node_count();
    let m = net.segment_count();
    let mut node_owner = vec![usize::MAX; n];
    for (pi, part) in parts.iter().enumerate() {
        if part.nodes.is_empty() {
            return Err(Error::InvariantViolation(format!(
                "partition {pi} has an empty node set"
            )));
        }
        for &v in &part.nodes {
            if v >= n {
                return Err(Error::InvariantViolation(format!(
                    "partition {pi} references node {v} outside 0..{n}"
                )));
            }
            if node_owner[v] != usize::MAX {
                return Err(Error::InvariantViolation(format!(
                    "node {v} appears in more than one partition"
                )));
            }
            node_owner[v] = pi;
        }
    }
    if node_owner.contains(&usize::MAX) {
        return Err(Error::InvariantViolation(
            "partition node sets do not cover all nodes".to_string(),
        ));
    }
    let mut seg_seen = vec![false; m];
    for (pi, part) in parts.iter().enumerate() {
        for &si in &part.segment_indices {
            if si >= m {
                return Err(Error::InvariantViolation(format!(
                    "partition {pi} references segment index {si} outside 0..{m}"
                )));
            }
            if seg_seen[si] {
                return Err(Error::InvariantViolation(format!(
                    "segment {si} appears in more than one partition"
                )));
            }
            seg_seen[si] = true;
            let (a, b) = net.segments()[si].endpoints();
            if node_owner[a] != pi || node_owner[b] != pi {
                return Err(Error::InvariantViolation(format!(
                    "segment {si} assigned to partition {pi} but its endpoints are not"
                )));
            }
        }
    }
    if seg_seen.contains(&false) {
        return Err(Error::InvariantViolation(
            "partition segment sets do not cover all segments".to_string(),
        ));
    }
    Ok(())
}

/// Classifies one connected partition as open, closed, or semi-closed.
pub fn classify_partition(net: &Network, p: &Partition) -> Result<PartitionClass, Error> {
    let local = LocalSubgraph::build(net, p)?;
    if !local.is_connected() {
        return Err(Error::DisconnectedPartition);
    }
    let np = p.node_count();
    let mp = p.segment_count();
    if mp == np.saturating_sub(1) {
        return Ok(PartitionClass::Open);
    }
    if local.bridge_edges().is_empty() {
        Ok(PartitionClass::Closed)
    } else {
        Ok(PartitionClass::SemiClosed)
    }
}

/// Segment indices within `p` whose removal disconnects the partition,
/// sorted ascending. Parallel segments are never reported.
pub fn bridge_segments(net: &Network, p: &Partition) -> Result<Vec<usize>, Error> {
    let local = LocalSubgraph::build(net, p)?;
    if !local.is_connected() {
        return Err(Error::DisconnectedPartition);
    }
    let mut out: Vec<usize> = local
        .bridge_edges()
        .into_iter()
        .map(|e| p.segment_indices[e])
        .collect();
    out.sort_unstable();
    Ok(out)
}

/// Partition subgraph re-indexed to `0..np`, with per-edge identity so
/// parallel segments stay distinct.
struct LocalSubgraph {
    // (neighbor, edge id) pairs per local node
    adj: Vec<Vec<(usize, usize)>>,
}

impl LocalSubgraph {
    fn build(net: &Network, p: &Partition) -> Result<Self, Error> {
        let mut local_of: HashMap<NodeId, usize> = HashMap::with_capacity(p.nodes.len());
        for (i, &v) in p.nodes.iter().enumerate() {
            if local_of.insert(v, i).is_some() {
                return Err(Error::InvariantViolation(format!(
                    "duplicate node {v} in partition"
                )));
            }
        }
        let mut adj = vec![Vec::new(); p.nodes.len()];
        for (ei, &si) in p.segment_indices.iter().enumerate() {
            let seg = net
                .segments()
                .get(si)
                .ok_or_else(|| Error::InvariantViolation(format!("segment index {si} out of range")))?;
            let a = *local_of.get(&seg.a()).ok_or_else(|| {
                Error::InvariantViolation(format!("segment {si} endpoint {} not in partition", seg.a()))
            })?;
            let b = *local_of.get(&seg.b()).ok_or_else(|| {
                Error::InvariantViolation(format!("segment {si} endpoint {} not in partition", seg.b()))
            })?;
            adj[a].push((b, ei));
            adj[b].push((a, ei));
        }
        Ok(Self { adj })
    }

    fn is_connected(&self) -> bool {
        let n = self.adj.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Iterative low-link search. Skips only the single edge instance used
    /// to enter a node, so a parallel edge acts as a back edge and its
    /// pair is never a bridge.
    fn bridge_edges(&self) -> Vec<usize> {
        const NO_EDGE: usize = usize::MAX;
        let n = self.adj.len();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![usize::MAX; n];
        let mut bridges = Vec::new();
        let mut time = 0usize;
        // frames: (node, entry edge, next neighbor position)
        let mut stack: Vec<(usize, usize, usize)> = Vec::new();

        for root in 0..n {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = time;
            low[root] = time;
            time += 1;
            stack.push((root, NO_EDGE, 0));
            while let Some(&mut (v, entry_edge, ref mut pos)) = stack.last_mut() {
                if *pos < self.adj[v].len() {
                    let (w, e) = self.adj[v][*pos];
                    *pos += 1;
                    if e == entry_edge {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        disc[w] = time;
                        low[w] = time;
                        time += 1;
                        stack.push((w, e, 0));
                    } else {
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (u, _, _)) = stack.last_mut() {
                        low[u] = low[u].min(low[v]);
                        if low[v] > disc[u] {
                            bridges.push(entry_edge);
                        }
                    }
                }
            }
        }
        bridges
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Segment;

    fn net(pairs: &[(NodeId, NodeId)]) -> Network {
        Network::from_segments(
            pairs
                .iter()
                .map(|&(a, b)| Segment::new(a, b).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn whole_partition(n: &Network) -> Partition {
        Partition {
            nodes: (0..n.node_count()).collect(),
            segment_indices: (0..n.segment_count()).collect(),
        }
    }

    /// Independent bridge oracle: remove each segment in turn and recheck
    /// connectivity by union-find over the remaining ones.
    fn brute_force_bridges(n: &Network, p: &Partition) -> Vec<usize> {
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut out = Vec::new();
        for &removed in &p.segment_indices {
            let mut parent: Vec<usize> = (0..n.node_count()).collect();
            for &si in &p.segment_indices {
                if si == removed {
                    continue;
                }
                let (a, b) = n.segments()[si].endpoints();
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
            let root = find(&mut parent, p.nodes[0]);
            if p.nodes.iter().any(|&v| find(&mut parent, v) != root) {
                out.push(removed);
            }
        }
        out
    }

    #[test]
    fn path_is_open() {
        let n = net(&[(0, 1), (1, 2)]);
        assert_eq!(
            classify_partition(&n, &whole_partition(&n)).unwrap(),
            PartitionClass::Open
        );
    }

    #[test]
    fn triangle_is_closed() {
        let n = net(&[(0, 1), (1, 2), (0, 2)]);
        assert_eq!(
            classify_partition(&n, &whole_partition(&n)).unwrap(),
            PartitionClass::Closed
        );
    }

    #[test]
    fn triangle_with_pendant_is_semi_closed() {
        let n = net(&[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let p = whole_partition(&n);
        // oracle: the pendant segment is the unique bridge
        assert_eq!(brute_force_bridges(&n, &p), vec![3]);
        assert_eq!(bridge_segments(&n, &p).unwrap(), vec![3]);
        assert_eq!(
            classify_partition(&n, &p).unwrap(),
            PartitionClass::SemiClosed
        );
    }

    #[test]
    fn parallel_segments_are_never_bridges() {
        // two nodes joined twice: no bridge, hence closed
        let n = net(&[(0, 1), (0, 1)]);
        let p = whole_partition(&n);
        assert_eq!(brute_force_bridges(&n, &p), Vec::<usize>::new());
        assert_eq!(bridge_segments(&n, &p).unwrap(), Vec::<usize>::new());
        assert_eq!(classify_partition(&n, &p).unwrap(), PartitionClass::Closed);
    }

    #[test]
    fn disconnected_partition_is_rejected() {
        let n = net(&[(0, 1), (2, 3)]);
        match classify_partition(&n, &whole_partition(&n)).unwrap_err() {
            Error::DisconnectedPartition => {}
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn stats_of_triangle() {
        let n = net(&[(0, 1), (1, 2), (0, 2)]);
        let stats = compute_stats(&n, &[whole_partition(&n)]).unwrap();
        assert_eq!(stats.node_count, 3);
        assert_eq!(stats.segment_count, 3);
        assert_eq!(stats.c_avg, Ratio::from_integer(2));
        assert_eq!(
            stats.class_counts,
            ClassCounts {
                boundary: 0,
                bridge: 3,
                bifurcation: 0
            }
        );
        assert_eq!(stats.partition_classes, vec![PartitionClass::Closed]);
    }

    #[test]
    fn stats_of_path() {
        let n = net(&[(0, 1), (1, 2)]);
        let stats = compute_stats(&n, &[whole_partition(&n)]).unwrap();
        assert_eq!(stats.c_avg, Ratio::new(4, 3));
        assert_eq!(
            stats.class_counts,
            ClassCounts {
                boundary: 2,
                bridge: 1,
                bifurcation: 0
            }
        );
        assert_eq!(stats.class_counts.total(), stats.node_count);
    }

    #[test]
    fn stats_degree_histogram_of_triangle_with_pendant() {
        let n = net(&[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let stats = compute_stats(&n, &[whole_partition(&n)]).unwrap();
        let hist: Vec<(usize, usize)> = stats.degree_histogram.into_iter().collect();
        assert_eq!(hist, vec![(1, 1), (2, 2), (3, 1)]);
        assert_eq!(stats.partition_classes, vec![PartitionClass::SemiClosed]);
    }

    #[test]
    fn cover_validation_rejects_inconsistencies() {
        let n = net(&[(0, 1), (2, 3)]);
        // missing second partition
        let partial = vec![Partition {
            nodes: vec![0, 1],
            segment_indices: vec![0],
        }];
        assert!(matches!(
            compute_stats(&n, &partial),
            Err(Error::InvariantViolation(_))
        ));
        // segment attributed to the wrong partition
        let wrong = vec![
            Partition {
                nodes: vec![0, 1],
                segment_indices: vec![0, 1],
            },
            Partition {
                nodes: vec![2, 3],
                segment_indices: vec![],
            },
        ];
        assert!(matches!(
            compute_stats(&n, &wrong),
            Err(Error::InvariantViolation(_))
        ));
        // node claimed twice
        let overlapping = vec![
            Partition {
                nodes: vec![0, 1, 2],
                segment_indices: vec![0],
            },
            Partition {
                nodes: vec![2, 3],
                segment_indices: vec![1],
            },
        ];
        assert!(matches!(
            compute_stats(&n, &overlapping),
            Err(Error::InvariantViolation(_))
        ));
    }

    #[test]
    fn node_class_from_connectivity() {
        assert_eq!(NodeClass::from_connectivity(0), None);
        assert_eq!(NodeClass::from_connectivity(1), Some(NodeClass::Boundary));
        assert_eq!(NodeClass::from_connectivity(2), Some(NodeClass::Bridge));
        assert_eq!(
            NodeClass::from_connectivity(7),
            Some(NodeClass::Bifurcation)
        );
    }
}
