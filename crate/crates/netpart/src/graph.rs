//! Network data model: segments over integer node indices, edge-list I/O,
//! index compaction, and adjacency construction.
//!
//! A network is an ordered list of segments; nodes exist only as segment
//! endpoints, so singular (unconnected) nodes are unrepresentable. Node
//! indices in input files may be sparse and in any order; the algorithms
//! operate on dense indices `0..N-1` produced by [`compact_indices`].

use std::collections::HashMap;
use std::io::{self, BufRead, Write};

use num_rational::Ratio;

use crate::error::{Error, ParseErrorKind};

/// A node index. Non-negative, possibly sparse in raw input.
pub type NodeId = usize;

/// An undirected connection with exactly two distinct end nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    a: NodeId,
    b: NodeId,
}

impl Segment {
    /// Builds a segment, rejecting self-loops.
    pub fn new(a: NodeId, b: NodeId) -> Result<Self, Error> {
        if a == b {
            return Err(Error::Parse {
                line: 0,
                kind: ParseErrorKind::SelfLoop { node: a },
            });
        }
        Ok(Self { a, b })
    }

    pub(crate) fn new_unchecked(a: NodeId, b: NodeId) -> Self {
        debug_assert_ne!(a, b);
        Self { a, b }
    }

    pub fn a(&self) -> NodeId {
        self.a
    }

    pub fn b(&self) -> NodeId {
        self.b
    }

    pub fn endpoints(&self) -> (NodeId, NodeId) {
        (self.a, self.b)
    }
}

/// An ordered segment list plus the derived node count.
///
/// `N` is the number of distinct endpoint indices, `M` the number of
/// segments. Parallel (duplicate) segments are legal and counted
/// individually; self-loops are rejected at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    segments: Vec<Segment>,
    node_count: usize,
    max_node: NodeId,
}

impl Network {
    /// Builds a network from a segment list. Fails on an empty list.
    pub fn from_segments(segments: Vec<Segment>) -> Result<Self, Error> {
        if segments.is_empty() {
            return Err(Error::EmptyNetwork);
        }
        let max_node = segments
            .iter()
            .map(|s| s.a.max(s.b))
            .max()
            .expect("non-empty");
        let node_count = count_distinct_endpoints(&segments, max_node);
        Ok(Self {
            segments,
            node_count,
            max_node,
        })
    }

    /// Internal constructor for callers that already know the counts.
    pub(crate) fn from_parts_unchecked(
        segments: Vec<Segment>,
        node_count: usize,
        max_node: NodeId,
    ) -> Self {
        Self {
            segments,
            node_count,
            max_node,
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// N: number of distinct connected nodes.
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// M: number of segments, parallel segments counted separately.
    pub fn segment_count(&self) -> usize {
        self.segments.len()
    }

    pub fn max_node(&self) -> NodeId {
        self.max_node
    }

    /// True when node indices are exactly `0..N-1`.
    pub fn is_dense(&self) -> bool {
        self.max_node + 1 == self.node_count
    }

    /// Average connectivity index `c_av = 2M/N`, exact.
    pub fn avg_connectivity(&self) -> Ratio<u64> {
        Ratio::new(2 * self.segments.len() as u64, self.node_count as u64)
    }

    /// Per-node connectivity index (segment count at each node).
    /// Requires dense indices.
    pub fn degrees(&self) -> Result<Vec<usize>, Error> {
        if !self.is_dense() {
            return Err(Error::NotDense);
        }
        let mut deg = vec![0usize; self.node_count];
        for seg in &self.segments {
            deg[seg.a] += 1;
            deg[seg.b] += 1;
        }
        Ok(deg)
    }
}

fn count_distinct_endpoints(segments: &[Segment], max_node: NodeId) -> usize {
    // Bitmap when the index space is modest, hash set for pathologically
    // sparse indexing.
    if (max_node as u128) < (segments.len() as u128 * 64).max(1 << 20) {
        let mut seen = vec![false; max_node + 1];
        let mut count = 0usize;
        for seg in segments {
            for v in [seg.a, seg.b] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                }
            }
        }
        count
    } else {
        let mut seen = std::collections::HashSet::new();
        for seg in segments {
            seen.insert(seg.a);
            seen.insert(seg.b);
        }
        seen.len()
    }
}

/// Node-to-neighbors table over dense indices, stored flat.
///
/// Neighbor entries appear in segment order and parallel segments
/// contribute duplicate entries, so each node's entry count equals its
/// connectivity index and the total entry count equals `2M`.
#[derive(Debug, Clone)]
pub struct AdjacencyMap {
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl AdjacencyMap {
    #[cfg(test)]
    pub(crate) fn from_raw(offsets: Vec<usize>, targets: Vec<NodeId>) -> Self {
        Self { offsets, targets }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Total neighbor entries; always `2M`.
    pub fn entry_count(&self) -> usize {
        self.targets.len()
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    /// Connectivity index `c` of a node.
    pub fn connectivity_index(&self, v: NodeId) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }
}

/// Builds the node-to-neighbors mapping from the segment list: each
/// endpoint is appended to the other endpoint's neighbor list.
pub fn build_adjacency(net: &Network) -> Result<AdjacencyMap, Error> {
    if !net.is_dense() {
        return Err(Error::NotDense);
    }
    let n = net.node_count();
    let mut offsets = vec![0usize; n + 1];
    for seg in net.segments() {
        offsets[seg.a + 1] += 1;
        offsets[seg.b + 1] += 1;
    }
    for i in 0..n {
        offsets[i + 1] += offsets[i];
    }
    let mut cursor = offsets.clone();
    let mut targets = vec![0 as NodeId; net.segment_count() * 2];
    for seg in net.segments() {
        targets[cursor[seg.a]] = seg.b;
        cursor[seg.a] += 1;
        targets[cursor[seg.b]] = seg.a;
        cursor[seg.b] += 1;
    }
    Ok(AdjacencyMap { offsets, targets })
}

/// Bijection between original (possibly sparse) and dense node indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexMapping {
    original_of: Vec<NodeId>,
    compact_of: HashMap<NodeId, usize>,
}

impl IndexMapping {
    pub fn len(&self) -> usize {
        self.original_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.original_of.is_empty()
    }

    /// Original index of a compact index.
    pub fn original(&self, compact: usize) -> Option<NodeId> {
        self.original_of.get(compact).copied()
    }

    /// Compact index of an original index.
    pub fn compact(&self, original: NodeId) -> Option<usize> {
        self.compact_of.get(&original).copied()
    }

    pub fn original_of(&self) -> &[NodeId] {
        &self.original_of
    }

    /// Writes the mapping as `compact original` lines.
    pub fn write_to<W: Write>(&self, mut w: W) -> io::Result<()> {
        for (compact, original) in self.original_of.iter().enumerate() {
            writeln!(w, "{compact} {original}")?;
        }
        Ok(())
    }
}

/// Re-indexes the nodes orderly to remove missing indices. Compact
/// indices are assigned by order of first appearance in the segment
/// sequence; segment order is preserved.
pub fn compact_indices(net: &Network) -> (Network, IndexMapping) {
    let mut original_of = Vec::with_capacity(net.node_count());
    let mut compact_of = HashMap::with_capacity(net.node_count());
    let mut segments = Vec::with_capacity(net.segment_count());
    for seg in net.segments() {
        let a = *compact_of.entry(seg.a).or_insert_with(|| {
            original_of.push(seg.a);
            original_of.len() - 1
        });
        let b = *compact_of.entry(seg.b).or_insert_with(|| {
            original_of.push(seg.b);
            original_of.len() - 1
        });
        segments.push(Segment::new_unchecked(a, b));
    }
    let n = original_of.len();
    debug_assert_eq!(n, net.node_count());
    let compact = Network::from_parts_unchecked(segments, n, n - 1);
    (
        compact,
        IndexMapping {
            original_of,
            compact_of,
        },
    )
}

/// Re-indexes a compacted network back to its original indices.
pub fn restore_indices(net: &Network, map: &IndexMapping) -> Result<Network, Error> {
    let mut segments = Vec::with_capacity(net.segment_count());
    let mut max_node = 0;
    for seg in net.segments() {
        let a = map.original(seg.a).ok_or(Error::MappingDomain(seg.a))?;
        let b = map.original(seg.b).ok_or(Error::MappingDomain(seg.b))?;
        max_node = max_node.max(a).max(b);
        segments.push(Segment::new_unchecked(a, b));
    }
    Ok(Network::from_parts_unchecked(
        segments,
        net.node_count(),
        max_node,
    ))
}

/// One totally connected partition: its nodes (in discovery order) and
/// the positions of its segments in the owning network's segment list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub nodes: Vec<NodeId>,
    pub segment_indices: Vec<usize>,
}

impl Partition {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn segment_count(&self) -> usize {
        self.segment_indices.len()
    }

    /// Copy with nodes and segment indices sorted ascending.
    pub fn canonical(&self) -> Partition {
        let mut nodes = self.nodes.clone();
        nodes.sort_unstable();
        let mut segment_indices = self.segment_indices.clone();
        segment_indices.sort_unstable();
        Partition {
            nodes,
            segment_indices,
        }
    }
}

/// Canonical form of a partition list for order-insensitive comparison:
/// every partition sorted internally, partitions ordered by minimum node.
pub fn canonical_family(parts: &[Partition]) -> Vec<Partition> {
    let mut family: Vec<Partition> = parts.iter().map(Partition::canonical).collect();
    family.sort_by_key(|p| p.nodes.first().copied());
    family
}

/// Parses the edge-list format: one `u v` segment per line, `#` comments
/// and blank lines ignored.
pub fn parse_network<R: BufRead>(reader: R) -> Result<Network, Error> {
    parse_network_with_line_numbers(reader).map(|(net, _)| net)
}

/// As [`parse_network`], also returning each segment's 1-based source
/// line number (used by partition manifests).
pub fn parse_network_with_line_numbers<R: BufRead>(
    reader: R,
) -> Result<(Network, Vec<usize>), Error> {
    let mut segments = Vec::new();
    let mut line_numbers = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: lineno,
                kind: ParseErrorKind::TokenCount {
                    found: tokens.len(),
                },
            });
        }
        let mut nodes = [0 as NodeId; 2];
        for (slot, token) in nodes.iter_mut().zip(&tokens) {
            *slot = token.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                kind: ParseErrorKind::InvalidInteger {
                    token: (*token).to_string(),
                },
            })? as NodeId;
        }
        if nodes[0] == nodes[1] {
            return Err(Error::Parse {
                line: lineno,
                kind: ParseErrorKind::SelfLoop { node: nodes[0] },
            });
        }
        segments.push(Segment::new_unchecked(nodes[0], nodes[1]));
        line_numbers.push(lineno);
    }
    let net = Network::from_segments(segments)?;
    Ok((net, line_numbers))
}

/// Convenience wrapper over [`parse_network`] for in-memory text.
pub fn parse_network_str(text: &str) -> Result<Network, Error> {
    parse_network(text.as_bytes())
}

/// Writes the edge-list format: one `u v` line per segment in stored
/// order, single space separator, trailing newline.
pub fn write_network<W: Write>(net: &Network, mut w: W) -> io::Result<()> {
    for seg in net.segments() {
        writeln!(w, "{} {}", seg.a, seg.b)?;
    }
    Ok(())
}
