//! Partition enumeration by neighbor expansion over a node-to-neighbors
//! mapping.
//!
//! The search seeds a partition from a start node and repeatedly adds the
//! not-yet-affiliated neighbors of every frontier node until an iteration
//! finds no new node, then restarts from a fresh node until the node list
//! is exhausted. Two Boolean arrays carry the whole state: `removed`
//! marks nodes consumed from the network list (set once a node's
//! neighbors have been expanded) and `in_partition` marks affiliation to
//! the current partition (set when a node is first discovered). Nodes
//! that are discovered but not yet expanded are exactly the frontier,
//! processed first-in-first-out.

use std::collections::VecDeque;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::{AdjacencyMap, Network, Partition};
use crate::{MemoryEstimate, StartRule};

/// Result of one node mapping run, with instrumented storage counters:
/// `bool_slots` counts the two flag arrays (`2N`), `int_slots` the
/// neighbor-table entries consumed as input (`2M`).
#[derive(Debug, Clone)]
pub struct NodeMappingRun {
    pub partitions: Vec<Partition>,
    pub bool_slots: u64,
    pub int_slots: u64,
}

/// Enumerates connected partitions; each partition carries its node set
/// in discovery order and an empty segment list (see [`assign_segments`]).
pub fn find_partitions(adj: &AdjacencyMap, rule: StartRule) -> Result<Vec<Partition>, Error> {
    run(adj, rule).map(|r| r.partitions)
}

/// As [`find_partitions`], also reporting storage counters.
pub fn run(adj: &AdjacencyMap, rule: StartRule) -> Result<NodeMappingRun, Error> {
    let n = adj.node_count();
    if n == 0 {
        return Err(Error::EmptyAdjacency);
    }
    let mut removed = vec![false; n];
    let mut in_partition = vec![false; n];
    let mut frontier: VecDeque<usize> = VecDeque::new();
    let mut partitions = Vec::new();
    let mut rng = match rule {
        StartRule::LowestIndex => None,
        StartRule::SeededRandom(seed) => Some(rand::SeedableRng::seed_from_u64(seed)),
    };

    while let Some(start) = next_start(&removed, rng.as_mut()) {
        let mut nodes = Vec::new();
        in_partition[start] = true;
        nodes.push(start);
        frontier.push_back(start);
        while let Some(v) = frontier.pop_front() {
            for &w in adj.neighbors(v) {
                if !in_partition[w] {
                    in_partition[w] = true;
                    nodes.push(w);
                    frontier.push_back(w);
                }
            }
            removed[v] = true;
        }
        partitions.push(Partition {
            nodes,
            segment_indices: Vec::new(),
        });
    }

    Ok(NodeMappingRun {
        partitions,
        bool_slots: 2 * n as u64,
        int_slots: adj.entry_count() as u64,
    })
}

fn next_start(removed: &[bool], rng: Option<&mut ChaCha8Rng>) -> Option<usize> {
    if let Some(rng) = rng {
        for _ in 0..100 {
            let candidate = rng.gen_range(0..removed.len());
            if !removed[candidate] {
                return Some(candidate);
            }
        }
    }
    removed.iter().position(|&r| !r)
}

/// Attaches every segment to the unique partition containing both its
/// endpoints. This is the extra pass node mapping needs to report
/// segment membership; segment mapping gets it for free.
pub fn assign_segments(net: &Network, parts: Vec<Partition>) -> Result<Vec<Partition>, Error> {
    let n = net.node_count();
    let mut owner = vec![usize::MAX; n];
    for (pi, part) in parts.iter().enumerate() {
        for &v in &part.nodes {
            if v >= n {
                return Err(Error::InvariantViolation(format!(
                    "partition node {v} outside 0..{n}"
                )));
            }
            owner[v] = pi;
        }
    }
    let mut parts = parts;
    for (si, seg) in net.segments().iter().enumerate() {
        let (pa, pb) = (owner[seg.a()], owner[seg.b()]);
        if pa == usize::MAX || pa != pb {
            return Err(Error::InvariantViolation(format!(
                "segment {si} endpoints fall in different partitions"
            )));
        }
        parts[pa].segment_indices.push(si);
    }
    Ok(parts)
}

/// Storage estimate: `2N` Boolean slots for the two flag arrays plus
/// `N·c_av = 2M` integer slots for the neighbor table.
pub fn memory_estimate(n: u64, m: u64) -> Result<MemoryEstimate, Error> {
    if n < 2 || m < 1 {
        return Err(Error::EstimateRange { n, m });
    }
    Ok(MemoryEstimate {
        bool_slots: 2 * n,
        int_slots: 2 * m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_adjacency, canonical_family, NodeId, Segment};
    use crate::oracle::union_find_partitions;

    fn net(pairs: &[(NodeId, NodeId)]) -> Network {
        Network::from_segments(
            pairs
                .iter()
                .map(|&(a, b)| Segment::new(a, b).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn triangle_is_one_partition() {
        let adj = build_adjacency(&net(&[(0, 1), (1, 2), (0, 2)])).unwrap();
        let parts = find_partitions(&adj, StartRule::LowestIndex).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].nodes, vec![0, 1, 2]);
        assert!(parts[0].segment_indices.is_empty());
    }

    #[test]
    fn two_components_found_in_order() {
        let adj = build_adjacency(&net(&[(0, 1), (2, 3)])).unwrap();
        let parts = find_partitions(&adj, StartRule::LowestIndex).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].nodes, vec![0, 1]);
        assert_eq!(parts[1].nodes, vec![2, 3]);
    }

    #[test]
    fn discovery_order_is_breadth_first() {
        // star with center 1: neighbors appended in segment order
        let adj = build_adjacency(&net(&[(1, 0), (1, 2), (1, 3), (3, 4)])).unwrap();
        let parts = find_partitions(&adj, StartRule::LowestIndex).unwrap();
        // start node 0, then its neighbor 1, then 1's remaining neighbors
        assert_eq!(parts[0].nodes, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn empty_adjacency_is_rejected() {
        let adj = AdjacencyMap::from_raw(vec![0], Vec::new());
        match run(&adj, StartRule::LowestIndex).unwrap_err() {
            Error::EmptyAdjacency => {}
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn matches_union_find_on_multi_component_network() {
        let network = crate::generator::generate_network(&crate::generator::GeneratorConfig {
            nodes: 200,
            c_target: num_rational::Ratio::from_integer(4),
            partitions: 3,
            seed: 11,
            scatter_indices: false,
            allow_parallel: false,
        })
        .unwrap();
        let adj = build_adjacency(&network).unwrap();
        let parts = find_partitions(&adj, StartRule::LowestIndex).unwrap();
        let parts = assign_segments(&network, parts).unwrap();
        assert_eq!(parts.len(), 3);
        assert_eq!(
            canonical_family(&parts),
            canonical_family(&union_find_partitions(&network))
        );
    }

    #[test]
    fn deterministic_for_fixed_rule() {
        let network = crate::generator::generate_network(&crate::generator::GeneratorConfig {
            nodes: 60,
            c_target: num_rational::Ratio::from_integer(3),
            partitions: 2,
            seed: 5,
            scatter_indices: false,
            allow_parallel: false,
        })
        .unwrap();
        let adj = build_adjacency(&network).unwrap();
        for rule in [StartRule::LowestIndex, StartRule::SeededRandom(99)] {
            let first = find_partitions(&adj, rule).unwrap();
            let second = find_partitions(&adj, rule).unwrap();
            assert_eq!(first, second);
        }
    }

    #[test]
    fn seeded_random_rule_finds_the_same_family() {
        let adj = build_adjacency(&net(&[(0, 1), (2, 3), (3, 4)])).unwrap();
        let fixed = find_partitions(&adj, StartRule::LowestIndex).unwrap();
        let seeded = find_partitions(&adj, StartRule::SeededRandom(7)).unwrap();
        assert_eq!(canonical_family(&fixed), canonical_family(&seeded));
    }

    #[test]
    fn assign_segments_examples() {
        let triangle = net(&[(0, 1), (1, 2), (0, 2)]);
        let parts = vec![Partition {
            nodes: vec![0, 1, 2],
            segment_indices: Vec::new(),
        }];
        let parts = assign_segments(&triangle, parts).unwrap();
        assert_eq!(parts[0].segment_indices, vec![0, 1, 2]);

        let two = net(&[(0, 1), (2, 3)]);
        let parts = vec![
            Partition {
                nodes: vec![0, 1],
                segment_indices: Vec::new(),
            },
            Partition {
                nodes: vec![2, 3],
                segment_indices: Vec::new(),
            },
        ];
        let parts = assign_segments(&two, parts).unwrap();
        assert_eq!(parts[0].segment_indices, vec![0]);
        assert_eq!(parts[1].segment_indices, vec![1]);
    }

    #[test]
    fn assign_segments_rejects_split_endpoints() {
        let two = net(&[(0, 1), (1, 2)]);
        let bogus = vec![
            Partition {
                nodes: vec![0, 1],
                segment_indices: Vec::new(),
            },
            Partition {
                nodes: vec![2],
                segment_indices: Vec::new(),
            },
        ];
        assert!(matches!(
            assign_segments(&two, bogus),
            Err(Error::InvariantViolation(_))
        ));
    }

    #[test]
    fn memory_estimate_examples() {
        assert_eq!(
            memory_estimate(5, 5).unwrap(),
            MemoryEstimate {
                bool_slots: 10,
                int_slots: 10
            }
        );
        assert_eq!(
            memory_estimate(4, 6).unwrap(),
            MemoryEstimate {
                bool_slots: 8,
                int_slots: 12
            }
        );
        assert!(matches!(
            memory_estimate(1, 1),
            Err(Error::EstimateRange { n: 1, m: 1 })
        ));
    }

    #[test]
    fn counters_match_estimate_at_runtime() {
        let network = net(&[(0, 1), (1, 2), (0, 2), (2, 3)]);
        let adj = build_adjacency(&network).unwrap();
        let outcome = run(&adj, StartRule::LowestIndex).unwrap();
        let estimate = memory_estimate(
            network.node_count() as u64,
            network.segment_count() as u64,
        )
        .unwrap();
        assert_eq!(outcome.bool_slots, estimate.bool_slots);
        assert_eq!(outcome.int_slots, estimate.int_slots);
    }
}
