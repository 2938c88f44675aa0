//! Partition enumeration by repeated sweeps of the segment list.
//!
//! A partition search is seeded with both end nodes of one segment. Every
//! sweep walks the remaining segments in stored order and consumes any
//! segment with at least one end on the connected-node list, marking the
//! other end connected; a newly connected node takes effect immediately
//! for the segments after it in the same sweep. A segment whose ends are
//! both already connected closes a cycle and is consumed without adding a
//! node. The search ends when a sweep adds no new node (partition
//! complete) or the list runs out (network totally connected); fresh
//! seeds then repeat the search until the list is exhausted.
//!
//! Consumed segments are either dropped from the working list (`Direct`)
//! or marked in a Boolean segment array (`Lazy`); both yield the same
//! partitions. Node status lives in one Boolean array indexed by node,
//! reset between partitions only over the touched entries.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::{Network, Partition};
use crate::{MemoryEstimate, StartRule};

/// How consumed segments are removed from consideration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RemovalVariant {
    /// Physically drop consumed segments from the working list
    /// (stable-order in-place compaction every sweep).
    Direct,
    /// Keep the list intact and mark consumed segments in a Boolean
    /// array of length `M`.
    Lazy,
}

/// Result of one segment mapping run.
///
/// `bool_slots` counts the node-status array (`N`) plus, for the lazy
/// variant, the segment-removal array (`M`); `int_slots` counts the two
/// endpoint slots of each consumed segment (`2M`).
/// `sweeps_per_partition` records how many sweeps each partition search
/// took, seed consumption excluded.
#[derive(Debug, Clone)]
pub struct SegmentMappingRun {
    pub partitions: Vec<Partition>,
    pub bool_slots: u64,
    pub int_slots: u64,
    pub sweeps_per_partition: Vec<u64>,
}

/// Enumerates connected partitions; each carries its nodes in discovery
/// order and its segments in consumption order (seed first).
pub fn find_partitions(
    net: &Network,
    variant: RemovalVariant,
    rule: StartRule,
) -> Result<Vec<Partition>, Error> {
    run(net, variant, rule).map(|r| r.partitions)
}

/// As [`find_partitions`], also reporting storage counters and sweep
/// counts.
pub fn run(
    net: &Network,
    variant: RemovalVariant,
    rule: StartRule,
) -> Result<SegmentMappingRun, Error> {
    if net.segment_count() == 0 {
        return Err(Error::EmptyNetwork);
    }
    if !net.is_dense() {
        return Err(Error::NotDense);
    }
    let mut rng: Option<ChaCha8Rng> = match rule {
        StartRule::LowestIndex => None,
        StartRule::SeededRandom(seed) => Some(rand::SeedableRng::seed_from_u64(seed)),
    };
    match variant {
        RemovalVariant::Direct => run_direct(net, rng.as_mut()),
        RemovalVariant::Lazy => run_lazy(net, rng.as_mut()),
    }
}

fn run_direct(net: &Network, mut rng: Option<&mut ChaCha8Rng>) -> Result<SegmentMappingRun, Error> {
    let n = net.node_count();
    let m = net.segment_count();
    let segments = net.segments();
    let mut node_connected = vec![false; n];
    let mut working: Vec<usize> = (0..m).collect();
    let mut partitions = Vec::new();
    let mut sweeps_per_partition = Vec::new();

    while !working.is_empty() {
        let seed_pos = match rng.as_deref_mut() {
            None => 0,
            Some(rng) => rng.gen_range(0..working.len()),
        };
        let seed_idx = working.remove(seed_pos);
        let (a, b) = segments[seed_idx].endpoints();
        let mut nodes = vec![a, b];
        let mut consumed = vec![seed_idx];
        node_connected[a] = true;
        node_connected[b] = true;

        let mut sweeps = 0u64;
        while !working.is_empty() {
            sweeps += 1;
            let mut progressed = false;
            let mut write = 0;
            for read in 0..working.len() {
                let si = working[read];
                let (a, b) = segments[si].endpoints();
                let (ca, cb) = (node_connected[a], node_connected[b]);
                if ca || cb {
                    consumed.push(si);
                    if !ca {
                        node_connected[a] = true;
                        nodes.push(a);
                        progressed = true;
                    }
                    if !cb {
                        node_connected[b] = true;
                        nodes.push(b);
                        progressed = true;
                    }
                } else {
                    working[write] = si;
                    write += 1;
                }
            }
            working.truncate(write);
            if !progressed {
                break;
            }
        }

        for &v in &nodes {
            node_connected[v] = false;
        }
        partitions.push(Partition {
            nodes,
            segment_indices: consumed,
        });
        sweeps_per_partition.push(sweeps);
    }

    Ok(SegmentMappingRun {
        partitions,
        bool_slots: n as u64,
        int_slots: 2 * m as u64,
        sweeps_per_partition,
    })
}

fn run_lazy(net: &Network, mut rng: Option<&mut ChaCha8Rng>) -> Result<SegmentMappingRun, Error> {
    let n = net.node_count();
    let m = net.segment_count();
    let segments = net.segments();
    let mut node_connected = vec![false; n];
    let mut segment_removed = vec![false; m];
    let mut remaining = m;
    let mut partitions = Vec::new();
    let mut sweeps_per_partition = Vec::new();

    while remaining > 0 {
        let seed_idx = pick_lazy_seed(&segment_removed, rng.as_deref_mut());
        segment_removed[seed_idx] = true;
        remaining -= 1;
        let (a, b) = segments[seed_idx].endpoints();
        let mut nodes = vec![a, b];
        let mut consumed = vec![seed_idx];
        node_connected[a] = true;
        node_connected[b] = true;

        let mut sweeps = 0u64;
        while remaining > 0 {
            sweeps += 1;
            let mut progressed = false;
            for si in 0..m {
                if segment_removed[si] {
                    continue;
                }
                let (a, b) = segments[si].endpoints();
                let (ca, cb) = (node_connected[a], node_connected[b]);
                if ca || cb {
                    segment_removed[si] = true;
                    remaining -= 1;
                    consumed.push(si);
                    if !ca {
                        node_connected[a] = true;
                        nodes.push(a);
                        progressed = true;
                    }
                    if !cb {
                        node_connected[b] = true;
                        nodes.push(b);
                        progressed = true;
                    }
                }
            }
            if !progressed {
                break;
            }
        }

        for &v in &nodes {
            node_connected[v] = false;
        }
        partitions.push(Partition {
            nodes,
            segment_indices: consumed,
        });
        sweeps_per_partition.push(sweeps);
    }

    Ok(SegmentMappingRun {
        partitions,
        bool_slots: (n + m) as u64,
        int_slots: 2 * m as u64,
        sweeps_per_partition,
    })
}

fn pick_lazy_seed(segment_removed: &[bool], rng: Option<&mut ChaCha8Rng>) -> usize {
    if let Some(rng) = rng {
        for _ in 0..100 {
            let candidate = rng.gen_range(0..segment_removed.len());
            if !segment_removed[candidate] {
                return candidate;
            }
        }
    }
    segment_removed
        .iter()
        .position(|&r| !r)
        .expect("caller guarantees an unconsumed segment exists")
}

/// Storage estimate: `N` Boolean slots for the node-status array (plus
/// `M` more when removal is lazy) and `2M` integer slots for the segment
/// list. The lazy variant's Boolean demand `N + M` exceeds node mapping's
/// `2N` exactly when `M > N`, i.e. when `c_av > 2`.
pub fn memory_estimate(n: u64, m: u64, variant: RemovalVariant) -> Result<MemoryEstimate, Error> {
    if n < 2 || m < 1 {
        return Err(Error::EstimateRange { n, m });
    }
    let bool_slots = match variant {
        RemovalVariant::Direct => n,
        RemovalVariant::Lazy => n + m,
    };
    Ok(MemoryEstimate {
        bool_slots,
        int_slots: 2 * m,
    })
}
