//! Constrained random network generation.
//!
//! Builds networks with an exact node count, an exact partition count,
//! and an average connectivity index within rounding distance of a
//! rational target. Each partition gets a random spanning tree first
//! (connectivity by construction), then extra segments drawn uniformly
//! over unused node pairs until the per-partition segment budget
//! `M_p = round(N_p · c_target / 2)` is met. Output is a pure function of
//! the configuration: the same seed yields a bit-identical network.

use std::collections::HashSet;

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::{Network, NodeId, Segment};

/// Generation constraints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    /// Total node count; split as evenly as possible across partitions
    /// (sizes differ by at most one); every partition needs at least two
    /// nodes.
    pub nodes: usize,
    /// Target average connectivity index `c_av = 2M/N`.
    pub c_target: Ratio<u64>,
    /// Exact number of connected partitions to produce.
    pub partitions: usize,
    pub seed: u64,
    /// Remap output node ids onto a sparse random set, exercising index
    /// compaction downstream.
    pub scatter_indices: bool,
    /// Permit parallel (duplicate) segments, lifting the simple-graph cap
    /// on `M_p`.
    pub allow_parallel: bool,
}

/// Splits `nodes` into `partitions` sizes differing by at most one.
pub fn partition_sizes(nodes: usize, partitions: usize) -> Result<Vec<usize>, Error> {
    if partitions == 0 {
        return Err(Error::Infeasible("partition count must be >= 1".to_string()));
    }
    if nodes < 2 * partitions {
        return Err(Error::Infeasible(format!(
            "{nodes} nodes cannot form {partitions} partitions of at least 2 nodes each"
        )));
    }
    let base = nodes / partitions;
    let extra = nodes % partitions;
    Ok((0..partitions)
        .map(|i| if i < extra { base + 1 } else { base })
        .collect())
}

/// Per-partition segment budget `round(n_p · c_target / 2)`.
pub fn target_segment_count(n_p: usize, c_target: Ratio<u64>) -> u64 {
    (Ratio::from_integer(n_p as u64) * c_target / Ratio::from_integer(2))
        .round()
        .to_integer()
}

/// Parses a connectivity-index target as an exact rational: an integer
/// (`"5"`), a decimal (`"2.75"`), or a fraction (`"11/6"`).
pub fn parse_c_target(s: &str) -> Result<Ratio<u64>, Error> {
    let bad = || Error::Infeasible(format!("cannot parse connectivity target {s:?}"));
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: u64 = num.trim().parse().map_err(|_| bad())?;
        let den: u64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let whole: u64 = if whole.is_empty() {
            0
        } else {
            whole.parse().map_err(|_| bad())?
        };
        if frac.is_empty() || frac.len() > 9 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: u64 = frac.parse().map_err(|_| bad())?;
        let scale = 10u64.pow(frac.len() as u32);
        return Ok(Ratio::new(whole * scale + digits, scale));
    }
    let whole: u64 = s.parse().map_err(|_| bad())?;
    Ok(Ratio::from_integer(whole))
}

/// Generates a network satisfying the configuration exactly.
pub fn generate_network(cfg: &GeneratorConfig) -> Result<Network, Error> {
    let sizes = partition_sizes(cfg.nodes, cfg.partitions)?;

    // Validate every partition budget before drawing anything.
    for (pi, &n_p) in sizes.iter().enumerate() {
        let m_p = target_segment_count(n_p, cfg.c_target);
        let tree_edges = (n_p - 1) as u64;
        if m_p < tree_edges {
            return Err(Error::Infeasible(format!(
                "partition {pi}: c_target {} gives {m_p} segments for {n_p} nodes, \
                 below the {tree_edges} needed to connect them",
                cfg.c_target
            )));
        }
        let simple_cap = (n_p as u64) * (n_p as u64 - 1) / 2;
        if !cfg.allow_parallel && m_p > simple_cap {
            return Err(Error::Infeasible(format!(
                "partition {pi}: c_target {} gives {m_p} segments for {n_p} nodes, \
                 above the simple-graph cap {simple_cap}; enable parallel segments",
                cfg.c_target
            )));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut segments: Vec<Segment> = Vec::new();
    let mut base = 0usize;
    for &n_p in &sizes {
        grow_partition(&mut rng, &mut segments, base, n_p, cfg)?;
        base += n_p;
    }

    if cfg.scatter_indices {
        let ids = scattered_ids(&mut rng, cfg.nodes);
        for seg in &mut segments {
            *seg = Segment::new_unchecked(ids[seg.a()], ids[seg.b()]);
        }
    }

    let net = Network::from_segments(segments)?;
    debug_assert_eq!(net.node_count(), cfg.nodes);
    #[cfg(debug_assertions)]
    {
        let (dense, _) = crate::graph::compact_indices(&net);
        debug_assert_eq!(
            crate::oracle::union_find_partitions(&dense).len(),
            cfg.partitions,
            "generated network violates the partition-count constraint"
        );
    }
    Ok(net)
}

fn grow_partition(
    rng: &mut ChaCha8Rng,
    segments: &mut Vec<Segment>,
    base: usize,
    n_p: usize,
    cfg: &GeneratorConfig,
) -> Result<(), Error> {
    let m_p = target_segment_count(n_p, cfg.c_target);

    // Spanning tree: random permutation, each node attached to a random
    // earlier one.
    let mut order: Vec<usize> = (0..n_p).collect();
    order.shuffle(rng);
    let mut used: HashSet<(usize, usize)> = HashSet::new();
    for i in 1..n_p {
        let parent = order[rng.gen_range(0..i)];
        let child = order[i];
        if !cfg.allow_parallel {
            used.insert(pair_key(parent, child));
        }
        segments.push(Segment::new_unchecked(base + parent, base + child));
    }

    let extra = m_p - (n_p as u64 - 1);
    for _ in 0..extra {
        let (u, v) = draw_unused_pair(rng, n_p, &mut used, cfg.allow_parallel);
        segments.push(Segment::new_unchecked(base + u, base + v));
    }
    Ok(())
}

fn pair_key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Uniform pair sampling with a 100-attempt bound, then a systematic scan
/// so the worst case near the density cap stays bounded.
fn draw_unused_pair(
    rng: &mut ChaCha8Rng,
    n_p: usize,
    used: &mut HashSet<(usize, usize)>,
    allow_parallel: bool,
) -> (usize, usize) {
    for _ in 0..100 {
        let u = rng.gen_range(0..n_p);
        let v = rng.gen_range(0..n_p);
        if u == v {
            continue;
        }
        if allow_parallel {
            return (u, v);
        }
        if used.insert(pair_key(u, v)) {
            return (u, v);
        }
    }
    for u in 0..n_p {
        for v in (u + 1)..n_p {
            if allow_parallel || used.insert((u, v)) {
                return (u, v);
            }
        }
    }
    unreachable!("feasibility check guarantees an unused pair exists");
}

/// Distinct random ids drawn from a space ten times the node count.
fn scattered_ids(rng: &mut ChaCha8Rng, n: usize) -> Vec<NodeId> {
    let space = (n as u64).saturating_mul(10).max(16);
    let mut taken = HashSet::with_capacity(n);
    let mut ids = Vec::with_capacity(n);
    while ids.len() < n {
        let candidate = rng.gen_range(0..space) as NodeId;
        if taken.insert(candidate) {
            ids.push(candidate);
        }
    }
    ids
}
