//! Timing harness for the scaling sweeps: node count, connectivity
//! index, and partition count.
//!
//! Each sweep point generates one instance, cross-checks that both
//! algorithms produce the same partition family, then times each
//! algorithm over a discarded warm-up run plus `R` measured repeats on
//! that same instance. Only the partition-finding call sits inside the
//! timed region; generation and adjacency construction are excluded
//! unless `include_prep` pulls adjacency construction into node mapping's
//! region. Segment mapping is timed in its lazy-removal variant. Records
//! carry the instrumented storage counters, which must match the
//! closed-form estimates exactly.

use std::fmt;
use std::hint::black_box;
use std::io::Write;
use std::time::Instant;

use num_rational::Ratio;
use num_traits::ToPrimitive;

use crate::error::Error;
use crate::generator::{generate_network, GeneratorConfig};
use crate::graph::{build_adjacency, canonical_family};
use crate::segment_mapping::RemovalVariant;
use crate::{node_mapping, segment_mapping, StartRule};

/// Which generation parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    NodeCount,
    ConnectivityIndex,
    PartitionCount,
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SweepVariable::NodeCount => "node_count",
            SweepVariable::ConnectivityIndex => "connectivity_index",
            SweepVariable::PartitionCount => "partition_count",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    NodeMapping,
    SegmentMapping,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Algorithm::NodeMapping => "node_mapping",
            Algorithm::SegmentMapping => "segment_mapping",
        };
        f.write_str(s)
    }
}

/// Parameters held constant while one variable sweeps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixedParams {
    pub nodes: usize,
    pub c_target: Ratio<u64>,
    pub partitions: usize,
}

impl Default for FixedParams {
    fn default() -> Self {
        Self {
            nodes: 500_000,
            c_target: Ratio::from_integer(5),
            partitions: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub variable: SweepVariable,
    /// Sweep points, strictly increasing.
    pub values: Vec<u64>,
    pub fixed: FixedParams,
    /// Measured repeats per algorithm and point, at least 3.
    pub repeats: usize,
    pub seed: u64,
    /// Include adjacency construction in node mapping's timed region.
    pub include_prep: bool,
}

/// One timed measurement.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub variable: SweepVariable,
    pub sweep_value: u64,
    pub algorithm: Algorithm,
    pub node_count: usize,
    pub segment_count: usize,
    pub partition_count: usize,
    pub c_avg: Ratio<u64>,
    pub mean_seconds: f64,
    pub stddev_seconds: f64,
    pub bool_slots: u64,
    pub int_slots: u64,
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub records: Vec<BenchRecord>,
    pub warnings: Vec<String>,
}

/// Ordinary least-squares line over `(sweep_value, mean_seconds)`.
#[derive(Debug, Clone, Copy)]
pub struct LinearFit {
    pub algorithm: Algorithm,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    /// Set when the measured times had zero variance, where r² is
    /// undefined and reported as 0.
    pub degenerate: bool,
}

/// Runs one sweep: generate per point, cross-check, time both algorithms.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutcome, Error> {
    if cfg.values.is_empty() {
        return Err(Error::InvalidSweep("no sweep values".to_string()));
    }
    if !cfg.values.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::InvalidSweep(
            "sweep values must be strictly increasing".to_string(),
        ));
    }
    if cfg.repeats < 3 {
        return Err(Error::InvalidSweep(format!(
            "need at least 3 repeats, got {}",
            cfg.repeats
        )));
    }

    let mut records = Vec::with_capacity(cfg.values.len() * 2);
    let mut warnings = Vec::new();
    let mut smallest_time = f64::INFINITY;

    for (index, &value) in cfg.values.iter().enumerate() {
        let gen_cfg = point_config(cfg, index, value);
        let net = generate_network(&gen_cfg).map_err(|e| Error::SweepPoint {
            value,
            detail: e.to_string(),
        })?;
        let adj = build_adjacency(&net)?;

        // Cross-check the two algorithms before any timing; a benchmark
        // on wrong output is void.
        let node_run = node_mapping::run(&adj, StartRule::LowestIndex)?;
        let node_parts = node_mapping::assign_segments(&net, node_run.partitions.clone())?;
        let seg_run = segment_mapping::run(&net, RemovalVariant::Lazy, StartRule::LowestIndex)?;
        if canonical_family(&node_parts) != canonical_family(&seg_run.partitions) {
            return Err(Error::InvariantViolation(format!(
                "algorithms disagree on the partition family at sweep value {value}"
            )));
        }
        let partition_count = seg_run.partitions.len();

        let (n, m) = (net.node_count() as u64, net.segment_count() as u64);
        let node_estimate = node_mapping::memory_estimate(n, m)?;
        if node_run.bool_slots != node_estimate.bool_slots
            || node_run.int_slots != node_estimate.int_slots
        {
            return Err(Error::InvariantViolation(format!(
                "node mapping slot counters disagree with the estimate at sweep value {value}"
            )));
        }
        let seg_estimate = segment_mapping::memory_estimate(n, m, RemovalVariant::Lazy)?;
        if seg_run.bool_slots != seg_estimate.bool_slots
            || seg_run.int_slots != seg_estimate.int_slots
        {
            return Err(Error::InvariantViolation(format!(
                "segment mapping slot counters disagree with the estimate at sweep value {value}"
            )));
        }

        let node_times = time_repeats(cfg.repeats, || {
            if cfg.include_prep {
                let adj = build_adjacency(&net).expect("dense instance");
                black_box(
                    node_mapping::run(&adj, StartRule::LowestIndex)
                        .expect("validated instance")
                        .partitions
                        .len(),
                );
            } else {
                black_box(
                    node_mapping::run(&adj, StartRule::LowestIndex)
                        .expect("validated instance")
                        .partitions
                        .len(),
                );
            }
        });
        let seg_times = time_repeats(cfg.repeats, || {
            black_box(
                segment_mapping::run(&net, RemovalVariant::Lazy, StartRule::LowestIndex)
                    .expect("validated instance")
                    .partitions
                    .len(),
            );
        });
        smallest_time = smallest_time
            .min(node_times.iter().copied().fold(f64::INFINITY, f64::min))
            .min(seg_times.iter().copied().fold(f64::INFINITY, f64::min));

        for (algorithm, times, slots) in [
            (Algorithm::NodeMapping, &node_times, &node_estimate),
            (Algorithm::SegmentMapping, &seg_times, &seg_estimate),
        ] {
            let (mean, stddev) = mean_stddev(times);
            records.push(BenchRecord {
                variable: cfg.variable,
                sweep_value: value,
                algorithm,
                node_count: net.node_count(),
                segment_count: net.segment_count(),
                partition_count,
                c_avg: net.avg_connectivity(),
                mean_seconds: mean,
                stddev_seconds: stddev,
                bool_slots: slots.bool_slots,
                int_slots: slots.int_slots,
            });
        }
    }

    let resolution = timer_resolution_seconds();
    if resolution > smallest_time * 0.01 {
        warnings.push(format!(
            "timer resolution {resolution:.3e} s is coarser than 1% of the smallest \
             measured time {smallest_time:.3e} s; means may be quantized"
        ));
    }

    Ok(SweepOutcome { records, warnings })
}

fn point_config(cfg: &SweepConfig, index: usize, value: u64) -> GeneratorConfig {
    let mut nodes = cfg.fixed.nodes;
    let mut c_target = cfg.fixed.c_target;
    let mut partitions = cfg.fixed.partitions;
    match cfg.variable {
        SweepVariable::NodeCount => nodes = value as usize,
        SweepVariable::ConnectivityIndex => c_target = Ratio::from_integer(value),
        SweepVariable::PartitionCount => partitions = value as usize,
    }
    GeneratorConfig {
        nodes,
        c_target,
        partitions,
        seed: cfg.seed.wrapping_add(index as u64),
        scatter_indices: false,
        allow_parallel: false,
    }
}

/// One discarded warm-up run, then `repeats` measured runs.
fn time_repeats<F: FnMut()>(repeats: usize, mut body: F) -> Vec<f64> {
    body();
    (0..repeats)
        .map(|_| {
            let start = Instant::now();
            body();
            start.elapsed().as_secs_f64()
        })
        .collect()
}

fn mean_stddev(times: &[f64]) -> (f64, f64) {
    let n = times.len() as f64;
    let mean = times.iter().sum::<f64>() / n;
    if times.len() < 2 {
        return (mean, 0.0);
    }
    let var = times.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Smallest positive step the monotonic clock can report.
fn timer_resolution_seconds() -> f64 {
    let mut min = f64::INFINITY;
    for _ in 0..64 {
        let start = Instant::now();
        let mut elapsed = start.elapsed();
        while elapsed.is_zero() {
            elapsed = start.elapsed();
        }
        min = min.min(elapsed.as_secs_f64());
    }
    min
}

/// Least-squares fit of one algorithm's records; needs at least 4 points.
pub fn linear_fit(records: &[BenchRecord], algorithm: Algorithm) -> Result<LinearFit, Error> {
    let points: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.algorithm == algorithm)
        .map(|r| (r.sweep_value as f64, r.mean_seconds))
        .collect();
    if points.len() < 4 {
        return Err(Error::InsufficientData {
            needed: 4,
            got: points.len(),
        });
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points
        .iter()
        .map(|p| (p.0 - mean_x) * (p.1 - mean_y))
        .sum();
    let ss_tot: f64 = points.iter().map(|p| (p.1 - mean_y).powi(2)).sum();

    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    if ss_tot == 0.0 {
        return Ok(LinearFit {
            algorithm,
            slope: 0.0,
            intercept: mean_y,
            r_squared: 0.0,
            degenerate: true,
        });
    }
    let ss_res: f64 = points
        .iter()
        .map(|p| (p.1 - (intercept + slope * p.0)).powi(2))
        .sum();
    Ok(LinearFit {
        algorithm,
        slope,
        intercept,
        r_squared: 1.0 - ss_res / ss_tot,
        degenerate: false,
    })
}

/// How strongly each algorithm's time grew from the smallest to the
/// largest sweep value. On a partition sweep, segment mapping is expected
/// to degrade faster than node mapping.
#[derive(Debug, Clone, Copy)]
pub struct TrendReport {
    pub node_ratio: f64,
    pub segment_ratio: f64,
}

impl TrendReport {
    pub fn segment_degrades_faster(&self) -> bool {
        self.segment_ratio > self.node_ratio
    }
}

/// Time ratios t(max value) / t(min value) per algorithm; `None` unless
/// both algorithms have records at both extremes.
pub fn growth_ratios(records: &[BenchRecord]) -> Option<TrendReport> {
    let min_value = records.iter().map(|r| r.sweep_value).min()?;
    let max_value = records.iter().map(|r| r.sweep_value).max()?;
    if min_value == max_value {
        return None;
    }
    let time_at = |algorithm: Algorithm, value: u64| {
        records
            .iter()
            .find(|r| r.algorithm == algorithm && r.sweep_value == value)
            .map(|r| r.mean_seconds)
    };
    Some(TrendReport {
        node_ratio: time_at(Algorithm::NodeMapping, max_value)?
            / time_at(Algorithm::NodeMapping, min_value)?,
        segment_ratio: time_at(Algorithm::SegmentMapping, max_value)?
            / time_at(Algorithm::SegmentMapping, min_value)?,
    })
}

/// Writes records (and any fits as trailing comment lines) as CSV.
/// Output is byte-stable for identical inputs.
pub fn write_csv<W: Write>(
    mut w: W,
    records: &[BenchRecord],
    fits: &[LinearFit],
) -> std::io::Result<()> {
    writeln!(
        w,
        "sweep_variable,sweep_value,algorithm,N,M,P,c_avg,mean_seconds,stddev_seconds,bool_slots,int_slots"
    )?;
    for r in records {
        writeln!(
            w,
            "{},{},{},{},{},{},{:.6},{:.9},{:.9},{},{}",
            r.variable,
            r.sweep_value,
            r.algorithm,
            r.node_count,
            r.segment_count,
            r.partition_count,
            r.c_avg.to_f64().unwrap_or(f64::NAN),
            r.mean_seconds,
            r.stddev_seconds,
            r.bool_slots,
            r.int_slots
        )?;
    }
    for f in fits {
        writeln!(
            w,
            "# fit: algorithm={} slope={:.12} intercept={:.12} r_squared={:.4} degenerate={}",
            f.algorithm, f.slope, f.intercept, f.r_squared, f.degenerate
        )?;
    }
    Ok(())
}
