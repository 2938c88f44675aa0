//! C ABI for the netpart connectivity library.
//!
//! Conventions: handles are opaque pointers created and freed by this
//! library; every fallible call returns an [`NpStatus`] code and writes
//! its result through an out-pointer; [`np_last_error_message`] returns
//! detail text for the most recent failure on the calling thread. Node
//! ids crossing the boundary are always original (pre-compaction) ids.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use num_rational::Ratio;
use num_traits::ToPrimitive;

use netpart::error::Error;
use netpart::generator::{generate_network, GeneratorConfig};
use netpart::graph::{
    build_adjacency, compact_indices, parse_network_str, write_network, IndexMapping, Network,
};
use netpart::segment_mapping::RemovalVariant;
use netpart::stats::{classify_partition, PartitionClass};
use netpart::{node_mapping, segment_mapping, StartRule};

/// Result code of a C API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NpStatus {
    NpOk = 0,
    NpNullArgument = 1,
    NpInvalidUtf8 = 2,
    NpParseError = 3,
    NpEmptyNetwork = 4,
    NpInfeasible = 5,
    NpPrecondition = 6,
    NpOutOfRange = 7,
    NpBufferTooSmall = 8,
    NpIoError = 9,
    NpInternal = 10,
}

/// Partition enumeration algorithm selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NpAlgorithm {
    NpNodeMapping = 0,
    NpSegmentMapping = 1,
}

/// Topology class of one partition.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NpPartitionClass {
    NpOpen = 0,
    NpClosed = 1,
    NpSemiClosed = 2,
}

/// Opaque network handle.
pub struct NpNetwork {
    original: Network,
    dense: Network,
    mapping: IndexMapping,
}

/// Opaque partition-list handle. Nodes are original ids sorted
/// ascending; segment indices are 0-based positions in the network's
/// segment list, sorted ascending.
pub struct NpPartitions {
    nodes: Vec<Vec<u64>>,
    segment_indices: Vec<Vec<u64>>,
    classes: Vec<NpPartitionClass>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: impl std::fmt::Display) {
    let text = message.to_string().replace('\0', " ");
    LAST_ERROR.with(|cell| {
        *cell.borrow_mut() = CString::new(text).unwrap_or_default();
    });
}

fn status_for(err: &Error) -> NpStatus {
    match err {
        Error::Parse { .. } => NpStatus::NpParseError,
        Error::EmptyNetwork => NpStatus::NpEmptyNetwork,
        Error::Infeasible(_)
        | Error::InvalidSweep(_)
        | Error::SweepPoint { .. }
        | Error::InsufficientData { .. } => NpStatus::NpInfeasible,
        Error::MappingDomain(_)
        | Error::NotDense
        | Error::EmptyAdjacency
        | Error::OriginOutOfRange { .. }
        | Error::TriangularBound { .. }
        | Error::DisconnectedPartition
        | Error::EstimateRange { .. } => NpStatus::NpPrecondition,
        Error::Io(_) => NpStatus::NpIoError,
        Error::InvariantViolation(_) => NpStatus::NpInternal,
    }
}

fn fail(err: Error) -> NpStatus {
    let status = status_for(&err);
    set_last_error(err);
    status
}

/// Runs a fallible body, converting errors and panics into status codes.
fn guarded<F: FnOnce() -> Result<NpStatus, Error>>(body: F) -> NpStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(status)) => status,
        Ok(Err(err)) => fail(err),
        Err(_) => {
            set_last_error("internal panic");
            NpStatus::NpInternal
        }
    }
}

fn wrap_network(original: Network) -> Box<NpNetwork> {
    let (dense, mapping) = compact_indices(&original);
    Box::new(NpNetwork {
        original,
        dense,
        mapping,
    })
}

/// Detail text for the most recent failure on this thread. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn np_last_error_message() -> *const c_char {
    LAST_ERROR.with(|cell| cell.borrow().as_ptr())
}

/// Parses an edge-list network from a UTF-8 text buffer.
///
/// # Safety
/// `text` must point to `len` readable bytes and `out` must be a valid
/// pointer to write a handle into.
#[no_mangle]
pub unsafe extern "C" fn np_network_parse(
    text: *const u8,
    len: usize,
    out: *mut *mut NpNetwork,
) -> NpStatus {
    if text.is_null() || out.is_null() {
        set_last_error("null argument");
        return NpStatus::NpNullArgument;
    }
    let bytes = slice::from_raw_parts(text, len);
    guarded(|| {
        let Ok(utf8) = std::str::from_utf8(bytes) else {
            set_last_error("input is not valid UTF-8");
            return Ok(NpStatus::NpInvalidUtf8);
        };
        let net = parse_network_str(utf8)?;
        *out = Box::into_raw(wrap_network(net));
        Ok(NpStatus::NpOk)
    })
}

/// Parses an edge-list network from a file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn np_network_parse_path(
    path: *const c_char,
    out: *mut *mut NpNetwork,
) -> NpStatus {
    if path.is_null() || out.is_null() {
        set_last_error("null argument");
        return NpStatus::NpNullArgument;
    }
    let Ok(path) = CStr::from_ptr(path).to_str() else {
        set_last_error("path is not valid UTF-8");
        return NpStatus::NpInvalidUtf8;
    };
    let path = path.to_owned();
    guarded(move || {
        let file = File::open(path)?;
        let net = netpart::graph::parse_network(std::io::BufReader::new(file))?;
        *out = Box::into_raw(wrap_network(net));
        Ok(NpStatus::NpOk)
    })
}

/// Generates a random network: `nodes` total nodes in exactly
/// `partitions` connected partitions with average connectivity index
/// `cavg_num / cavg_den`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn np_network_generate(
    nodes: u64,
    cavg_num: u64,
    cavg_den: u64,
    partitions: u64,
    seed: u64,
    scatter_indices: bool,
    allow_parallel: bool,
    out: *mut *mut NpNetwork,
) -> NpStatus {
    if out.is_null() {
        set_last_error("null argument");
        return NpStatus::NpNullArgument;
    }
    if cavg_den == 0 {
        set_last_error("cavg denominator must be nonzero");
        return NpStatus::NpInfeasible;
    }
    guarded(move || {
        let cfg = GeneratorConfig {
            nodes: nodes as usize,
            c_target: Ratio::new(cavg_num, cavg_den),
            partitions: partitions as usize,
            seed,
            scatter_indices,
            allow_parallel,
        };
        let net = generate_network(&cfg)?;
        *out = Box::into_raw(wrap_network(net));
        Ok(NpStatus::NpOk)
    })
}

/// Frees a network handle. Passing NULL is a no-op.
///
/// # Safety
/// `net` must have been returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn np_network_free(net: *mut NpNetwork) {
    if !net.is_null() {
        drop(Box::from_raw(net));
    }
}

/// Number of distinct connected nodes (N).
///
/// # Safety
/// `net` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn np_network_node_count(net: *const NpNetwork) -> u64 {
    (*net).original.node_count() as u64
}

/// Number of segments (M), parallel segments counted separately.
///
/// # Safety
/// `net` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn np_network_segment_count(net: *const NpNetwork) -> u64 {
    (*net).original.segment_count() as u64
}

/// Average connectivity index `2M/N` as a double.
///
/// # Safety
/// `net` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn np_network_avg_connectivity(net: *const NpNetwork) -> f64 {
    (*net).original.avg_connectivity().to_f64().unwrap_or(f64::NAN)
}

/// Writes the network to `path` in the edge-list format.
///
/// # Safety
/// `net` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn np_network_write_path(
    net: *const NpNetwork,
    path: *const c_char,
) -> NpStatus {
    if net.is_null() || path.is_null() {
        set_last_error("null argument");
        return NpStatus::NpNullArgument;
    }
    let Ok(path) = CStr::from_ptr(path).to_str() else {
        set_last_error("path is not valid UTF-8");
        return NpStatus::NpInvalidUtf8;
    };
    let net = &*net;
    let path = path.to_owned();
    guarded(move || {
        let mut w = BufWriter::new(File::create(path)?);
        write_network(&net.original, &mut w)?;
        w.flush()?;
        Ok(NpStatus::NpOk)
    })
}

fn enumerate(net: &NpNetwork, algorithm: NpAlgorithm) -> Result<Vec<netpart::Partition>, Error> {
    match algorithm {
        NpAlgorithm::NpNodeMapping => {
            let adj = build_adjacency(&net.dense)?;
            let parts = node_mapping::find_partitions(&adj, StartRule::LowestIndex)?;
            node_mapping::assign_segments(&net.dense, parts)
        }
        NpAlgorithm::NpSegmentMapping => segment_mapping::find_partitions(
            &net.dense,
            RemovalVariant::Lazy,
            StartRule::LowestIndex,
        ),
    }
}

/// Tests total connectivity: `*out` becomes true iff the network is one
/// partition.
///
/// # Safety
/// `net` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn np_network_is_connected(
    net: *const NpNetwork,
    algorithm: NpAlgorithm,
    out: *mut bool,
) -> NpStatus {
    if net.is_null() || out.is_null() {
        set_last_error("null argument");
        return NpStatus::NpNullArgument;
    }
    let net = &*net;
    guarded(move || {
        let parts = enumerate(net, algorithm)?;
        *out = parts.len() == 1;
        Ok(NpStatus::NpOk)
    })
}

/// Enumerates the totally connected partitions of a network.
///
/// # Safety
/// `net` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn np_partitions_compute(
    net: *const NpNetwork,
    algorithm: NpAlgorithm,
    out: *mut *mut NpPartitions,
) -> NpStatus {
    if net.is_null() || out.is_null() {
        set_last_error("null argument");
        return NpStatus::NpNullArgument;
    }
    let net = &*net;
    guarded(move || {
        let parts = enumerate(net, algorithm)?;
        let mut nodes = Vec::with_capacity(parts.len());
        let mut segment_indices = Vec::with_capacity(parts.len());
        let mut classes = Vec::with_capacity(parts.len());
        for part in &parts {
            let class = classify_partition(&net.dense, part)?;
            classes.push(match class {
                PartitionClass::Open => NpPartitionClass::NpOpen,
                PartitionClass::Closed => NpPartitionClass::NpClosed,
                PartitionClass::SemiClosed => NpPartitionClass::NpSemiClosed,
            });
            let mut original_nodes: Vec<u64> = part
                .nodes
                .iter()
                .map(|&v| {
                    net.mapping
                        .original(v)
                        .map(|id| id as u64)
                        .ok_or(Error::MappingDomain(v))
                })
                .collect::<Result<_, _>>()?;
            original_nodes.sort_unstable();
            nodes.push(original_nodes);
            let mut indices: Vec<u64> =
                part.segment_indices.iter().map(|&s| s as u64).collect();
            indices.sort_unstable();
            segment_indices.push(indices);
        }
        *out = Box::into_raw(Box::new(NpPartitions {
            nodes,
            segment_indices,
            classes,
        }));
        Ok(NpStatus::NpOk)
    })
}

/// Frees a partition-list handle. Passing NULL is a no-op.
///
/// # Safety
/// `parts` must have been returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn np_partitions_free(parts: *mut NpPartitions) {
    if !parts.is_null() {
        drop(Box::from_raw(parts));
    }
}

/// Number of partitions.
///
/// # Safety
/// `parts` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn np_partitions_count(parts: *const NpPartitions) -> usize {
    (*parts).nodes.len()
}

/// Node count of one partition.
///
/// # Safety
/// `parts` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn np_partitions_node_count(
    parts: *const NpPartitions,
    index: usize,
    out: *mut usize,
) -> NpStatus {
    if parts.is_null() || out.is_null() {
        set_last_error("null argument");
        return NpStatus::NpNullArgument;
    }
    match (&(*parts).nodes).get(index) {
        Some(nodes) => {
            *out = nodes.len();
            NpStatus::NpOk
        }
        None => {
            set_last_error(format!("partition index {index} out of range"));
            NpStatus::NpOutOfRange
        }
    }
}

/// Segment count of one partition.
///
/// # Safety
/// `parts` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn np_partitions_segment_count(
    parts: *const NpPartitions,
    index: usize,
    out: *mut usize,
) -> NpStatus {
    if parts.is_null() || out.is_null() {
        set_last_error("null argument");
        return NpStatus::NpNullArgument;
    }
    match (&(*parts).segment_indices).get(index) {
        Some(indices) => {
            *out = indices.len();
            NpStatus::NpOk
        }
        None => {
            set_last_error(format!("partition index {index} out of range"));
            NpStatus::NpOutOfRange
        }
    }
}

/// Topology class of one partition.
///
/// # Safety
/// `parts` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn np_partitions_class(
    parts: *const NpPartitions,
    index: usize,
    out: *mut NpPartitionClass,
) -> NpStatus {
    if parts.is_null() || out.is_null() {
        set_last_error("null argument");
        return NpStatus::NpNullArgument;
    }
    match (&(*parts).classes).get(index) {
        Some(&class) => {
            *out = class;
            NpStatus::NpOk
        }
        None => {
            set_last_error(format!("partition index {index} out of range"));
            NpStatus::NpOutOfRange
        }
    }
}

unsafe fn copy_ids(
    values: Option<&Vec<u64>>,
    index: usize,
    buffer: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> NpStatus {
    let Some(values) = values else {
        set_last_error(format!("partition index {index} out of range"));
        return NpStatus::NpOutOfRange;
    };
    if capacity < values.len() {
        set_last_error(format!(
            "buffer holds {capacity} entries, {} required",
            values.len()
        ));
        return NpStatus::NpBufferTooSmall;
    }
    std::ptr::copy_nonoverlapping(values.as_ptr(), buffer, values.len());
    *written = values.len();
    NpStatus::NpOk
}

/// Copies one partition's node ids (original indices, ascending) into
/// `buffer`.
///
/// # Safety
/// `parts` must be a live handle, `buffer` must hold `capacity` entries,
/// and `written` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn np_partitions_copy_nodes(
    parts: *const NpPartitions,
    index: usize,
    buffer: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> NpStatus {
    if parts.is_null() || buffer.is_null() || written.is_null() {
        set_last_error("null argument");
        return NpStatus::NpNullArgument;
    }
    copy_ids(
        (&(*parts).nodes).get(index),
        index,
        buffer,
        capacity,
        written,
    )
}

/// Copies one partition's segment indices (0-based positions in the
/// network's segment list, ascending) into `buffer`.
///
/// # Safety
/// `parts` must be a live handle, `buffer` must hold `capacity` entries,
/// and `written` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn np_partitions_copy_segment_indices(
    parts: *const NpPartitions,
    index: usize,
    buffer: *mut u64,
    capacity: usize,
    written: *mut usize,
) -> NpStatus {
    if parts.is_null() || buffer.is_null() || written.is_null() {
        set_last_error("null argument");
        return NpStatus::NpNullArgument;
    }
    copy_ids(
        (&(*parts).segment_indices).get(index),
        index,
        buffer,
        capacity,
        written,
    )
}
