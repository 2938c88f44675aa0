/* C interface for the netpart connectivity library. */

#ifndef NETPART_H
#define NETPART_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Partition enumeration algorithm selector.
 */
typedef enum NpAlgorithm {
  NpNodeMapping = 0,
  NpSegmentMapping = 1,
} NpAlgorithm;

/**
 * Topology class of one partition.
 */
typedef enum NpPartitionClass {
  NpOpen = 0,
  NpClosed = 1,
  NpSemiClosed = 2,
} NpPartitionClass;

/**
 * Result code of a C API call.
 */
typedef enum NpStatus {
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
} NpStatus;

/**
 * Opaque network handle.
 */
typedef struct NpNetwork NpNetwork;

/**
 * Opaque partition-list handle. Nodes are original ids sorted
 * ascending; segment indices are 0-based positions in the network's
 * segment list, sorted ascending.
 */
typedef struct NpPartitions NpPartitions;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Detail text for the most recent failure on this thread. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *np_last_error_message(void);

/**
 * Parses an edge-list network from a UTF-8 text buffer.
 *
 * # Safety
 * `text` must point to `len` readable bytes and `out` must be a valid
 * pointer to write a handle into.
 */
enum NpStatus np_network_parse(const uint8_t *text, uintptr_t len, struct NpNetwork **out);

/**
 * Parses an edge-list network from a file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum NpStatus np_network_parse_path(const char *path, struct NpNetwork **out);

/**
 * Generates a random network: `nodes` total nodes in exactly
 * `partitions` connected partitions with average connectivity index
 * `cavg_num / cavg_den`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum NpStatus np_network_generate(uint64_t nodes,
                                  uint64_t cavg_num,
                                  uint64_t cavg_den,
                                  uint64_t partitions,
                                  uint64_t seed,
                                  bool scatter_indices,
                                  bool allow_parallel,
                                  struct NpNetwork **out);

/**
 * Frees a network handle. Passing NULL is a no-op.
 *
 * # Safety
 * `net` must have been returned by this library and not yet freed.
 */
void np_network_free(struct NpNetwork *net);

/**
 * Number of distinct connected nodes (N).
 *
 * # Safety
 * `net` must be a live handle.
 */
uint64_t np_network_node_count(const struct NpNetwork *net);

/**
 * Number of segments (M), parallel segments counted separately.
 *
 * # Safety
 * `net` must be a live handle.
 */
uint64_t np_network_segment_count(const struct NpNetwork *net);

/**
 * Average connectivity index `2M/N` as a double.
 *
 * # Safety
 * `net` must be a live handle.
 */
double np_network_avg_connectivity(const struct NpNetwork *net);

/**
 * Writes the network to `path` in the edge-list format.
 *
 * # Safety
 * `net` must be a live handle and `path` a NUL-terminated string.
 */
enum NpStatus np_network_write_path(const struct NpNetwork *net, const char *path);

/**
 * Tests total connectivity: `*out` becomes true iff the network is one
 * partition.
 *
 * # Safety
 * `net` must be a live handle and `out` a valid pointer.
 */
enum NpStatus np_network_is_connected(const struct NpNetwork *net,
                                      enum NpAlgorithm algorithm,
                                      bool *out);

/**
 * Enumerates the totally connected partitions of a network.
 *
 * # Safety
 * `net` must be a live handle and `out` a valid pointer.
 */
enum NpStatus np_partitions_compute(const struct NpNetwork *net,
                                    enum NpAlgorithm algorithm,
                                    struct NpPartitions **out);

/**
 * Frees a partition-list handle. Passing NULL is a no-op.
 *
 * # Safety
 * `parts` must have been returned by this library and not yet freed.
 */
void np_partitions_free(struct NpPartitions *parts);

/**
 * Number of partitions.
 *
 * # Safety
 * `parts` must be a live handle.
 */
uintptr_t np_partitions_count(const struct NpPartitions *parts);

/**
 * Node count of one partition.
 *
 * # Safety
 * `parts` must be a live handle and `out` a valid pointer.
 */
enum NpStatus np_partitions_node_count(const struct NpPartitions *parts,
                                       uintptr_t index,
                                       uintptr_t *out);

/**
 * Segment count of one partition.
 *
 * # Safety
 * `parts` must be a live handle and `out` a valid pointer.
 */
enum NpStatus np_partitions_segment_count(const struct NpPartitions *parts,
                                          uintptr_t index,
                                          uintptr_t *out);

/**
 * Topology class of one partition.
 *
 * # Safety
 * `parts` must be a live handle and `out` a valid pointer.
 */
enum NpStatus np_partitions_class(const struct NpPartitions *parts,
                                  uintptr_t index,
                                  enum NpPartitionClass *out);

/**
 * Copies one partition's node ids (original indices, ascending) into
 * `buffer`.
 *
 * # Safety
 * `parts` must be a live handle, `buffer` must hold `capacity` entries,
 * and `written` must be a valid pointer.
 */
enum NpStatus np_partitions_copy_nodes(const struct NpPartitions *parts,
                                       uintptr_t index,
                                       uint64_t *buffer,
                                       uintptr_t capacity,
                                       uintptr_t *written);

/**
 * Copies one partition's segment indices (0-based positions in the
 * network's segment list, ascending) into `buffer`.
 *
 * # Safety
 * `parts` must be a live handle, `buffer` must hold `capacity` entries,
 * and `written` must be a valid pointer.
 */
enum NpStatus np_partitions_copy_segment_indices(const struct NpPartitions *parts,
                                                 uintptr_t index,
                                                 uint64_t *buffer,
                                                 uintptr_t capacity,
                                                 uintptr_t *written);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* NETPART_H */
