/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef SUPDENSE_H
#define SUPDENSE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes. Values 2, 3 and 4 mean the same as the command-line exit codes.
typedef enum SdStatus {
  SD_STATUS_OK = 0,
  // Invalid instance or internal failure.
  SD_STATUS_INVALID = 1,
  // The constraint admits no feasible set.
  SD_STATUS_INFEASIBLE = 2,
  // Malformed input file or text.
  SD_STATUS_FORMAT = 3,
  // Instance above an exhaustive-search cap.
  SD_STATUS_CAP = 4,
  // A required pointer argument was null.
  SD_STATUS_NULL_ARGUMENT = 5,
  // A caller-supplied buffer is too small.
  SD_STATUS_BUFFER_TOO_SMALL = 6,
  // A value does not fit the output type.
  SD_STATUS_OVERFLOW = 7,
  // Rust panic caught at the boundary; a bug.
  SD_STATUS_PANIC = 8,
} SdStatus;

typedef struct SdMatroid SdMatroid;

// Set function: a (weighted) graph's induced edge weight or an explicit table.
typedef struct SdOracle SdOracle;

// Solver output: the chosen set and its exact density.
typedef struct SdResult SdResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or null. Valid until the
// next `sd_*` call on the same thread.
const char *sd_last_error(void);

// Loads a graph file ("n m" header, then one "u v [w]" line per edge).
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum SdStatus sd_oracle_from_graph_file(const char *path, struct SdOracle **out);

// Builds a graph oracle from `m` edges `(tails[i], heads[i])`. `weights` may
// be null for unit weights.
//
// # Safety
// `tails` and `heads` (and `weights` unless null) must hold `m` elements.
enum SdStatus sd_oracle_from_edges(size_t n,
                                   const size_t *tails,
                                   const size_t *heads,
                                   const uint64_t *weights,
                                   size_t m,
                                   struct SdOracle **out);

// Loads an explicit value table and checks it is monotone supermodular.
//
// # Safety
// `path` must be a NUL-terminated string; `out` must be writable.
enum SdStatus sd_oracle_from_table_file(const char *path, struct SdOracle **out);

// Number of ground elements, or 0 for a null handle.
//
// # Safety
// `oracle` must be null or a live handle.
size_t sd_oracle_len(const struct SdOracle *oracle);

// # Safety
// `oracle` must be null or a handle not yet freed.
void sd_oracle_free(struct SdOracle *oracle);

// Uniform matroid: sets of size at most `r` are independent.
//
// # Safety
// `out` must be writable.
enum SdStatus sd_matroid_cardinality(size_t n, size_t r, struct SdMatroid **out);

// Partition matroid: element `i` lies in block `block_of[i]`, and block `b`
// admits at most `limits[b]` elements.
//
// # Safety
// `block_of` must hold `n` elements and `limits` `n_blocks`.
enum SdStatus sd_matroid_partition(size_t n,
                                   const size_t *block_of,
                                   const size_t *limits,
                                   size_t n_blocks,
                                   struct SdMatroid **out);

// Parses a JSON matroid description over `n` elements.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum SdStatus sd_matroid_from_json(const char *json, size_t n, struct SdMatroid **out);

// # Safety
// `matroid` must be null or a handle not yet freed.
void sd_matroid_free(struct SdMatroid *matroid);

// Exact densest set containing the `n_required` ids in `required`.
//
// # Safety
// Handles must be live; `required` must hold `n_required` ids.
enum SdStatus sd_densest(const struct SdOracle *oracle,
                         const size_t *required,
                         size_t n_required,
                         struct SdResult **out);

// Densest set whose complement is independent in `matroid`, within factor 2.
//
// # Safety
// Handles must be live; `out` must be writable.
enum SdStatus sd_den_m_greedy(const struct SdOracle *oracle,
                              const struct SdMatroid *matroid,
                              struct SdResult **out);

// As [`sd_den_m_greedy`], with the set also required to contain `required`.
//
// # Safety
// Handles must be live; `required` must hold `n_required` ids.
enum SdStatus sd_den_combo_greedy(const struct SdOracle *oracle,
                                  const struct SdMatroid *matroid,
                                  const size_t *required,
                                  size_t n_required,
                                  struct SdResult **out);

// Densest set of total weight at least `k`, within factor 3. Returns
// `Infeasible` when all weights together fall short of `k`.
//
// # Safety
// `oracle` must be live; `weights` must hold one weight per element.
enum SdStatus sd_den_knapsack_greedy(const struct SdOracle *oracle,
                                     const uint64_t *weights,
                                     size_t n_weights,
                                     uint64_t k,
                                     struct SdResult **out);

// Exact densest set closed under the arcs `tails[i] -> heads[i]` (a member
// tail forces its head in).
//
// # Safety
// `oracle` must be live; `tails` and `heads` must hold `n_arcs` ids.
enum SdStatus sd_densest_closure(const struct SdOracle *oracle,
                                 const size_t *tails,
                                 const size_t *heads,
                                 size_t n_arcs,
                                 struct SdResult **out);

// Exact density as a reduced fraction `num / den` with `den > 0`.
//
// # Safety
// `result` must be live; `num` and `den` must be writable.
enum SdStatus sd_result_density(const struct SdResult *result, int64_t *num, int64_t *den);

// Number of elements in the chosen set, or 0 for a null handle.
//
// # Safety
// `result` must be null or live.
size_t sd_result_len(const struct SdResult *result);

// Copies the chosen ids, ascending, into `buf` (capacity `cap`).
//
// # Safety
// `result` must be live; `buf` must have room for `cap` ids.
enum SdStatus sd_result_members(const struct SdResult *result, size_t *buf, size_t cap);

// # Safety
// `result` must be null or a handle not yet freed.
void sd_result_free(struct SdResult *result);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SUPDENSE_H */
