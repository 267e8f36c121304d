#ifndef TOPK_AFD_H
#define TOPK_AFD_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum TopkAfdStatus {
  TOPK_AFD_STATUS_OK = 0,
  TOPK_AFD_STATUS_NULL_POINTER = 1,
  TOPK_AFD_STATUS_INVALID_ARGUMENT = 2,
  TOPK_AFD_STATUS_IO = 3,
  TOPK_AFD_STATUS_MALFORMED_INPUT = 4,
  TOPK_AFD_STATUS_OVERFLOW = 5,
  TOPK_AFD_STATUS_PANIC = 6,
} TopkAfdStatus;

/**
 * Engine selector. Values other than the enumerators are undefined
 * behaviour.
 */
typedef enum TopkAfdAlgorithm {
  TOPK_AFD_ALGORITHM_BASE = 0,
  TOPK_AFD_ALGORITHM_OPT = 1,
} TopkAfdAlgorithm;

/**
 * Opaque loaded relation.
 */
typedef struct TopkAfdRelation TopkAfdRelation;

/**
 * Opaque ranked result of one search.
 */
typedef struct TopkAfdResult TopkAfdResult;

/**
 * CSV parsing options. `null_token` may be NULL, meaning only empty cells
 * are NULL.
 */
typedef struct TopkAfdLoadOptions {
  uint8_t delimiter;
  bool has_header;
  const char *null_token;
} TopkAfdLoadOptions;

typedef struct TopkAfdConfig {
  size_t k;
  size_t max_lhs;
  bool ub_pruning;
  bool fd_pruning;
} TopkAfdConfig;

/**
 * One ranked dependency. `lhs` points at `lhs_len` attribute indices owned
 * by the result handle.
 */
typedef struct TopkAfdEntry {
  double score;
  double rho;
  double pdep_cond;
  double pdep_marg;
  uint64_t distinct_lhs;
  uint64_t valid_count;
  size_t rhs;
  const size_t *lhs;
  size_t lhs_len;
} TopkAfdEntry;

typedef struct TopkAfdStats {
  uint64_t evaluated_candidates;
  uint64_t exact_fd_count;
  uint64_t pruned_by_exact_fd;
  uint64_t pruned_by_upper_bound;
  uint64_t degenerate_skipped;
  double elapsed_ms;
} TopkAfdStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Options equal to the library defaults: comma, header row, no null token.
 */
struct TopkAfdLoadOptions topk_afd_load_options_default(void);

/**
 * Loads a CSV file. `options` may be NULL. On success `*out` receives a
 * handle to free with [`topk_afd_relation_free`].
 *
 * # Safety
 *
 * `path` is a NUL-terminated string, `out` is writable.
 */
enum TopkAfdStatus topk_afd_relation_load_csv(const char *path,
                                              const struct TopkAfdLoadOptions *options,
                                              struct TopkAfdRelation **out);

/**
 * Parses CSV text held in memory.
 *
 * # Safety
 *
 * `data` points at `len` readable bytes (it may be NULL when `len` is 0),
 * `out` is writable.
 */
enum TopkAfdStatus topk_afd_relation_load_buffer(const uint8_t *data,
                                                 size_t len,
                                                 const struct TopkAfdLoadOptions *options,
                                                 struct TopkAfdRelation **out);

/**
 * Releases a relation. NULL is ignored.
 *
 * # Safety
 *
 * `relation` came from a load function and is freed at most once.
 */
void topk_afd_relation_free(struct TopkAfdRelation *relation);

/**
 * Row count, or 0 for NULL.
 *
 * # Safety
 *
 * `relation` is NULL or a live handle.
 */
size_t topk_afd_relation_row_count(const struct TopkAfdRelation *relation);

/**
 * Attribute count, or 0 for NULL.
 *
 * # Safety
 *
 * `relation` is NULL or a live handle.
 */
size_t topk_afd_relation_attribute_count(const struct TopkAfdRelation *relation);

/**
 * Name of attribute `index`, or NULL when out of range. Owned by the
 * relation.
 *
 * # Safety
 *
 * `relation` is NULL or a live handle.
 */
const char *topk_afd_relation_attribute_name(const struct TopkAfdRelation *relation, size_t index);

/**
 * k = 20, LHS size up to 5, both pruning rules on.
 */
struct TopkAfdConfig topk_afd_config_default(void);

/**
 * Runs one engine. `config` may be NULL for the defaults. On success
 * `*out` receives a handle to free with [`topk_afd_result_free`].
 *
 * # Safety
 *
 * `relation` is a live handle, `config` is NULL or readable, `out` is
 * writable. `algorithm` must be one of the declared enumerators.
 */
enum TopkAfdStatus topk_afd_discover(const struct TopkAfdRelation *relation,
                                     const struct TopkAfdConfig *config,
                                     enum TopkAfdAlgorithm algorithm,
                                     struct TopkAfdResult **out);

/**
 * Number of ranked entries, or 0 for NULL.
 *
 * # Safety
 *
 * `result` is NULL or a live handle.
 */
size_t topk_afd_result_len(const struct TopkAfdResult *result);

/**
 * Copies entry `index` (0 is the best) into `*out`.
 *
 * # Safety
 *
 * `result` is a live handle and `out` is writable.
 */
enum TopkAfdStatus topk_afd_result_entry(const struct TopkAfdResult *result,
                                         size_t index,
                                         struct TopkAfdEntry *out);

/**
 * Copies the run counters into `*out`.
 *
 * # Safety
 *
 * `result` is a live handle and `out` is writable.
 */
enum TopkAfdStatus topk_afd_result_stats(const struct TopkAfdResult *result,
                                         struct TopkAfdStats *out);

/**
 * Releases a result. NULL is ignored.
 *
 * # Safety
 *
 * `result` came from [`topk_afd_discover`] and is freed at most once.
 */
void topk_afd_result_free(struct TopkAfdResult *result);

/**
 * Number of `X -> A` candidates with `1 <= |X| <= max_lhs` over
 * `attributes` attributes.
 *
 * # Safety
 *
 * `out` is writable.
 */
enum TopkAfdStatus topk_afd_theoretical_candidate_count(size_t attributes,
                                                        size_t max_lhs,
                                                        uint64_t *out);

/**
 * Message describing the last failure on this thread, or NULL. Valid until
 * the next call into this library from the same thread.
 */
const char *topk_afd_last_error(void);

/**
 * Library version as a static string.
 */
const char *topk_afd_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TOPK_AFD_H */
