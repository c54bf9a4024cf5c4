#ifndef GCGT_H
#define GCGT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum GcgtStatus {
  GCGT_STATUS_OK = 0,
  GCGT_STATUS_NULL_POINTER = 1,
  GCGT_STATUS_INVALID_PARAMETER = 2,
  GCGT_STATUS_PARSE = 3,
  GCGT_STATUS_BUDGET = 4,
  GCGT_STATUS_DOMAIN = 5,
  GCGT_STATUS_IO = 6,
  GCGT_STATUS_BUFFER_TOO_SMALL = 7,
  GCGT_STATUS_PANIC = 8,
} GcgtStatus;

/**
 * Opaque graph handle.
 */
typedef struct GcgtGraph GcgtGraph;

/**
 * Opaque test-collection handle.
 */
typedef struct GcgtTests GcgtTests;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the last error message of this thread, NUL-terminated, into
 * `buf`. `len_out` receives the message length without the terminator.
 *
 * # Safety
 * `buf` must point to `cap` writable bytes (or be null with `cap = 0`);
 * `len_out` must be valid for writes.
 */
enum GcgtStatus gcgt_last_error_message(char *buf, size_t cap, size_t *len_out);

/**
 * Builds a graph from a family spec such as `"fat_tree:8"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string; `graph_out` valid for writes.
 */
enum GcgtStatus gcgt_graph_generate(const char *spec, struct GcgtGraph **graph_out);

/**
 * Parses the `n m` / `u v` graph text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `graph_out` valid for writes.
 */
enum GcgtStatus gcgt_graph_from_text(const char *text, struct GcgtGraph **graph_out);

/**
 * # Safety
 * `graph` must come from this library and not be used afterwards.
 */
void gcgt_graph_free(struct GcgtGraph *graph);

/**
 * Vertex count, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t gcgt_graph_n(const struct GcgtGraph *graph);

/**
 * Edge count, or 0 for a null handle.
 *
 * # Safety
 * `graph` must be null or a live handle.
 */
size_t gcgt_graph_m(const struct GcgtGraph *graph);

/**
 * Endpoints of edge `id`.
 *
 * # Safety
 * `graph` must be a live handle; `u_out`, `v_out` valid for writes.
 */
enum GcgtStatus gcgt_graph_edge(const struct GcgtGraph *graph,
                                size_t id,
                                size_t *u_out,
                                size_t *v_out);

/**
 * Global minimum edge cut (0 for a disconnected graph).
 *
 * # Safety
 * `graph` must be a live handle; `cut_out` valid for writes.
 */
enum GcgtStatus gcgt_graph_min_cut(const struct GcgtGraph *graph, size_t *cut_out);

/**
 * Connected-subgraph tests: `tau` rounds of `G(p)` with `p = 1/(delta d)`,
 * keeping components of at least `beta n` vertices (only the largest one
 * when `largest_only` is set).
 *
 * # Safety
 * `graph` must be a live handle; `tests_out` valid for writes.
 */
enum GcgtStatus gcgt_tests_subgraph(const struct GcgtGraph *graph,
                                    size_t d,
                                    double delta,
                                    double beta,
                                    size_t tau,
                                    bool largest_only,
                                    uint64_t seed,
                                    struct GcgtTests **tests_out);

/**
 * `tau` unconstrained tests over `m` items, each item included with
 * probability `1/(d+1)`.
 *
 * # Safety
 * `tests_out` must be valid for writes.
 */
enum GcgtStatus gcgt_tests_random(size_t m,
                                  size_t d,
                                  size_t tau,
                                  uint64_t seed,
                                  struct GcgtTests **tests_out);

/**
 * `tau` random-walk tests with length multiplier `l`; the mixing time is
 * estimated from `seed`.
 *
 * # Safety
 * `graph` must be a live handle; `tests_out` valid for writes.
 */
enum GcgtStatus gcgt_tests_walk(const struct GcgtGraph *graph,
                                size_t d,
                                double l,
                                size_t tau,
                                uint64_t seed,
                                struct GcgtTests **tests_out);

/**
 * Parses the `m t` test-collection text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `tests_out` valid for writes.
 */
enum GcgtStatus gcgt_tests_from_text(const char *text, struct GcgtTests **tests_out);

/**
 * Serializes a collection to its text format, NUL-terminated. `len_out`
 * receives the byte length including the terminator.
 *
 * # Safety
 * `tests` must be a live handle; `buf` must point to `cap` writable
 * bytes (or be null with `cap = 0`); `len_out` valid for writes.
 */
enum GcgtStatus gcgt_tests_to_text(const struct GcgtTests *tests,
                                   char *buf,
                                   size_t cap,
                                   size_t *len_out);

/**
 * Number of tests, or 0 for a null handle.
 *
 * # Safety
 * `tests` must be null or a live handle.
 */
size_t gcgt_tests_len(const struct GcgtTests *tests);

/**
 * Universe size, or 0 for a null handle.
 *
 * # Safety
 * `tests` must be null or a live handle.
 */
size_t gcgt_tests_m(const struct GcgtTests *tests);

/**
 * Ascending edge ids of test `index`.
 *
 * # Safety
 * `tests` must be a live handle; `buf` must point to `cap` writable
 * elements (or be null with `cap = 0`); `len_out` valid for writes.
 */
enum GcgtStatus gcgt_tests_get(const struct GcgtTests *tests,
                               size_t index,
                               size_t *buf,
                               size_t cap,
                               size_t *len_out);

/**
 * # Safety
 * `tests` must come from this library and not be used afterwards.
 */
void gcgt_tests_free(struct GcgtTests *tests);

/**
 * Exact `d`-disjunctness check. On a violation `*disjunct_out` is false,
 * `*edge_out` holds the separated edge and the blocking set goes to
 * `blocking`/`blocking_len_out` (capacity `d` always suffices).
 *
 * # Safety
 * `tests` must be a live handle; `blocking` must point to `cap` writable
 * elements (or be null with `cap = 0`); other outputs valid for writes.
 */
enum GcgtStatus gcgt_check_disjunct(const struct GcgtTests *tests,
                                    size_t d,
                                    bool *disjunct_out,
                                    size_t *edge_out,
                                    size_t *blocking,
                                    size_t cap,
                                    size_t *blocking_len_out);

/**
 * Outcome of every test for the failed edges `defective[..count]`:
 * `outcomes[i]` is 1 iff test `i` contains a failed edge.
 *
 * # Safety
 * `tests` must be a live handle; `defective` must point to `count`
 * readable elements; `outcomes` to `cap` writable bytes; `len_out` valid.
 */
enum GcgtStatus gcgt_run_tests(const struct GcgtTests *tests,
                               const size_t *defective,
                               size_t count,
                               uint8_t *outcomes,
                               size_t cap,
                               size_t *len_out);

/**
 * Naive decoder: the edges all of whose tests are positive. `outcomes`
 * holds one byte per test, nonzero meaning positive.
 *
 * # Safety
 * `tests` must be a live handle; `outcomes` must point to `count`
 * readable bytes; `edges` to `cap` writable elements; `len_out` valid.
 */
enum GcgtStatus gcgt_decode(const struct GcgtTests *tests,
                            const uint8_t *outcomes,
                            size_t count,
                            size_t *edges,
                            size_t cap,
                            size_t *len_out);

/**
 * Probability that a ±1 walk stepping up with probability `gamma`
 * reaches `+a` before `-b`.
 *
 * # Safety
 * `prob_out` must be valid for writes.
 */
enum GcgtStatus gcgt_gamblers_ruin(double gamma, uint32_t a, uint32_t b, double *prob_out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GCGT_H */
