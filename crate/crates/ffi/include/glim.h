#ifndef GLIM_H
#define GLIM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GlimStatus {
  GLIM_STATUS_OK = 0,
  GLIM_STATUS_NULL_POINTER = 1,
  GLIM_STATUS_INVALID_ARGUMENT = 2,
  GLIM_STATUS_FORMAT = 3,
  /**
   * A computation finished but one of its checks failed.
   */
  GLIM_STATUS_CHECK_FAILED = 4,
  GLIM_STATUS_INTERNAL = 5,
} GlimStatus;

/**
 * Opaque graph handle; may carry labels, fibers, marks and a cycle.
 */
typedef struct GlimGraph GlimGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread; empty after a success.
 * Valid until the next call on the same thread.
 */
const char *glim_last_error(void);

/**
 * # Safety
 * `s` must come from this library, or be null.
 */
void glim_string_free(char *s);

/**
 * # Safety
 * `g` must come from this library, or be null.
 */
void glim_graph_free(struct GlimGraph *g);

/**
 * Parse a `glim-graph-v1` document.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum GlimStatus glim_graph_from_json(const char *json, struct GlimGraph **out);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GlimStatus glim_graph_to_json(const struct GlimGraph *g, char **out);

/**
 * # Safety
 * `g` must be a live handle; `vertices` and `edges` must be writable.
 */
enum GlimStatus glim_graph_counts(const struct GlimGraph *g, size_t *vertices, size_t *edges);

/**
 * # Safety
 * `out` must be writable.
 */
enum GlimStatus glim_random_regular(size_t n, size_t d, uint64_t seed, struct GlimGraph **out);

/**
 * Product with `C4`; the result carries fiber indices.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GlimStatus glim_product_c4(const struct GlimGraph *g, struct GlimGraph **out);

/**
 * Girth, or 0 for a forest.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GlimStatus glim_girth(const struct GlimGraph *g, size_t *out);

/**
 * Independence number; `exact` tells whether `size` is proven optimal.
 *
 * # Safety
 * `g` must be a live handle; `size` and `exact` must be writable.
 */
enum GlimStatus glim_mis(const struct GlimGraph *g, size_t exact_cap, size_t *size, bool *exact);

/**
 * Radius-`radius` ball of the limit graph, rooted at vertex 0.
 *
 * # Safety
 * `out` must be writable.
 */
enum GlimStatus glim_limit_ball(size_t radius, bool labelled, struct GlimGraph **out);

/**
 * Census of ball codes as `code,count,frequency` CSV.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GlimStatus glim_ball_census_csv(const struct GlimGraph *g, size_t radius, char **out);

/**
 * Canonical code of the ball of `radius` around `root`.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum GlimStatus glim_canonical_code(const struct GlimGraph *g,
                                    size_t root,
                                    size_t radius,
                                    char **out);

/**
 * Report JSON is written even when a check fails (status `CheckFailed`).
 * `pass` may be null.
 *
 * # Safety
 * `out_json` must be writable.
 */
enum GlimStatus glim_theorem1_report(size_t n,
                                     size_t radius,
                                     size_t trials,
                                     size_t budget,
                                     uint64_t seed,
                                     char **out_json,
                                     bool *pass);

/**
 * As [`glim_theorem1_report`], for the `K_n` family.
 *
 * # Safety
 * `out_json` must be writable.
 */
enum GlimStatus glim_theorem2_report(size_t n, uint64_t seed, char **out_json, bool *pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GLIM_H */
