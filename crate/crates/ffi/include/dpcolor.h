/* Generated by cbindgen from crates/ffi/src/lib.rs. */

#ifndef DPCOLOR_H
#define DPCOLOR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum DpStatus {
  DP_STATUS_OK = 0,
  /**
   * Input outside what the engine handles: non-planar, diameter above
   * two, out-of-range parameters, size guards.
   */
  DP_STATUS_REFUSED = 1,
  /**
   * A runtime check inside the engine failed.
   */
  DP_STATUS_INTERNAL = 2,
  DP_STATUS_PARSE = 3,
  DP_STATUS_INVALID_ARGUMENT = 4,
  DP_STATUS_NULL_POINTER = 5,
  DP_STATUS_PANIC = 6,
} DpStatus;

typedef struct DpAssignment DpAssignment;

typedef struct DpColoring DpColoring;

typedef struct DpGraph DpGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into the library on the same thread.
 */
const char *dp_last_error(void);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void dp_string_free(char *s);

/**
 * Parses the edge-list format.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` writable.
 */
enum DpStatus dp_graph_parse(const char *text, struct DpGraph **out);

/**
 * A catalog graph. `params` is `n=2,m=1` style text or null for the
 * smallest valid parameters.
 *
 * # Safety
 * `name` must be a nul-terminated string, `params` one or null, and `out`
 * writable.
 */
enum DpStatus dp_catalog_graph(const char *name, const char *params, struct DpGraph **out);

/**
 * # Safety
 * `g` must come from this library or be null.
 */
void dp_graph_free(struct DpGraph *g);

/**
 * # Safety
 * `g` must be a live graph or null.
 */
size_t dp_graph_vertex_count(const struct DpGraph *g);

/**
 * # Safety
 * `g` must be a live graph or null.
 */
size_t dp_graph_edge_count(const struct DpGraph *g);

/**
 * Label of vertex `v` as a new string, or null when out of range.
 *
 * # Safety
 * `g` must be a live graph or null.
 */
char *dp_graph_label(const struct DpGraph *g, size_t v);

/**
 * # Safety
 * `g` must be a live graph and `out` writable.
 */
enum DpStatus dp_graph_is_mp2(const struct DpGraph *g, bool *out);

/**
 * DP-chromatic number by exhaustive search up to `kmax`. `*found` is false
 * when it exceeds `kmax`.
 *
 * # Safety
 * `g` must be a live graph, `out` and `found` writable.
 */
enum DpStatus dp_chromatic_number(const struct DpGraph *g, size_t kmax, size_t *out, bool *found);

/**
 * Reads an assignment file over `g`.
 *
 * # Safety
 * `g` must be a live graph, `json` a nul-terminated string, `out` writable.
 */
enum DpStatus dp_assignment_parse(const struct DpGraph *g,
                                  const char *json,
                                  struct DpAssignment **out);

/**
 * Lists `{1..k}` and uniform random perfect matchings, reproducible from
 * `seed`.
 *
 * # Safety
 * `g` must be a live graph and `out` writable.
 */
enum DpStatus dp_assignment_random(const struct DpGraph *g,
                                   size_t k,
                                   uint64_t seed,
                                   struct DpAssignment **out);

/**
 * The assignment file as a new JSON string, or null.
 *
 * # Safety
 * `m` must be a live assignment or null.
 */
char *dp_assignment_to_json(const struct DpAssignment *m);

/**
 * # Safety
 * `m` must come from this library or be null.
 */
void dp_assignment_free(struct DpAssignment *m);

/**
 * Colors a planar graph of diameter at most two from 4-lists.
 *
 * # Safety
 * `m` must be a live assignment and `out` writable.
 */
enum DpStatus dp_color_diam2(const struct DpAssignment *m, struct DpColoring **out);

/**
 * Colors a maximal planar graph of diameter at most two by the case
 * procedures.
 *
 * # Safety
 * `m` must be a live assignment and `out` writable.
 */
enum DpStatus dp_color_mp2(const struct DpAssignment *m, struct DpColoring **out);

/**
 * Exact search. `*sat` is false when no coloring exists; `out` receives
 * a coloring only when one does and `out` is non-null.
 *
 * # Safety
 * `m` must be a live assignment, `sat` writable, `out` writable or null.
 */
enum DpStatus dp_solve(const struct DpAssignment *m, bool *sat, struct DpColoring **out);

/**
 * # Safety
 * `c` must be a live coloring or null.
 */
size_t dp_coloring_len(const struct DpColoring *c);

/**
 * # Safety
 * `c` must be a live coloring and `out` writable.
 */
enum DpStatus dp_coloring_get(const struct DpColoring *c, size_t v, uint32_t *out);

/**
 * Whether `c` is a coloring of `m`'s cover.
 *
 * # Safety
 * `m` and `c` must be live or null.
 */
bool dp_coloring_verify(const struct DpAssignment *m, const struct DpColoring *c);

/**
 * The pipeline certificate as a new JSON string; null for colorings that
 * did not come from [`dp_color_diam2`].
 *
 * # Safety
 * `c` must be a live coloring or null.
 */
char *dp_coloring_certificate(const struct DpColoring *c);

/**
 * # Safety
 * `c` must come from this library or be null.
 */
void dp_coloring_free(struct DpColoring *c);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DPCOLOR_H */
