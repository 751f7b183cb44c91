#ifndef TRICOLOR_H
#define TRICOLOR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Random-instance profiles mirroring the library sampler.
 */
enum TcProfile
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  TcProfileSmall = 0,
  TcProfileDiam2 = 1,
  TcProfileArtic = 2,
};
#ifndef __cplusplus
typedef int32_t TcProfile;
#endif // __cplusplus

/**
 * Status codes returned by every fallible entry point.
 */
enum TcStatus
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  TcOk = 0,
  TcNullArgument = 1,
  TcInvalidArgument = 2,
  TcPrecondition = 3,
  TcParse = 4,
  TcTimeout = 5,
  TcInternal = 6,
};
#ifndef __cplusplus
typedef int32_t TcStatus;
#endif // __cplusplus

/**
 * Opaque graph handle.
 */
typedef struct TcGraph TcGraph;

/**
 * Opaque solve-report handle.
 */
typedef struct TcReport TcReport;

/**
 * Distance and degree summary; -1 marks an infinite diameter or radius.
 */
typedef struct TcMetrics {
  int64_t diameter;
  int64_t radius;
  uint32_t min_degree;
  uint32_t max_degree;
} TcMetrics;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread. The pointer
 * stays valid until the next failing call on the same thread.
 */
const char *tc_last_error_message(void);

/**
 * Builds a graph from a flat edge array `[u0, v0, u1, v1, ...]` of
 * 0-based vertex ids.
 *
 * # Safety
 * `edges` must point to `2 * edge_count` readable u32 values (or be null
 * when `edge_count` is 0); `out` must be a valid writable pointer.
 */
TcStatus tc_graph_build(uint32_t vertex_count,
                        const uint32_t *edges,
                        uintptr_t edge_count,
                        struct TcGraph **out);

/**
 * Parses a DIMACS graph (`p edge`) from a NUL-terminated string.
 *
 * # Safety
 * `text` must be a valid NUL-terminated string; `out` must be writable.
 */
TcStatus tc_graph_parse_dimacs(const char *text, struct TcGraph **out);

/**
 * Serializes a graph to canonical DIMACS; free the result with
 * `tc_string_free`.
 *
 * # Safety
 * `g` must be a live handle from this library or null.
 */
char *tc_graph_write_dimacs(const struct TcGraph *g);

/**
 * # Safety
 * `g` must be a handle produced by this library, not yet freed; null is
 * a no-op.
 */
void tc_graph_free(struct TcGraph *g);

/**
 * # Safety
 * `g` must be a live handle or null (returns 0).
 */
uint32_t tc_graph_vertex_count(const struct TcGraph *g);

/**
 * # Safety
 * `g` must be a live handle or null (returns 0).
 */
uint64_t tc_graph_edge_count(const struct TcGraph *g);

/**
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
TcStatus tc_graph_metrics(const struct TcGraph *g, struct TcMetrics *out);

/**
 * 1 when triangle-free, 0 when not, -1 on a null handle.
 *
 * # Safety
 * `g` must be a live handle or null.
 */
int32_t tc_graph_is_triangle_free(const struct TcGraph *g);

/**
 * 1 when neither reduction rule applies and no K4 exists, 0 otherwise,
 * -1 on a null handle.
 *
 * # Safety
 * `g` must be a live handle or null.
 */
int32_t tc_graph_is_irreducible(const struct TcGraph *g);

/**
 * Number of connected components; 0 on a null handle.
 *
 * # Safety
 * `g` must be a live handle or null.
 */
uint64_t tc_graph_component_count(const struct TcGraph *g);

/**
 * Lowest vertex whose closed neighborhood disconnects the graph, -1 when
 * none exists, -2 on a null handle.
 *
 * # Safety
 * `g` must be a live handle or null.
 */
int64_t tc_graph_articulation_vertex(const struct TcGraph *g);

/**
 * Runs the reductions to a fixpoint. On a K4 the graph is not
 * 3-colorable: `*k4_found` is set and `*out` is null. Otherwise `*out`
 * receives the irreducible graph.
 *
 * # Safety
 * `g` must be a live handle; `out` and `k4_found` must be writable.
 */
TcStatus tc_reduce(const struct TcGraph *g, struct TcGraph **out, bool *k4_found);

/**
 * Decides 3-colorability with the automatic strategy dispatch.
 * `timeout_ms` = 0 disables the deadline.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
TcStatus tc_solve_auto(const struct TcGraph *g,
                       bool deterministic,
                       uint32_t parallel,
                       uint64_t timeout_ms,
                       struct TcReport **out);

/**
 * # Safety
 * `r` must be a handle produced by this library, not yet freed; null is
 * a no-op.
 */
void tc_report_free(struct TcReport *r);

/**
 * 1 when colorable, 0 when not, -1 on a null handle.
 *
 * # Safety
 * `r` must be a live handle or null.
 */
int32_t tc_report_is_colorable(const struct TcReport *r);

/**
 * Strategy name as a static string ("trivial", "reduce", "diam2",
 * "artic", "diam3", "seed", "mixed").
 *
 * # Safety
 * `r` must be a live handle or null.
 */
const char *tc_report_strategy(const struct TcReport *r);

/**
 * # Safety
 * `r` must be a live handle or null (returns 0).
 */
uint64_t tc_report_seed_size(const struct TcReport *r);

/**
 * # Safety
 * `r` must be a live handle or null (returns 0).
 */
uint64_t tc_report_enumeration_count(const struct TcReport *r);

/**
 * # Safety
 * `r` must be a live handle or null (returns 0).
 */
uint64_t tc_report_wall_ms(const struct TcReport *r);

/**
 * Copies the witness coloring (one color 1..=3 per vertex) into `buffer`.
 * Fails when the report is not colorable or the buffer is too small.
 *
 * # Safety
 * `r` must be a live handle; `buffer` must point to `len` writable bytes.
 */
TcStatus tc_report_coloring(const struct TcReport *r, uint8_t *buffer, uintptr_t len);

/**
 * 1 when `colors` (one entry per vertex, values 1..=3) is a proper total
 * coloring, 0 when not, -1 on bad arguments.
 *
 * # Safety
 * `g` must be a live handle; `colors` must point to `len` readable bytes.
 */
int32_t tc_verify_coloring(const struct TcGraph *g, const uint8_t *colors, uintptr_t len);

/**
 * Extremal diameter-2 family instance (k >= 3).
 *
 * # Safety
 * `out` must be writable.
 */
TcStatus tc_gen_gn(uint32_t k, struct TcGraph **out);

/**
 * Reduction-skeleton instance on `n` variables and `m` clauses.
 *
 * # Safety
 * `out` must be writable.
 */
TcStatus tc_gen_gnm(uint32_t n, uint32_t m, struct TcGraph **out);

/**
 * Reduction graph of a 3-CNF formula given as DIMACS CNF text; the
 * formula is satisfiable iff the graph is 3-colorable.
 *
 * # Safety
 * `cnf_text` must be a valid NUL-terminated string; `out` writable.
 */
TcStatus tc_gen_hphi(const char *cnf_text, struct TcGraph **out);

/**
 * Seeded random instance; identical output for identical arguments.
 *
 * # Safety
 * `out` must be writable.
 */
TcStatus tc_sample_random(uint64_t seed, TcProfile profile, struct TcGraph **out);

/**
 * # Safety
 * `s` must be a string returned by this library, not yet freed; null is
 * a no-op.
 */
void tc_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TRICOLOR_H */
