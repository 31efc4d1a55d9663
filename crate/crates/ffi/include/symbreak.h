#ifndef SYMBREAK_H
#define SYMBREAK_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes shared by every function.
typedef enum SbStatus {
  SB_OK = 0,
  SB_NULL_POINTER = 1,
  // Malformed graph, coloring, vertex set or family spec.
  SB_INVALID_INPUT = 2,
  // The search would exceed its candidate budget.
  SB_BUDGET_EXCEEDED = 3,
  // No distinguishing coloring with the requested number of colors.
  SB_NOT_DISTINGUISHABLE = 4,
  SB_INTERNAL = 5,
  // A Rust panic was caught at the boundary.
  SB_PANIC = 6,
} SbStatus;

// Opaque graph handle.
typedef struct SbGraph SbGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread; empty after success.
// The pointer stays valid until the next call on the same thread.
const char *sb_last_error(void);

// Library version as a static NUL-terminated string.
const char *sb_version(void);

// Default search budget used by the command-line tool.
uint64_t sb_default_budget(void);

// Parses a graph6 string.
enum SbStatus sb_graph_from_graph6(const char *text, struct SbGraph **out);

// Builds a family member from a spec such as `"book:4,3"`.
enum SbStatus sb_graph_from_family(const char *spec, struct SbGraph **out);

// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
// `endpoints` (`2 * edge_count` entries).
enum SbStatus sb_graph_from_edges(size_t n,
                                  const size_t *endpoints,
                                  size_t edge_count,
                                  struct SbGraph **out);

// Releases a graph. Null is ignored.
void sb_graph_free(struct SbGraph *g);

// Releases a string returned by this library. Null is ignored.
void sb_string_free(char *s);

// Number of vertices, or 0 for a null handle.
size_t sb_graph_vertex_count(const struct SbGraph *g);

// Number of edges, or 0 for a null handle.
size_t sb_graph_edge_count(const struct SbGraph *g);

// graph6 encoding of the graph.
enum SbStatus sb_graph_to_graph6(const struct SbGraph *g, char **out);

// Order of the automorphism group as a decimal string.
enum SbStatus sb_automorphism_group_order(const struct SbGraph *g, char **out);

// Whether only the identity preserves the color classes of `colors`
// (one entry per vertex).
enum SbStatus sb_is_distinguishing(const struct SbGraph *g,
                                   const size_t *colors,
                                   size_t len,
                                   bool *out);

// Whether only the identity fixes every vertex of `set`.
enum SbStatus sb_is_determining_set(const struct SbGraph *g,
                                    const size_t *set,
                                    size_t len,
                                    bool *out);

// `dist(G)`.
enum SbStatus sb_distinguishing_number(const struct SbGraph *g, uint64_t budget, size_t *out);

// `det(G)`.
enum SbStatus sb_determining_number(const struct SbGraph *g, uint64_t budget, size_t *out);

// `ρ^d(G)`, the fewest vertices outside one class of a
// `d`-distinguishing coloring.
enum SbStatus sb_paint_cost(const struct SbGraph *g, size_t d, uint64_t budget, size_t *out);

// `ρ_d(G)`, the smallest class over `d`-distinguishing colorings using
// all `d` colors.
enum SbStatus sb_cost_number(const struct SbGraph *g, size_t d, uint64_t budget, size_t *out);

// `fdist(G)`.
enum SbStatus sb_frugal_distinguishing_number(const struct SbGraph *g,
                                              uint64_t budget,
                                              size_t *out);

// Full parameter report as JSON. A budget refusal still writes the
// partial report and returns `SB_BUDGET_EXCEEDED`.
enum SbStatus sb_analyze_json(const struct SbGraph *g, uint64_t budget, char **out);

// Closed-form values for the book graph `B(m,n)` as JSON.
enum SbStatus sb_book_params_json(uint32_t m, uint64_t n, char **out);

// Closed-form `ρ^d(B(m,n))`. Writes `lower` and `upper_exclusive`; the
// value is exact when `upper_exclusive == lower + 1`. Values above
// `UINT64_MAX` are rejected as invalid input.
enum SbStatus sb_book_paint_cost(uint32_t m,
                                 uint64_t n,
                                 uint64_t d,
                                 uint64_t *lower,
                                 uint64_t *upper_exclusive);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYMBREAK_H */
