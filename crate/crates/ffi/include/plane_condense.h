#ifndef PLANE_CONDENSE_H
#define PLANE_CONDENSE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// How a matching sum is computed.
typedef enum PcMethod {
  PC_METHOD_BRUTE = 0,
  PC_METHOD_FKT = 1,
  PC_METHOD_AUTO = 2,
} PcMethod;

// Result of every fallible call.
typedef enum PcStatus {
  PC_STATUS_OK = 0,
  PC_STATUS_NULL_POINTER = 1,
  PC_STATUS_INVALID_UTF8 = 2,
  PC_STATUS_PARSE = 3,
  PC_STATUS_UNSUPPORTED = 4,
  PC_STATUS_LIMIT = 5,
  PC_STATUS_INVALID_ARGUMENT = 6,
  PC_STATUS_IDENTITY_FAILED = 7,
} PcStatus;

// Opaque plane graph.
typedef struct PcGraph PcGraph;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failure on this thread, or NULL. The pointer stays
// valid until the next failing call on the same thread.
const char *pc_last_error(void);

// Parses a graph file.
//
// # Safety
// `json` must be a nul-terminated string and `out` a writable pointer.
enum PcStatus pc_graph_from_json(const char *json, struct PcGraph **out);

// Aztec diamond of order `n`; `start` 0 gives unit weights, 1 or 2 the
// variable weights whose first column has that index.
//
// # Safety
// `out` must be a writable pointer.
enum PcStatus pc_aztec_graph(uint32_t n, uint32_t start, struct PcGraph **out);

// Releases a graph. NULL is ignored.
//
// # Safety
// `g` must come from this library and not be freed twice.
void pc_graph_free(struct PcGraph *g);

// Number of vertices, or 0 for NULL.
//
// # Safety
// `g` must be NULL or a live graph.
uintptr_t pc_graph_vertex_count(const struct PcGraph *g);

// Number of edges, or 0 for NULL.
//
// # Safety
// `g` must be NULL or a live graph.
uintptr_t pc_graph_edge_count(const struct PcGraph *g);

// Graph file text of `g`.
//
// # Safety
// `g` must be a live graph and `out` a writable pointer.
enum PcStatus pc_graph_to_json(const struct PcGraph *g, char **out);

// Matching sum of `g` in canonical text form.
//
// # Safety
// `g` must be a live graph and `out` a writable pointer.
enum PcStatus pc_matching_sum(const struct PcGraph *g, enum PcMethod method, char **out);

// Runs `trials` random instances of the named identity and reports the
// pass and fail counts. Returns `IdentityFailed` when any report fails.
//
// # Safety
// `identity` must be a nul-terminated string; `passed` and `failed` must
// be writable.
enum PcStatus pc_verify(const char *identity,
                        uint32_t trials,
                        uint64_t seed,
                        uint64_t *passed,
                        uint64_t *failed);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not be freed twice.
void pc_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PLANE_CONDENSE_H */
