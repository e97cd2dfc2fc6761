/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef BNALG_H
#define BNALG_H

#include <stdbool.h>
#include <stddef.h>

/**
 * Result code of every fallible call.
 */
typedef enum {
  BN_OK = 0,
  /**
   * Malformed input: bad JSON, cyclic graph, unknown vertex, bad levels.
   */
  BN_INVALID = 1,
  /**
   * A size guard was exceeded.
   */
  BN_GUARD = 2,
  /**
   * The operation does not apply to this network.
   */
  BN_PRECONDITION = 3,
  BN_NULL_POINTER = 4,
  BN_UTF8 = 5,
  BN_PANIC = 6,
} BnStatus;

/**
 * Coordinates of the polynomial ring.
 */
typedef enum {
  BN_STANDARD = 0,
  BN_PLUS = 1,
} BnBasis;

typedef enum {
  BN_DEG4 = 0,
  BN_DET_M = 1,
} BnWitness;

/**
 * Opaque handle to a validated network.
 */
typedef struct BnNetwork BnNetwork;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. Valid until the
 * next call into this library on the same thread.
 */
const char *bn_last_error(void);

/**
 * Library version as a static nul-terminated string.
 */
const char *bn_version(void);

/**
 * Parses and validates a graph description.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be valid for writes.
 */
BnStatus bn_network_from_json(const char *json, BnNetwork **out);

/**
 * Releases a handle. Null is ignored.
 *
 * # Safety
 * `net` must be null or a handle not yet freed.
 */
void bn_network_free(BnNetwork *net);

/**
 * Sets the enumeration and monomial-count guards.
 *
 * # Safety
 * `net` must be a live handle.
 */
BnStatus bn_network_set_limits(BnNetwork *net, size_t max_n, size_t max_monomials);

/**
 * # Safety
 * `net` must be a live handle; `out` valid for writes.
 */
BnStatus bn_network_vertex_count(const BnNetwork *net, size_t *out);

/**
 * Whether the subgraph on the non-sinks is perfect.
 *
 * # Safety
 * `net` must be a live handle; `out` valid for writes.
 */
BnStatus bn_toric_criterion(const BnNetwork *net, bool *out);

/**
 * Whether the whole graph is perfect.
 *
 * # Safety
 * `net` must be a live handle; `out` valid for writes.
 */
BnStatus bn_is_perfect(const BnNetwork *net, bool *out);

/**
 * Dimension of the degree-`degree` component of the kernel.
 *
 * # Safety
 * `net` must be a live handle; `out` valid for writes.
 */
BnStatus bn_kernel_dim(const BnNetwork *net, size_t degree, BnBasis basis, size_t *out);

/**
 * Compares the degree-`degree` kernel with the CI ideal component.
 *
 * # Safety
 * `net` must be a live handle; out pointers valid for writes.
 */
BnStatus bn_gss_check(const BnNetwork *net,
                      size_t degree,
                      BnBasis basis,
                      size_t *kernel_dim,
                      size_t *ci_dim,
                      bool *equal);

/**
 * Full analysis report for degrees `2..=max_degree`, as JSON.
 *
 * # Safety
 * `net` must be a live handle; `out` valid for writes.
 */
BnStatus bn_analyze_json(const BnNetwork *net, size_t max_degree, char **out);

/**
 * Plus-basis parametrization as JSON.
 *
 * # Safety
 * `net` must be a live handle; `out` valid for writes.
 */
BnStatus bn_param_json(const BnNetwork *net, char **out);

/**
 * Minors of the reduced global Markov statements as JSON.
 *
 * # Safety
 * `net` must be a live handle; `out` valid for writes.
 */
BnStatus bn_ci_gens_json(const BnNetwork *net, char **out);

/**
 * Basis of a graded kernel component as JSON.
 *
 * # Safety
 * `net` must be a live handle; `out` valid for writes.
 */
BnStatus bn_kernel_json(const BnNetwork *net, size_t degree, BnBasis basis, char **out);

/**
 * Witness polynomial and its certificate as JSON.
 *
 * # Safety
 * `net` must be a live handle; `out` valid for writes.
 */
BnStatus bn_witness_json(const BnNetwork *net, BnWitness kind, char **out);

/**
 * Quadratic-form ranks and pencil certificates as JSON.
 *
 * # Safety
 * `net` must be a live handle; `out` valid for writes.
 */
BnStatus bn_rank_json(const BnNetwork *net, char **out);

/**
 * Staged tree as JSON.
 *
 * # Safety
 * `net` must be a live handle; `out` valid for writes.
 */
BnStatus bn_tree_json(const BnNetwork *net, char **out);

/**
 * Staged tree in Graphviz DOT.
 *
 * # Safety
 * `net` must be a live handle; `out` valid for writes.
 */
BnStatus bn_tree_dot(const BnNetwork *net, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a string from this library not yet freed.
 */
void bn_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BNALG_H */
