#ifndef COSTRATA_H
#define COSTRATA_H

/* Generated from the Rust sources; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
enum CostrataStatus
#ifdef __cplusplus
  : int32_t
#endif // __cplusplus
 {
  /**
   * The call succeeded and its out-parameters are valid.
   */
  CostrataStatus_Ok = 0,
  /**
   * An argument failed to parse or refers to nothing.
   */
  CostrataStatus_InvalidArgument = 1,
  /**
   * The arguments were well formed but the computation refused them.
   */
  CostrataStatus_ComputationFailed = 2,
  /**
   * A required pointer was null.
   */
  CostrataStatus_NullPointer = 3,
};
#ifndef __cplusplus
typedef int32_t CostrataStatus;
#endif // __cplusplus

/**
 * Opaque handle to one enumerated group.
 */
typedef struct CostrataGroup CostrataGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds the enumerated group of the given type (for example "A3",
 * "B2xA1") and stores a handle in `out`. Fails with
 * `ComputationFailed` when the group is too large to enumerate.
 *
 * # Safety
 * `type_name` must be a NUL-terminated string and `out` a valid
 * pointer; on success the caller owns the handle and must release it
 * with `costrata_group_free`.
 */
CostrataStatus costrata_group_new(const char *type_name, struct CostrataGroup **out);

/**
 * Releases a handle returned by `costrata_group_new`. Null is a no-op.
 *
 * # Safety
 * `group` must be null or a handle from `costrata_group_new` that has
 * not been freed yet.
 */
void costrata_group_free(struct CostrataGroup *group);

/**
 * Number of elements of the group.
 *
 * # Safety
 * `group` must be a live handle and `out` a valid pointer.
 */
CostrataStatus costrata_group_order(const struct CostrataGroup *group, uint64_t *out);

/**
 * Number of simple reflections.
 *
 * # Safety
 * `group` must be a live handle and `out` a valid pointer.
 */
CostrataStatus costrata_group_rank(const struct CostrataGroup *group, uint32_t *out);

/**
 * Length of the longest element.
 *
 * # Safety
 * `group` must be a live handle and `out` a valid pointer.
 */
CostrataStatus costrata_longest_length(const struct CostrataGroup *group, uint32_t *out);

/**
 * Weighted double-coset poset of the pair (G, S) as single-line JSON.
 * Subsets are spelled as in the CLI: "none", "all", or "s1,s3". The
 * returned string is released with `costrata_string_free`.
 *
 * # Safety
 * `group` must be a live handle, the subset strings NUL-terminated,
 * and `out` a valid pointer.
 */
CostrataStatus costrata_coset_poset_json(const struct CostrataGroup *group,
                                         const char *g_subset,
                                         const char *s_subset,
                                         char **out);

/**
 * Tests two JSON posets for isomorphism, weight-aware when `weighted`
 * is true, and stores the verdict in `out`.
 *
 * # Safety
 * The JSON strings must be NUL-terminated and `out` a valid pointer.
 */
CostrataStatus costrata_poset_isomorphic(const char *a_json,
                                         const char *b_json,
                                         bool weighted,
                                         bool *out);

/**
 * The a-function of the whole group as CSV ("word,length,a" header),
 * computed by the requested method: "hecke", "rsk", or "auto". The
 * returned string is released with `costrata_string_free`.
 *
 * # Safety
 * `group` must be a live handle, `method` NUL-terminated, and `out` a
 * valid pointer.
 */
CostrataStatus costrata_a_function_csv(const struct CostrataGroup *group,
                                       const char *method,
                                       char **out);

/**
 * Finitistic dimension of the regular block of the handle's group with
 * quotient subset G (spelled "none", "all", or "s1,s3").
 *
 * # Safety
 * `group` must be a live handle, `g_subset` NUL-terminated, and `out`
 * a valid pointer.
 */
CostrataStatus costrata_finitistic_dimension(const struct CostrataGroup *group,
                                             const char *g_subset,
                                             uint32_t *out);

/**
 * The message of the most recent failure on this thread, or an empty
 * string when nothing failed yet. The returned string is released with
 * `costrata_string_free`.
 */
char *costrata_last_error_message(void);

/**
 * Releases a string returned by this library. Null is a no-op.
 *
 * # Safety
 * `s` must be null or a string obtained from this library that has not
 * been freed yet.
 */
void costrata_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* COSTRATA_H */
