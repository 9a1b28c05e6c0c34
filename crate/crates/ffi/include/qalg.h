#ifndef QALG_H
#define QALG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum QalgStatus {
  QALG_STATUS_OK = 0,
  QALG_STATUS_NULL_POINTER = 1,
  QALG_STATUS_INVALID_UTF8 = 2,
  QALG_STATUS_PARSE = 3,
  QALG_STATUS_REJECTED = 4,
  QALG_STATUS_FAILED = 5,
  QALG_STATUS_PANIC = 6,
} QalgStatus;

/**
 * A parsed presentation.
 */
typedef struct QalgAlgebra QalgAlgebra;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse presentation source text into a new handle.
 *
 * # Safety
 * `source` must be a nul-terminated string and `out` a valid pointer.
 */
enum QalgStatus qalg_algebra_parse(const char *source, struct QalgAlgebra **out);

/**
 * Release a handle. Null is ignored.
 *
 * # Safety
 * `a` must come from [`qalg_algebra_parse`] and not be used afterwards.
 */
void qalg_algebra_free(struct QalgAlgebra *a);

/**
 * Number of generators.
 *
 * # Safety
 * `a` must be a live handle or null.
 */
size_t qalg_algebra_generator_count(const struct QalgAlgebra *a);

/**
 * Normal form of an expression, as text.
 *
 * # Safety
 * `a` must be a live handle, `expr` a nul-terminated string, `out` valid.
 */
enum QalgStatus qalg_normal_form(const struct QalgAlgebra *a, const char *expr, char **out);

/**
 * Structural checks as JSON, `{passed, checks: [{check, status, detail}]}`.
 * Failing checks do not make the call fail.
 *
 * # Safety
 * `a` must be a live handle and `out` valid.
 */
enum QalgStatus qalg_validate_json(const struct QalgAlgebra *a, char **out);

/**
 * Inner witness search over the box `[-bound, bound]`, as JSON.
 *
 * # Safety
 * `a` must be a live handle and `out` valid.
 */
enum QalgStatus qalg_der_solve_json(const struct QalgAlgebra *a, int64_t bound, char **out);

/**
 * Release a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void qalg_string_free(char *s);

/**
 * Message of the last failed call on this thread, or null. Valid until
 * the next call into the library from the same thread.
 */
const char *qalg_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QALG_H */
