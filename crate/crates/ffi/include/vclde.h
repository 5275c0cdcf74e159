#ifndef VCLDE_H
#define VCLDE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum VcldeStatus {
  VCLDE_STATUS_OK = 0,
  VCLDE_STATUS_VERIFICATION_FAILED = 1,
  VCLDE_STATUS_INVALID_INPUT = 2,
  VCLDE_STATUS_LIMIT_EXCEEDED = 3,
  VCLDE_STATUS_MISSING_DATA = 4,
  VCLDE_STATUS_NULL_POINTER = -1,
  VCLDE_STATUS_PANIC = -2,
} VcldeStatus;

typedef enum VcldeArith {
  VCLDE_ARITH_RATIONAL = 0,
  VCLDE_ARITH_FLOAT64 = 1,
} VcldeArith;

typedef enum VcldeGreenMethod {
  VCLDE_GREEN_METHOD_RECURRENCE = 0,
  VCLDE_GREEN_METHOD_LEIBNIZIAN = 1,
  VCLDE_GREEN_METHOD_NESTED = 2,
  VCLDE_GREEN_METHOD_COMPANION = 3,
} VcldeGreenMethod;

typedef enum VcldeSolveMethod {
  VCLDE_SOLVE_METHOD_GREEN = 0,
  VCLDE_SOLVE_METHOD_KITTAPPA = 1,
  VCLDE_SOLVE_METHOD_LEIBNIZIAN = 2,
  VCLDE_SOLVE_METHOD_NESTED = 3,
  VCLDE_SOLVE_METHOD_RECURSION = 4,
} VcldeSolveMethod;

/**
 * Coefficient model handle.
 */
typedef struct VcldeModel VcldeModel;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a coefficient document (`{"p", "kind", ...}`) with the chosen
 * arithmetic and stores a new handle in `*out`.
 *
 * # Safety
 * `json` must be a NUL-terminated string and `out` a valid pointer.
 */
enum VcldeStatus vclde_model_from_json(const char *json,
                                       enum VcldeArith arith,
                                       struct VcldeModel **out);

/**
 * Constant binary64 coefficients `phi[0..p]`.
 *
 * # Safety
 * `phi` must point to `p` doubles and `out` be a valid pointer.
 */
enum VcldeStatus vclde_model_new_constant_f64(const double *phi, size_t p, struct VcldeModel **out);

/**
 * Binary64 coefficient table: `rows` is row-major with `n_rows` rows of
 * `p` values, row `r` holding `phi_1..phi_p` at `t = start + r`.
 *
 * # Safety
 * `rows` must point to `n_rows * p` doubles and `out` be a valid pointer.
 */
enum VcldeStatus vclde_model_new_table_f64(const double *rows,
                                           size_t p,
                                           size_t n_rows,
                                           int64_t start,
                                           struct VcldeModel **out);

/**
 * Releases a handle; NULL is ignored.
 *
 * # Safety
 * `model` must come from this library and not be used afterwards.
 */
void vclde_model_free(struct VcldeModel *model);

/**
 * Order `p` of the model, or 0 for NULL.
 *
 * # Safety
 * `model` must be NULL or a live handle.
 */
size_t vclde_model_order(const struct VcldeModel *model);

/**
 * `H(t,s)` as a double; rational models are evaluated exactly, then
 * rounded.
 *
 * # Safety
 * `model` must be a live handle and `out` a valid pointer.
 */
enum VcldeStatus vclde_green_f64(const struct VcldeModel *model,
                                 int64_t t,
                                 int64_t s,
                                 enum VcldeGreenMethod method,
                                 double *out);

/**
 * `H(t,s)` as text: `"n/d"` for rational models, shortest round-trip
 * decimal for binary64 ones.
 *
 * # Safety
 * `model` must be a live handle and `out` a valid pointer; free the
 * result with [`vclde_string_free`].
 */
enum VcldeStatus vclde_green_string(const struct VcldeModel *model,
                                    int64_t t,
                                    int64_t s,
                                    enum VcldeGreenMethod method,
                                    char **out);

/**
 * `y_t` for the problem document `{"s", "init", "forcing"}`, as a double.
 *
 * # Safety
 * `model` must be a live handle, `problem_json` a NUL-terminated string
 * and `out` a valid pointer.
 */
enum VcldeStatus vclde_solve_f64(const struct VcldeModel *model,
                                 const char *problem_json,
                                 int64_t t,
                                 enum VcldeSolveMethod method,
                                 double *out);

/**
 * `y_t` as text, exact for rational models.
 *
 * # Safety
 * As [`vclde_solve_f64`]; free the result with [`vclde_string_free`].
 */
enum VcldeStatus vclde_solve_string(const struct VcldeModel *model,
                                    const char *problem_json,
                                    int64_t t,
                                    enum VcldeSolveMethod method,
                                    char **out);

/**
 * Fundamental matrix and Casoratian as
 * `{"t", "s", "matrix": [[..]], "casoratian"}`.
 *
 * # Safety
 * `model` must be a live handle and `out` a valid pointer; free the
 * result with [`vclde_string_free`].
 */
enum VcldeStatus vclde_fundamental_json(const struct VcldeModel *model,
                                        int64_t t,
                                        int64_t s,
                                        char **out);

/**
 * Symbolic expansion of the order-`order` Hessenbergian as
 * `{"order", "terms": [..], "verdict": "TRUE"}`; `order` is 1 to 12.
 *
 * # Safety
 * `out` must be a valid pointer; free the result with
 * [`vclde_string_free`].
 */
enum VcldeStatus vclde_expand_json(size_t order, char **out);

/**
 * Runs the identity suite; `problem_json` may be NULL. The JSON report is
 * stored in `*out` either way, and the status is
 * `VCLDE_STATUS_VERIFICATION_FAILED` when a check fails.
 *
 * # Safety
 * `model` must be a live handle, `problem_json` NULL or NUL-terminated,
 * and `out` a valid pointer; free the result with [`vclde_string_free`].
 */
enum VcldeStatus vclde_verify_json(const struct VcldeModel *model,
                                   const char *problem_json,
                                   int64_t t,
                                   int64_t s,
                                   char **out);

/**
 * Message for the last failed call on this thread, or NULL. Valid until
 * the next library call on the same thread.
 */
const char *vclde_last_error_message(void);

/**
 * Releases a string returned by the library; NULL is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void vclde_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* VCLDE_H */
