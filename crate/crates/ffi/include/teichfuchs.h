/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef TEICHFUCHS_H
#define TEICHFUCHS_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every fallible call.
 */
typedef enum {
  TF_OK = 0,
  TF_NULL_POINTER = 1,
  TF_INVALID_ARGUMENT = 2,
  /**
   * No model or the prime is exceptional.
   */
  TF_UNSUPPORTED = 3,
  /**
   * A computation failed or a mathematical precondition does not hold.
   */
  TF_COMPUTATION_FAILED = 4,
  TF_BUFFER_TOO_SMALL = 5,
  TF_INTERNAL_ERROR = 6,
} tf_status;

/**
 * Family `y^2 = g(x, t)` for one discriminant and component.
 */
typedef struct tf_family tf_family;

/**
 * Second-order Picard-Fuchs operator.
 */
typedef struct tf_operator tf_operator;

/**
 * Power-series prefix of the holomorphic solution at `t = 0`.
 */
typedef struct tf_series tf_series;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the message of the last failed call on this thread.
 *
 * # Safety
 * Same buffer contract as the other string getters.
 */
tf_status tf_last_error(char *buf, size_t cap, size_t *needed);

/**
 * Number of splitting prototypes of discriminant `d`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
tf_status tf_prototype_count(int64_t d, size_t *out);

/**
 * Creates the family for `d` and spin component `eps` (ignored for
 * `d = 13`).
 *
 * # Safety
 * `out` must be valid for writes.
 */
tf_status tf_family_new(int64_t d, uint8_t eps, tf_family **out);

/**
 * # Safety
 * `fam` must come from [`tf_family_new`] and not be used afterwards.
 */
void tf_family_free(tf_family *fam);

/**
 * Family as JSON.
 *
 * # Safety
 * `fam` must be a live handle; buffer contract as in the crate docs.
 */
tf_status tf_family_json(const tf_family *fam, char *buf, size_t cap, size_t *needed);

/**
 * Derives the operator annihilating form `form` (1 or 2).
 *
 * # Safety
 * `fam` must be a live handle and `out` valid for writes.
 */
tf_status tf_operator_derive(const tf_family *fam, uint32_t form, tf_operator **out);

/**
 * # Safety
 * `op` must come from [`tf_operator_derive`] and not be used afterwards.
 */
void tf_operator_free(tf_operator *op);

/**
 * Operator as JSON `{A, B, singularities}`.
 *
 * # Safety
 * `op` must be a live handle; buffer contract as in the crate docs.
 */
tf_status tf_operator_json(const tf_operator *op, char *buf, size_t cap, size_t *needed);

/**
 * Holomorphic solution `u` with `u_0 = 1` up to `t^n`.
 *
 * # Safety
 * `op` must be a live handle and `out` valid for writes.
 */
tf_status tf_series_new(const tf_operator *op, size_t n, tf_series **out);

/**
 * # Safety
 * `s` must come from [`tf_series_new`] and not be used afterwards.
 */
void tf_series_free(tf_series *s);

/**
 * Number of coefficients held (`n + 1`).
 *
 * # Safety
 * `s` must be a live handle and `out` valid for writes.
 */
tf_status tf_series_len(const tf_series *s, size_t *out);

/**
 * Coefficient `u_j` as text, e.g. `81/16 - 15/16*sqrt(17)`.
 *
 * # Safety
 * `s` must be a live handle; buffer contract as in the crate docs.
 */
tf_status tf_series_coeff(const tf_series *s, size_t j, char *buf, size_t cap, size_t *needed);

/**
 * Whether the Cartier vanishing pattern at `p` matches the splitting of
 * `p` in the quadratic field.
 *
 * # Safety
 * `fam` must be a live handle and `out` valid for writes.
 */
tf_status tf_cartier_ok(const tf_family *fam, uint64_t p, bool *out);

/**
 * Nilpotence of the p-curvature of `op` and the Honda polynomial-solution
 * test, for a good prime `p` of `fam`.
 *
 * # Safety
 * Handles must be live; `nilpotent` and `honda` valid for writes.
 */
tf_status tf_nilpotence(const tf_family *fam,
                        const tf_operator *op,
                        uint64_t p,
                        bool *nilpotent,
                        bool *honda);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TEICHFUCHS_H */
