#ifndef FFIWA_H
#define FFIWA_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result code of every call.
 */
typedef enum FfiwaStatus {
  FFIWA_STATUS_OK = 0,
  FFIWA_STATUS_NULL_POINTER = 1,
  FFIWA_STATUS_INVALID_UTF8 = 2,
  FFIWA_STATUS_OUT_OF_RANGE = 3,
  FFIWA_STATUS_DOMAIN = 10,
  FFIWA_STATUS_PARSE = 11,
  FFIWA_STATUS_PRECONDITION = 12,
  FFIWA_STATUS_SIZE = 13,
  FFIWA_STATUS_INVALID_COUNTS = 14,
  FFIWA_STATUS_INFINITE_QUOTIENT = 15,
  FFIWA_STATUS_PRECISION = 16,
  FFIWA_STATUS_NON_CONFORMING = 17,
  FFIWA_STATUS_TWIST_MISMATCH = 18,
  FFIWA_STATUS_NOT_STABLE = 19,
  FFIWA_STATUS_CONSISTENCY = 20,
  FFIWA_STATUS_PANIC = 99,
} FfiwaStatus;

/**
 * Opaque handle to a computed class-number tower.
 */
typedef struct FfiwaClassTower FfiwaClassTower;

/**
 * Opaque handle to a Drinfeld module.
 */
typedef struct FfiwaDrinfeld FfiwaDrinfeld;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread, or null. The pointer is
 * valid until the next call into the library on this thread.
 */
const char *ffiwa_last_error_message(void);

/**
 * Release a string returned by the library. Null is ignored.
 *
 * # Safety
 * `s` must be null or a pointer obtained from this library and not yet freed.
 */
void ffiwa_string_free(char *s);

/**
 * Create the Drinfeld module over `F_q` with `φ_T` given as comma-separated
 * τ-coefficients (`"T,1"`) or skew text (`"T + t"`).
 *
 * # Safety
 * `phi_t` must be a valid string and `out` valid for writes.
 */
enum FfiwaStatus ffiwa_drinfeld_new(uint64_t q, const char *phi_t, struct FfiwaDrinfeld **out);

/**
 * Release a Drinfeld module. Null is ignored.
 *
 * # Safety
 * `handle` must be null or obtained from [`ffiwa_drinfeld_new`] and not yet freed.
 */
void ffiwa_drinfeld_free(struct FfiwaDrinfeld *handle);

/**
 * The rank `r` of the module.
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for writes.
 */
enum FfiwaStatus ffiwa_drinfeld_rank(const struct FfiwaDrinfeld *handle, uintptr_t *out);

/**
 * `φ_T` rendered as text; release with [`ffiwa_string_free`].
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for writes.
 */
enum FfiwaStatus ffiwa_drinfeld_phi_t(const struct FfiwaDrinfeld *handle, char **out);

/**
 * Dimension over `F_π` of the Frobenius-fixed part of the reduced
 * `π`-torsion at the good place `place`.
 *
 * # Safety
 * `handle` must be a live handle, `pi` and `place` valid strings, and `out`
 * valid for writes.
 */
enum FfiwaStatus ffiwa_drinfeld_h0_dim(const struct FfiwaDrinfeld *handle,
                                       const char *pi,
                                       const char *place,
                                       uintptr_t *out);

/**
 * Class numbers `h_n` for `n = 0..levels` of the constant `Z_p`-tower over
 * the curve with L-polynomial coefficients `coeffs[0..len]`.
 *
 * # Safety
 * `coeffs` must point to `len` values and `out` be valid for writes.
 */
enum FfiwaStatus ffiwa_class_tower_new(uint64_t q,
                                       const int64_t *coeffs,
                                       uintptr_t len,
                                       uint64_t p,
                                       uint32_t levels,
                                       struct FfiwaClassTower **out);

/**
 * Release a class tower. Null is ignored.
 *
 * # Safety
 * `handle` must be null or obtained from [`ffiwa_class_tower_new`] and not yet freed.
 */
void ffiwa_class_tower_free(struct FfiwaClassTower *handle);

/**
 * Number of levels in the tower.
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for writes.
 */
enum FfiwaStatus ffiwa_class_tower_len(const struct FfiwaClassTower *handle, uintptr_t *out);

/**
 * `e_n = v_p(h_n)`.
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for writes.
 */
enum FfiwaStatus ffiwa_class_tower_exponent(const struct FfiwaClassTower *handle,
                                            uintptr_t n,
                                            uint64_t *out);

/**
 * `h_n` as a decimal string; release with [`ffiwa_string_free`].
 *
 * # Safety
 * `handle` must be a live handle and `out` valid for writes.
 */
enum FfiwaStatus ffiwa_class_tower_class_number(const struct FfiwaClassTower *handle,
                                                uintptr_t n,
                                                char **out);

/**
 * Fit `e_n = λn + μp^n + ν`; `n0` is the first level from which the formula
 * holds.
 *
 * # Safety
 * `e` must point to `len` values; every out-pointer must be valid for writes.
 */
enum FfiwaStatus ffiwa_fit_invariants(const int64_t *e,
                                      uintptr_t len,
                                      uint64_t p,
                                      uint64_t *out_lambda,
                                      uint64_t *out_mu,
                                      int64_t *out_nu,
                                      uintptr_t *out_n0);

/**
 * Number and degree of the places above `place` in the level-`n` constant
 * extension of `F_q(T)`.
 *
 * # Safety
 * `place` must be a valid string; out-pointers must be valid for writes.
 */
enum FfiwaStatus ffiwa_splitting(uint64_t q,
                                 const char *place,
                                 uint32_t n,
                                 uint64_t *out_count,
                                 uint64_t *out_degree);

/**
 * `sel_dim + Σ dims[i]`, the λ-bound from supplied local terms.
 *
 * # Safety
 * `dims` must point to `len` values and `out` be valid for writes.
 */
enum FfiwaStatus ffiwa_lambda_bound(int64_t sel_dim,
                                    const int64_t *dims,
                                    uintptr_t len,
                                    uint64_t *out);

/**
 * Run the command line with `argv[0..argc]` (without the program name).
 * The report (or structured error) is written to `out_stdout` and the exit
 * code to `out_code`; the returned status only reflects argument passing.
 *
 * # Safety
 * `argv` must point to `argc` valid strings; out-pointers must be valid for writes.
 */
enum FfiwaStatus ffiwa_run(const char *const *argv,
                           uintptr_t argc,
                           char **out_stdout,
                           int32_t *out_code);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FFIWA_H */
